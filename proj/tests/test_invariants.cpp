#include <doctest.h>

#include "fixfree/cyclotomic.hpp"
#include "fixfree/invariants.hpp"
#include "oracles.hpp"

using namespace fixfree;

namespace {

IntPoly P(std::initializer_list<long> c) { return IntPoly(c); }

// Elements a + b sqrt(D) of Q(sqrt D) for a fixed non-square D.
struct Quad {
    Rat a, b;
    static inline Rat D = 5;
    friend Quad operator+(const Quad& x, const Quad& y) { return {x.a + y.a, x.b + y.b}; }
    friend Quad operator-(const Quad& x, const Quad& y) { return {x.a - y.a, x.b - y.b}; }
    friend Quad operator*(const Quad& x, const Quad& y) { return {x.a * y.a + D * x.b * y.b, x.a * y.b + x.b * y.a}; }
    friend bool operator==(const Quad& x, const Quad& y) { return x.a == y.a && x.b == y.b; }
    bool is_zero() const { return a == 0 && b == 0; }
};

Quad eval(const IntPoly& p, const Quad& x) {
    Quad acc{0, 0};
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + Quad{Rat(p.coeff(i)), 0};
    return acc;
}

// Monic r = prod (t - c_i) * (t^2 + p t + q) with the quadratic irreducible, roots in Q(sqrt D).
struct SplitCase {
    IntPoly r;
    std::vector<Quad> roots;
};

SplitCase make_case(const std::vector<long>& integer_roots, std::optional<std::pair<long, long>> quadratic) {
    SplitCase c{P({1}), {}};
    for (long x : integer_roots) {
        c.r = c.r * P({-x, 1});
        c.roots.push_back({Rat(x), 0});
    }
    if (quadratic) {
        const auto [p, q] = *quadratic;
        // roots (-p +- sqrt(p^2 - 4q)) / 2 with Quad::D = p^2 - 4q
        c.r = c.r * P({q, p, 1});
        c.roots.push_back({Rat(-p, 2), Rat(1, 2)});
        c.roots.push_back({Rat(-p, 2), Rat(-1, 2)});
    }
    return c;
}

Rat rational_part(const Quad& x) {
    REQUIRE(x.b == 0);
    return x.a;
}

Int discr_oracle(const SplitCase& c) {
    Quad acc{1, 0};
    for (std::size_t i = 0; i < c.roots.size(); ++i)
        for (std::size_t j = 0; j < c.roots.size(); ++j)
            if (i != j) acc = acc * (c.roots[i] - c.roots[j]);
    return rational_part(acc).get_num();
}

Int prod_oracle(const SplitCase& c) {
    std::vector<Quad> w;
    for (const auto& x : c.roots)
        for (const auto& y : c.roots) {
            const Quad p = x * y;
            if (!eval(c.r, p).is_zero()) w.push_back(p);
        }
    Quad acc{1, 0};
    for (const auto& l : c.roots)
        for (const auto& mu : w) acc = acc * (l - mu);
    return rational_part(acc).get_num();
}

}  // namespace

TEST_SUITE("invariants") {
    TEST_CASE("reduced resultants") {
        CHECK(rres(P({-1, 1}), 2) == 1);
        CHECK(rres(P({-1, -2, 0, 1}), 3) == 2);
        CHECK(rres(P({1, 0, 1}), 2) == 0);
        CHECK_THROWS_AS(rres(IntPoly(), 2), AlgebraError);
    }

    TEST_CASE("periodic congruence number") {
        CHECK(tcn(P({-1, -2, 0, 1})) == 2);
        CHECK(tcn(cyclotomic(6)) == 1);
        CHECK(tcn(split_polynomial(6)) == 0);
        CHECK(tcn(P({7})) == 1);
        CHECK_THROWS_AS(tcn(IntPoly()), AlgebraError);
    }

    TEST_CASE("Discr* and Prod* reference values") {
        const IntPoly r = P({-1, -2, 0, 1});
        CHECK(discr_star(r) == -5);
        CHECK(prod_star(r) == -640);
        CHECK(discr_star(split_polynomial(4)) == 16);
        CHECK(prod_star(split_polynomial(4)) == 64);
        CHECK(discr_star(P({7})) == 7);
        CHECK(prod_star(P({7})) == 1);
        // Degree one: the root-difference product is empty and the pinned convention is a^3.
        CHECK(discr_star(P({5, 3})) == 27);
        CHECK(discr_star(P({5, -2})) == -8);
        CHECK(prod_star(P({-2, 1})) != 0);
        CHECK_THROWS_AS(discr_star(IntPoly()), AlgebraError);
        CHECK_THROWS_AS(prod_star(IntPoly()), AlgebraError);
    }

    TEST_CASE("Prod* cofactor has the expected roots") {
        // For t^3 - 2t - 1 the pairwise products that are not roots: 1, -phi (x2), -psi (x2), phi^2, psi^2.
        const IntPoly w = prod_star_cofactor(P({-1, -2, 0, 1}));
        REQUIRE(w.deg() == 7);
        const auto g = gcd_q(w, P({-1, -2, 0, 1}));
        CHECK(g.is_constant());
        CHECK(divide_exact(w, P({-1, 1})).has_value());
    }

    TEST_CASE("Discr* and Prod* agree with exact algebraic evaluation") {
        struct Row {
            std::vector<long> ints;
            std::optional<std::pair<long, long>> quad;
        };
        const std::vector<Row> rows{
            {{-1}, std::pair{-1L, -1L}},  // the golden cubic
            {{}, std::pair{-1L, -1L}},
            {{2}, std::pair{0L, -3L}},
            {{1, -3}, std::nullopt},
            {{2, -3, 5}, std::nullopt},
            {{-1, 4}, std::pair{1L, -1L}},
            {{3}, std::pair{-3L, 1L}},
            {{2, -1, 3, 4}, std::nullopt},
            {{}, std::pair{2L, -1L}},
        };
        for (const auto& row : rows) {
            if (row.quad) Quad::D = Rat(row.quad->first * row.quad->first - 4 * row.quad->second);
            const SplitCase c = make_case(row.ints, row.quad);
            CAPTURE(to_string(c.r));
            CHECK(discr_star(c.r) == discr_oracle(c));
            CHECK(prod_star(c.r) == prod_oracle(c));
        }
    }

    TEST_CASE("goodness") {
        CHECK(is_good(P({-1, -2, 0, 1})).good);
        const auto t_minus_1 = is_good(P({-1, 1}));
        CHECK_FALSE(t_minus_1.good);
        REQUIRE(t_minus_1.witness);
        CHECK(t_minus_1.witness->r1_zero);
        const auto sq = is_good(P({1, 0, 1}));
        CHECK_FALSE(sq.good);
        REQUIRE(sq.witness);
        CHECK(sq.witness->u == 1);
        CHECK(sq.witness->s == P({1, 1}));
        CHECK(is_good(P({7})).good);
        CHECK_FALSE(is_good(P({0, 1, 1})).good);
        CHECK(is_good(P({0, 1, 1})).witness->r0_zero);
    }

    TEST_CASE("goodness witnesses divide r(0) r(1) r(t)") {
        for (int k = 0; k < 40; ++k) {
            IntPoly r = oracle::random_poly(6, 4);
            if (k % 2) r = r * substitute_power(oracle::random_poly(2, 3), static_cast<std::size_t>(oracle::uniform(2, 3)));
            const auto v = is_good(r);
            CAPTURE(to_string(r));
            CHECK(v.good == (r.coeff(0) != 0 && r.eval(Int(1)) != 0 && tcn(r) != 0));
            if (!v.good && !v.witness->r0_zero && !v.witness->r1_zero) {
                CHECK_FALSE(v.witness->s.is_constant());
                const IntPoly target = IntPoly::constant(r.coeff(0) * r.eval(Int(1))) * r;
                CHECK(divide_exact(target, substitute_power(v.witness->s, v.witness->u + 1)).has_value());
            }
        }
    }

    TEST_CASE("arithmetic freeness of the roots") {
        CHECK(roots_arithmetically_free(P({-1, -2, 0, 1})).af);
        const auto psi6 = roots_arithmetically_free(split_polynomial(6));
        CHECK_FALSE(psi6.af);
        REQUIRE(psi6.witness);
        CHECK(psi6.witness->u == 2);
        CHECK(psi6.witness->s == split_polynomial(3));
        const auto sq = roots_arithmetically_free(P({-1, 0, 1}));
        CHECK_FALSE(sq.af);
        REQUIRE(sq.witness);
        CHECK(sq.witness->u == 1);
        // Any nonconstant divisor is a witness at u = 1; check the one returned divides r.
        CHECK(divide_exact(P({-1, 0, 1}), sq.witness->s).has_value());
        CHECK_THROWS_AS(roots_arithmetically_free(P({0, 1})), AlgebraError);
    }

    TEST_CASE("invariant report") {
        const auto rep = invariant_report(P({-1, -2, 0, 1}));
        CHECK(rep.r_at_1 == -2);
        CHECK(rep.tcn == 2);
        CHECK(rep.discr_star == -5);
        CHECK(rep.prod_star == -640);
        CHECK(rep.good);
        CHECK(rep.roots_af);
        CHECK(rep.rres_table.size() == 3);
        const auto phi6 = invariant_report(cyclotomic(6));
        CHECK(phi6.discr_star * phi6.prod_star == 12);
        const auto one = invariant_report(P({1}));
        CHECK(one.r_at_1 == 1);
        CHECK(one.tcn == 1);
        CHECK(one.discr_star == 1);
        CHECK(one.prod_star == 1);
        CHECK(one.good);
        CHECK_THROWS_AS(invariant_report(IntPoly()), AlgebraError);
    }

    TEST_CASE("tcn is the lcm of the table") {
        for (int k = 0; k < 25; ++k) {
            const IntPoly r = oracle::random_poly(5, 5);
            const auto rep = invariant_report(r);
            Int l = 1;
            for (const auto& [u, v] : rep.rres_table) {
                if (v == 0 || l == 0) l = 0;
                else mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_mpz_t());
            }
            CHECK(rep.tcn == l);
        }
    }
}

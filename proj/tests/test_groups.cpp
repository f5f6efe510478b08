#include <doctest.h>

#include <array>
#include <set>

#include "fixfree/groups.hpp"
#include "fixfree/invariants.hpp"
#include "oracles.hpp"

using namespace fixfree;

namespace {

IntPoly P(std::initializer_list<long> c) { return IntPoly(c); }
const IntPoly kGoldenCubic = P({-1, -2, 0, 1});

using Mat3 = std::array<std::array<long, 3>, 3>;

Mat3 unitriangular(long x, long y, long z) { return {{{1, x, z}, {0, 1, y}, {0, 0, 1}}}; }

Mat3 matmul(const Mat3& a, const Mat3& b, long m) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            long s = 0;
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            c[i][j] = ((s % m) + m) % m;
        }
    return c;
}

// Lower central series computed from scratch: Gamma_{i+1} = <[Gamma_i, G]>.
std::optional<std::size_t> class_by_closure(const FiniteGroup& g) {
    std::set<Element> cur;
    for (Element x = 0; x < g.order(); ++x) cur.insert(x);
    std::size_t c = 0;
    std::size_t prev = 0;
    while (cur.size() > 1) {
        std::set<Element> next{g.identity()};
        for (Element a : cur)
            for (Element b = 0; b < g.order(); ++b) next.insert(g.commutator(a, b));
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<Element> v(next.begin(), next.end());
            for (Element a : v)
                for (Element b : v)
                    if (next.insert(g.mul(a, b)).second) grew = true;
        }
        if (next.size() == cur.size() && next.size() == prev) return std::nullopt;
        prev = cur.size();
        if (next.size() == cur.size()) return std::nullopt;
        cur = std::move(next);
        ++c;
    }
    return std::max<std::size_t>(c, g.order() > 1 ? 1 : 0);
}

GroupPtr s3_from_table() {
    // Permutations of {0,1,2} in lexicographic order, composed as (p q)(i) = p(q(i)).
    std::vector<std::array<int, 3>> perms{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<std::vector<Element>> table(6, std::vector<Element>(6));
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
            table[a][b] = static_cast<Element>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return FiniteGroup::from_table(table, "S3");
}

}  // namespace

TEST_SUITE("groups") {
    TEST_CASE("Heisenberg law matches unitriangular matrices") {
        for (unsigned m : {3u, 4u, 5u}) {
            const GroupPtr g = FiniteGroup::heisenberg(m);
            REQUIRE(g->order() == m * m * m);
            for (Element a = 0; a < g->order(); ++a)
                for (Element b = 0; b < g->order(); b += 7) {
                    const auto va = g->decode(a), vb = g->decode(b), vc = g->decode(g->mul(a, b));
                    const Mat3 prod = matmul(unitriangular(va[0], va[1], va[2]), unitriangular(vb[0], vb[1], vb[2]), m);
                    CHECK(prod == unitriangular(vc[0], vc[1], vc[2]));
                }
        }
    }

    TEST_CASE("constructors") {
        CHECK(FiniteGroup::abelian({}) ->order() == 1);
        CHECK(FiniteGroup::abelian({2, 3})->is_abelian());
        CHECK(FiniteGroup::dihedral(4)->order() == 8);
        CHECK_FALSE(FiniteGroup::dihedral(4)->is_abelian());
        CHECK(FiniteGroup::symmetric(4)->order() == 24);
        CHECK(FiniteGroup::alternating(5)->order() == 60);
        CHECK(FiniteGroup::metacyclic(7, 3)->order() == 21);
        CHECK_THROWS_AS(FiniteGroup::twisted_heisenberg(4), AlgebraError);
        CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), AlgebraError);
        CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}), AlgebraError);
        const GroupPtr g = FiniteGroup::abelian({5});
        CHECK_THROWS_AS(GroupMap(g, {0, 1, 1, 1, 1}), AlgebraError);
    }

    TEST_CASE("powers") {
        const GroupPtr z5 = FiniteGroup::abelian({5});
        CHECK(power(*z5, 2, Int(3)) == 1);
        CHECK(power(*z5, 2, Int(-1)) == 3);
        const GroupPtr h3 = FiniteGroup::heisenberg(3);
        for (Element x = 0; x < h3->order(); ++x) {
            CHECK(power(*h3, x, Int(0)) == h3->identity());
            // Exponent of UT(3, Z/3) is 3, so cubes are trivial.
            CHECK(power(*h3, x, Int(3)) == h3->identity());
        }
    }

    TEST_CASE("monotone and decomposed evaluation") {
        const GroupPtr z5 = FiniteGroup::abelian({5});
        const GroupMap dbl = power_map(z5, 2);
        for (Element x = 0; x < 5; ++x) CHECK(evaluate_monotone(*z5, dbl, P({-2, 1}), x) == 0);
        const GroupPtr z7 = FiniteGroup::abelian({7});
        CHECK(evaluate_monotone(*z7, power_map(z7, 3), P({-2, 0, 1}), 1) == 0);

        const GroupPtr h5 = FiniteGroup::heisenberg(5);
        const GroupMap gamma = heisenberg_golden_automorphism(h5);
        CHECK_FALSE(is_identity(*h5, gamma, monotone(kGoldenCubic)));
        const IdentityDecomposition six{{P({0, 0, 0, 1}), P({0, 0, -1}), P({0, -1}), P({0, 0, 1}), P({0, -1}), P({-1})}};
        CHECK(six.sum() == kGoldenCubic);
        CHECK(is_identity(*h5, gamma, six));
        for (Element x = 0; x < h5->order(); x += 11)
            CHECK(evaluate_decomposed(*h5, gamma, IdentityDecomposition{{kGoldenCubic}}, x) ==
                  evaluate_monotone(*h5, gamma, kGoldenCubic, x));
    }

    TEST_CASE("golden automorphism is a homomorphism by the matrix law") {
        const GroupPtr h5 = FiniteGroup::heisenberg(5);
        const GroupMap gamma = heisenberg_golden_automorphism(h5);
        CHECK(gamma.is_automorphism());
        CHECK(gamma(h5->encode({1, 0, 0})) == h5->encode({0, 1, 0}));
        CHECK(gamma(h5->encode({0, 1, 0})) == h5->encode({1, 1, 0}));
    }

    TEST_CASE("fix-point-freeness") {
        const GroupPtr z5 = FiniteGroup::abelian({5});
        CHECK(is_fixpoint_free(*z5, power_map(z5, 2)));
        CHECK_FALSE(is_fixpoint_free(*z5, GroupMap::identity(z5)));
        const GroupPtr n5 = FiniteGroup::twisted_heisenberg(5);
        CHECK(is_fixpoint_free(*n5, twisted_golden_automorphism(n5)));
        const GroupPtr z4 = FiniteGroup::abelian({4});
        CHECK_THROWS_AS(is_fixpoint_free(*z4, power_map(z4, 2)), AlgebraError);
    }

    TEST_CASE("lower central series and class") {
        CHECK(nilpotency_class(*FiniteGroup::heisenberg(5)) == 2);
        CHECK(nilpotency_class(*FiniteGroup::heisenberg(3)) == 2);
        CHECK(nilpotency_class(*FiniteGroup::abelian({3, 3})) == 1);
        CHECK(nilpotency_class(*FiniteGroup::abelian({})) == 0);
        const GroupPtr s3 = s3_from_table();
        CHECK_FALSE(nilpotency_class(*s3).has_value());
        const auto lcs = lower_central_series(*s3);
        CHECK(lcs.at(1).size() == 3);
        CHECK(nilpotency_class(*FiniteGroup::dihedral(8)) == 3);
        for (const GroupPtr& g : {FiniteGroup::heisenberg(3), FiniteGroup::dihedral(8), FiniteGroup::dihedral(6),
                                  FiniteGroup::symmetric(4), FiniteGroup::abelian({2, 4})}) {
            CAPTURE(g->name());
            CHECK(nilpotency_class(*g) == class_by_closure(*g));
        }
    }

    TEST_CASE("torsion") {
        CHECK(has_n_torsion(*FiniteGroup::abelian({6}), Int(2)));
        CHECK_FALSE(has_n_torsion(*FiniteGroup::abelian({5}), Int(2)));
        CHECK(is_n_group(*FiniteGroup::heisenberg(5), Int(5)));
        CHECK(is_n_group(*FiniteGroup::heisenberg(5), Int(10)));
        CHECK_FALSE(is_n_group(*FiniteGroup::abelian({6}), Int(2)));
    }

    TEST_CASE("Cayley-Hamilton identity on the Heisenberg group") {
        const GroupPtr h5 = FiniteGroup::heisenberg(5);
        const GroupMap gamma = heisenberg_golden_automorphism(h5);
        const auto series = make_series(*h5, gamma, lower_central_series(*h5));
        const auto cpi = char_poly_identity(*h5, series, gamma);
        CHECK(cpi.chi == P({-1, -1, 1}) * P({1, 1}));
        REQUIRE(cpi.factor_polys.size() == 2);
        CHECK(cpi.factor_polys[0] == P({-1, -1, 1}));
        CHECK(cpi.factor_polys[1] == P({1, 1}));
        CHECK(cpi.deco.sum() == cpi.chi);
        CHECK(cpi.deco.parts.size() == 6);
        CHECK(is_identity(*h5, gamma, cpi.deco));
    }

    TEST_CASE("Cayley-Hamilton identity on elementary abelian groups") {
        const GroupPtr z = FiniteGroup::abelian({3, 3, 3});
        const auto id = GroupMap::identity(z);
        const auto s1 = make_series(*z, id, {whole_group(*z), Subgroup{0}});
        // (t - 1)^3 = t^3 - 1 mod 3 after the centred lift.
        CHECK(char_poly_identity(*z, s1, id).chi == P({-1, 0, 0, 1}));
        const GroupPtr z7 = FiniteGroup::abelian({7, 7});
        const GroupMap a = GroupMap::linear(z7, IntMatrix{{0, 1}, {1, 1}});
        const auto s2 = make_series(*z7, a, {whole_group(*z7), Subgroup{0}});
        const auto cpi = char_poly_identity(*z7, s2, a);
        CHECK(cpi.chi == P({-1, -1, 1}));
        CHECK(is_identity(*z7, a, cpi.deco));
        CHECK_THROWS_AS(make_series(*FiniteGroup::abelian({4}), GroupMap::identity(FiniteGroup::abelian({4})),
                                    {whole_group(*FiniteGroup::abelian({4})), Subgroup{0}}),
                        AlgebraError);
    }

    TEST_CASE("lift convention") {
        CHECK(lift_mod_p(RatPoly({4, 4, 1}), 5) == P({-1, -1, 1}));
        CHECK(lift_mod_p(RatPoly({3, 1}), 7) == P({3, 1}));
        CHECK(lift_mod_p(RatPoly({4, 1}), 7) == P({-3, 1}));
    }

    TEST_CASE("composition of identities") {
        const IdentityDecomposition single{{kGoldenCubic}};
        CHECK(compose_identities({single}).parts == single.parts);
        // Two linear factors on an abelian group collapse to the monotone product.
        const GroupPtr z11 = FiniteGroup::abelian({11});
        const GroupMap g3 = power_map(z11, 3);
        const auto comp = compose_identities({monotone(P({-3, 1})), monotone(P({-2, 1}))});
        CHECK(comp.sum() == P({-3, 1}) * P({-2, 1}));
        CHECK(is_identity(*z11, g3, comp));
        for (Element x = 0; x < 11; ++x)
            CHECK(evaluate_decomposed(*z11, g3, comp, x) == evaluate_monotone(*z11, g3, comp.sum(), x));
        // Heisenberg factors t^2 - t - 1 then t + 1 give the six-part word.
        const auto six = compose_identities({descending_monomials(P({-1, -1, 1})), descending_monomials(P({1, 1}))});
        CHECK(six.parts ==
              std::vector<IntPoly>{P({0, 0, 0, 1}), P({0, 0, -1}), P({0, -1}), P({0, 0, 1}), P({0, -1}), P({-1})});
    }

    TEST_CASE("inverse from an identity") {
        const GroupPtr h5 = FiniteGroup::heisenberg(5);
        const GroupMap gamma = heisenberg_golden_automorphism(h5);
        const auto series = make_series(*h5, gamma, lower_central_series(*h5));
        const auto cpi = char_poly_identity(*h5, series, gamma);
        const auto inv = inverse_from_identity(h5, gamma, cpi.chi, cpi.deco);
        CHECK(inv.inverse == gamma.inverse());
        // gamma^{-1}(v) = gamma^2(v) gamma(v^{-1}) v^{-1} gamma(v) v^{-1}
        const Word expected{{2, Int(1)}, {1, Int(-1)}, {0, Int(-1)}, {1, Int(1)}, {0, Int(-1)}};
        for (Element v = 0; v < h5->order(); ++v) CHECK(evaluate_word(*h5, gamma, expected, v) == inv.inverse(v));

        const GroupPtr z5 = FiniteGroup::abelian({5});
        CHECK_THROWS_AS(inverse_from_identity(z5, power_map(z5, 2), P({-2, 1}), monotone(P({-2, 1}))), AlgebraError);

        const GroupPtr z7 = FiniteGroup::abelian({7, 7});
        const GroupMap a = GroupMap::linear(z7, IntMatrix{{0, 1}, {1, 1}});
        const auto inv7 = inverse_from_identity(z7, a, P({-1, -1, 1}), monotone(P({-1, -1, 1})));
        CHECK(inv7.inverse == GroupMap::linear(z7, IntMatrix{{-1, 1}, {1, 0}}));
    }

    TEST_CASE("theorem A") {
        const GroupPtr n5 = FiniteGroup::twisted_heisenberg(5);
        const GroupMap beta = twisted_golden_automorphism(n5);
        const auto found = find_identity(n5, beta, kGoldenCubic);
        REQUIRE(found);
        const auto v = verify_theorem_A(*n5, beta, found->deco);
        CHECK(v.pass);
        CHECK(v.branch == "nilpotent");
        CHECK_FALSE(v.has_torsion);
        CHECK(v.nilpotency_class == 2);

        const GroupPtr z5 = FiniteGroup::abelian({5});
        const auto lin = verify_theorem_A(*z5, power_map(z5, 2), monotone(P({-2, 1})));
        CHECK(lin.pass);
        CHECK(lin.branch == "nilpotent");
        // Not an identity: the hypothesis check must refuse.
        CHECK_THROWS_AS(verify_theorem_A(*z5, power_map(z5, 3), monotone(P({-2, 1}))), AlgebraError);
        // Not fix-point-free.
        CHECK_THROWS_AS(verify_theorem_A(*z5, GroupMap::identity(z5), monotone(P({-1, 1}))), AlgebraError);
    }

    TEST_CASE("theorem B") {
        const GroupPtr n5 = FiniteGroup::twisted_heisenberg(5);
        const GroupMap beta = twisted_golden_automorphism(n5);
        const auto found = find_identity(n5, beta, kGoldenCubic);
        REQUIRE(found);
        const auto v = verify_theorem_B(*n5, beta, found->deco);
        CHECK(v.pass);
        REQUIRE(v.class_bound);
        CHECK(*v.class_bound == 6561);
        CHECK(v.nilpotency_class == 2);

        const GroupPtr z7 = FiniteGroup::abelian({7});
        const auto lin = verify_theorem_B(*z7, power_map(z7, 3), monotone(P({-3, 1})));
        CHECK(lin.pass);
        CHECK(*lin.class_bound == 1);
        CHECK_THROWS_AS(verify_theorem_B(*s3_from_table(), GroupMap::identity(s3_from_table()), monotone(P({-1, 1}))),
                        AlgebraError);
    }

    TEST_CASE("solvable decomposition") {
        const GroupPtr n5 = FiniteGroup::twisted_heisenberg(5);
        const GroupMap beta = twisted_golden_automorphism(n5);
        const auto found = find_identity(n5, beta, kGoldenCubic);
        REQUIRE(found);
        const auto v = verify_solvable_decomposition(*n5, beta, found->deco);
        CHECK(v.pass);
        CHECK(v.s_order == 1);
        CHECK(v.quotient_class == 2);
        CHECK_FALSE(v.quotient_has_n_torsion);
    }

    TEST_CASE("instance search") {
        SearchOptions ab;
        ab.families = {"abelian"};
        const auto r25 = search_instances(25, P({-2, 1}), ab);
        bool found = false;
        for (const auto& inst : r25.instances) {
            if (inst.group->order() != 25 || inst.group->radix().size() != 2) continue;
            bool doubling = true;
            for (Element x = 0; x < 25; ++x) doubling = doubling && inst.alpha(x) == power(*inst.group, x, Int(2));
            found = found || doubling;
        }
        CHECK(found);

        SearchOptions heis;
        heis.families = {"heisenberg"};
        const auto r125 = search_instances(125, kGoldenCubic, heis);
        bool twisted = false;
        for (const auto& inst : r125.instances) {
            twisted = twisted || inst.group->family() == GroupFamily::TwistedHeisenberg;
            CHECK(is_identity(*inst.group, inst.alpha, inst.deco));
        }
        CHECK(twisted);

        const auto r1 = search_instances(1, kGoldenCubic);
        REQUIRE(r1.log.size() == 1);
        CHECK(r1.log[0].order == 1);

        CHECK_THROWS_AS(search_instances(129, kGoldenCubic), AlgebraError);
    }

    TEST_CASE("relabeling preserves the class") {
        const GroupPtr d8 = FiniteGroup::dihedral(8);
        std::vector<Element> perm(d8->order());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin() + 1, perm.end(), oracle::rng());
        CHECK(nilpotency_class(*relabel(d8, perm)) == nilpotency_class(*d8));
    }
}

#include <doctest.h>

#include "fixfree/cyclotomic.hpp"
#include "oracles.hpp"

using namespace fixfree;

namespace {

IntPoly P(std::initializer_list<long> c) { return IntPoly(c); }

int mobius(std::size_t n) {
    int mu = 1;
    for (std::size_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}

// Phi_n from the Moebius product of (t^d - 1)^{mu(n/d)}: numerator and denominator, then one division.
IntPoly mobius_cyclotomic(std::size_t n) {
    IntPoly num{1}, den{1};
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d) continue;
        const IntPoly f = IntPoly::monomial(Int(1), d) - IntPoly{1};
        const int mu = mobius(n / d);
        if (mu == 1) num = num * f;
        if (mu == -1) den = den * f;
    }
    auto q = divide_exact(num, den);
    REQUIRE(q.has_value());
    return *q;
}

IntPoly t_power_minus_one(std::size_t n) { return IntPoly::monomial(Int(1), n) - IntPoly{1}; }

Int ipow(long b, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), e);
    return r;
}

}  // namespace

TEST_SUITE("cyclotomic") {
    TEST_CASE("small cyclotomic polynomials") {
        CHECK(cyclotomic(1) == P({-1, 1}));
        CHECK(cyclotomic(6) == P({1, -1, 1}));
        CHECK(cyclotomic(12) == P({1, 0, -1, 0, 1}));
    }

    TEST_CASE("agrees with the Moebius product") {
        for (std::size_t n = 1; n <= 60; ++n) {
            CAPTURE(n);
            CHECK(cyclotomic(n) == mobius_cyclotomic(n));
        }
    }

    TEST_CASE("divisor products give t^n - 1") {
        for (std::size_t n = 1; n <= 60; ++n) {
            IntPoly prod{1};
            for (std::size_t d = 1; d <= n; ++d)
                if (n % d == 0) prod = prod * cyclotomic(d);
            CHECK(prod == t_power_minus_one(n));
            CHECK(cyclotomic(n).deg() == euler_phi(n));
        }
    }

    TEST_CASE("split polynomials") {
        CHECK(split_polynomial(2) == P({1, 1}));
        CHECK(split_polynomial(4) == P({1, 1, 1, 1}));
        for (std::size_t p : {2, 3, 5, 7, 11, 13}) CHECK(split_polynomial(p) == cyclotomic(p));
        for (std::size_t n = 2; n <= 30; ++n) CHECK(split_polynomial(n) * P({-1, 1}) == t_power_minus_one(n));
    }

    TEST_CASE("arithmetic helpers") {
        CHECK(radical(72) == 6);
        CHECK(radical(1) == 1);
        CHECK(euler_phi(1) == 1);
        CHECK(euler_phi(36) == 12);
        CHECK(prime_factors(60) == std::vector<std::size_t>{2, 3, 5});
        CHECK(is_prime(97));
        CHECK_FALSE(is_prime(91));
        CHECK_FALSE(is_prime(1));
        CHECK(is_squarefree(30));
        CHECK_FALSE(is_squarefree(18));
        const auto rec = cyclo_record(12);
        CHECK(rec.radical == 6);
        CHECK(rec.euler_phi == 4);
        CHECK(rec.psi_n == split_polynomial(12));
        CHECK(cyclo_record(1).psi_n.is_zero());
    }

    TEST_CASE("classical identities") {
        const auto c15 = verify_cyclo_identities(15);
        CHECK(c15.all_hold);
        CHECK(cyclotomic(15) * cyclotomic(3) == substitute_power(cyclotomic(3), 5));
        bool found5 = false;
        for (const auto& [p, ok] : c15.division_identities) {
            CHECK(ok);
            found5 = found5 || p == 5;
        }
        CHECK(found5);

        const auto c6 = verify_cyclo_identities(6);
        REQUIRE(c6.even_identity.has_value());
        CHECK(*c6.even_identity);
        CHECK(c6.all_hold);

        // Phi_4(1) = 2: the prime-power reading holds, the literal reading does not.
        const auto c4 = verify_cyclo_identities(4);
        CHECK(c4.value_at_one == 2);
        CHECK(c4.value_in_one_or_radical);
        CHECK(c4.prime_power_reading);
        CHECK_FALSE(c4.literal_reading);

        for (std::size_t n = 2; n <= 40; ++n) {
            CAPTURE(n);
            CHECK(verify_cyclo_identities(n).all_hold);
        }
    }

    TEST_CASE("Phi_n(1) readings") {
        for (std::size_t n = 2; n <= 60; ++n) {
            const Int v = cyclotomic(n).eval(Int(1));
            const auto pf = prime_factors(n);
            CHECK(v == (pf.size() == 1 ? Int(static_cast<unsigned long>(pf[0])) : Int(1)));
        }
    }

    TEST_CASE("reduced resultants of square-free cyclotomics are one") {
        for (std::size_t n = 1; n <= 30; ++n) {
            if (!is_squarefree(n)) continue;
            for (std::size_t u = 2; u <= euler_phi(n) + 1; ++u) {
                CAPTURE(n);
                CAPTURE(u);
                CHECK(rres(cyclotomic(n), u) == 1);
            }
        }
    }

    TEST_CASE("closed forms in the table") {
        const CycloTable table = cyclo_invariant_table(15, 8);
        bool saw_psi5 = false, saw_phi15 = false, saw_phi9 = false;
        for (const auto& e : table.entries) {
            if (e.family == "Psi" && e.n == 5) {
                saw_psi5 = true;
                CHECK(e.report.discr_star == 125);
                CHECK(e.report.prod_star == 625);
            }
            if (e.family == "Phi" && e.n == 15) {
                saw_phi15 = true;
                CHECK(e.report.discr_star * e.report.prod_star == ipow(3, 28) * ipow(5, 14));
            }
            if (e.family == "Phi" && e.n == 9) {
                saw_phi9 = true;
                CHECK(e.report.tcn == 0);
            }
            if (e.family == "Phi")
                for (const auto& c : e.checks) {
                    CAPTURE(e.n);
                    CAPTURE(c.name);
                    CHECK(c.pass);
                }
        }
        CHECK(saw_psi5);
        CHECK(saw_phi15);
        CHECK(saw_phi9);
    }

    TEST_CASE("Discr* Prod* of Phi_n divides a power of n") {
        for (std::size_t n = 2; n <= 20; ++n) {
            if (euler_phi(n) > 8) continue;  // Prod* needs a deg^2-dimensional characteristic polynomial
            const IntPoly phi = cyclotomic(n);
            const Int dp = discr_star(phi) * prod_star(phi);
            CAPTURE(n);
            REQUIRE(dp != 0);
            const Int big = ipow(static_cast<long>(n), n * n);
            CHECK(mpz_divisible_p(big.get_mpz_t(), dp.get_mpz_t()));
        }
    }
}

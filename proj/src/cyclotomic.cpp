#include "fixfree/cyclotomic.hpp"

#include <mutex>
#include <unordered_map>

namespace fixfree {

std::vector<std::size_t> prime_factors(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_prime(std::size_t n) {
    if (n < 2) return false;
    for (std::size_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::size_t radical(std::size_t n) {
    std::size_t r = 1;
    for (auto p : prime_factors(n)) r *= p;
    return r;
}

bool is_squarefree(std::size_t n) { return n >= 1 && radical(n) == n; }

std::size_t euler_phi(std::size_t n) {
    std::size_t r = n;
    for (auto p : prime_factors(n)) r = r / p * (p - 1);
    return r;
}

namespace {

std::mutex cache_mutex;
std::unordered_map<std::size_t, IntPoly> cache;

IntPoly t_power_minus_one(std::size_t n) {
    return IntPoly::monomial(Int(1), n) - IntPoly::constant(1);
}

}  // namespace

IntPoly cyclotomic(std::size_t n) {
    if (n == 0) throw AlgebraError(ErrorKind::InvalidArgument, "cyclotomic index must be positive");
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    IntPoly p = t_power_minus_one(n);
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d) continue;
        auto q = divide_exact(p, cyclotomic(d));
        if (!q) throw AlgebraError(ErrorKind::InvalidArgument, "cyclotomic division was not exact");
        p = std::move(*q);
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(n, p);
    return p;
}

IntPoly split_polynomial(std::size_t n) {
    if (n < 1) throw AlgebraError(ErrorKind::InvalidArgument, "split polynomial index must be positive");
    return IntPoly(std::vector<Int>(n, Int(1)));
}

CycloRecord cyclo_record(std::size_t n) {
    CycloRecord rec;
    rec.n = n;
    rec.radical = radical(n);
    rec.phi_n = cyclotomic(n);
    if (n >= 2) rec.psi_n = split_polynomial(n);
    rec.euler_phi = euler_phi(n);
    return rec;
}

CycloIdentityCheck verify_cyclo_identities(std::size_t n) {
    if (n < 2) throw AlgebraError(ErrorKind::InvalidArgument, "identities are checked for n >= 2");
    CycloIdentityCheck c;
    c.n = n;
    const std::size_t m = radical(n);
    c.radical = m;
    const IntPoly phi = cyclotomic(n);
    const IntPoly tn1 = t_power_minus_one(n);

    c.degree_is_phi = phi.deg() == euler_phi(n);

    IntPoly prod = IntPoly::constant(1);
    for (std::size_t d = 1; d <= n; ++d)
        if (n % d == 0) prod *= cyclotomic(d);
    c.divisor_product = prod == tn1;

    c.split_relation = split_polynomial(n) * (IntPoly::variable() - IntPoly::constant(1)) == tn1;
    c.radical_substitution = phi == substitute_power(cyclotomic(m), n / m);

    if (n == m) {
        for (auto p : prime_factors(n)) {
            if (p == 2) continue;
            const std::size_t mm = n / p;
            const IntPoly phim = cyclotomic(mm);
            c.division_identities.emplace_back(p, phi * phim == substitute_power(phim, p));
        }
    }
    if (n % 2 == 0 && (n / 2) % 2 == 1 && n / 2 > 1) {
        const IntPoly phim = cyclotomic(n / 2);
        std::vector<Int> neg(phim.coeffs());
        for (std::size_t i = 1; i < neg.size(); i += 2) neg[i] = -neg[i];
        c.even_identity = phi == IntPoly(std::move(neg));
    }

    c.value_at_one = phi.eval(Int(1));
    c.value_in_one_or_radical = c.value_at_one == 1 || c.value_at_one == Int(static_cast<unsigned long>(m));
    c.literal_reading = (n == m) ? c.value_at_one == Int(static_cast<unsigned long>(m)) : c.value_at_one == 1;
    const auto primes = prime_factors(n);
    const Int expected_pp = primes.size() == 1 ? Int(static_cast<unsigned long>(primes[0])) : Int(1);
    c.prime_power_reading = c.value_at_one == expected_pp;

    c.all_hold = c.degree_is_phi && c.divisor_product && c.split_relation && c.radical_substitution &&
                 c.value_in_one_or_radical && c.even_identity.value_or(true);
    for (const auto& [p, ok] : c.division_identities) c.all_hold = c.all_hold && ok;
    return c;
}

namespace {

Int ipow(unsigned long b, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

ClosedFormCheck check(const std::string& name, const Int& expected, const Int& actual) {
    return {name, expected.get_str(), actual.get_str(), expected == actual};
}

// True when every prime factor of x divides n (x nonzero).
bool divides_power_of(const Int& x, std::size_t n) {
    if (x == 0) return false;
    Int y = abs(x);
    for (auto p : prime_factors(n)) {
        Int pp(static_cast<unsigned long>(p));
        while (mpz_divisible_p(y.get_mpz_t(), pp.get_mpz_t())) y /= pp;
    }
    return y == 1;
}

InvariantReport report_without_products(const IntPoly& r) {
    InvariantReport rep;
    rep.r = r;
    rep.r_at_1 = r.eval(Int(1));
    Int acc = 1;
    for (std::size_t u = 2; u <= r.deg() + 1; ++u) {
        Int x = rres(r, u);
        rep.rres_table[u] = x;
        if (acc == 0) continue;
        if (x == 0)
            acc = 0;
        else
            mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), x.get_mpz_t());
    }
    rep.tcn = acc;
    GoodnessVerdict g = is_good(r);
    rep.good = g.good;
    rep.good_witness = g.witness;
    AfVerdict af = roots_arithmetically_free(r);
    rep.roots_af = af.af;
    rep.af_witness = af.witness;
    return rep;
}

}  // namespace

CycloTable cyclo_invariant_table(std::size_t N, std::size_t product_degree_cap) {
    if (N < 2) throw AlgebraError(ErrorKind::InvalidArgument, "table size must be at least 2");
    CycloTable table;
    auto make = [&](const std::string& family, std::size_t n, const IntPoly& r) {
        CycloTableEntry e;
        e.family = family;
        e.n = n;
        e.products_computed = r.deg() <= product_degree_cap;
        e.report = e.products_computed ? invariant_report(r) : report_without_products(r);
        return e;
    };
    for (std::size_t n = 1; n <= N; ++n) {
        CycloTableEntry e = make("Phi", n, cyclotomic(n));
        e.checks.push_back(check("tcn", Int(is_squarefree(n) ? 1 : 0), e.report.tcn));
        if (e.products_computed && n >= 2) {
            Int dp = e.report.discr_star * e.report.prod_star;
            e.checks.push_back({"discr_prod_divides_power_of_n", "true", divides_power_of(dp, n) ? "true" : "false",
                                divides_power_of(dp, n)});
            if (n == 6) e.checks.push_back(check("discr_prod", Int(12), dp));
            if (n == 15) e.checks.push_back(check("discr_prod", ipow(3, 28) * ipow(5, 14), dp));
        }
        table.entries.push_back(std::move(e));
    }
    for (std::size_t n = 2; n <= N; ++n) {
        CycloTableEntry e = make("Psi", n, split_polynomial(n));
        const bool composite = !is_prime(n);
        const bool tcn_zero = e.report.tcn == 0;
        e.checks.push_back({"tcn_zero_iff_composite", composite ? "true" : "false", tcn_zero ? "true" : "false",
                            composite == tcn_zero});
        if (e.products_computed) {
            e.checks.push_back(check("discr_star", ipow(n, n - 2), e.report.discr_star));
            e.checks.push_back(check("prod_star", ipow(n, n - 1), e.report.prod_star));
        }
        table.entries.push_back(std::move(e));
    }
    for (const auto& e : table.entries)
        for (const auto& c : e.checks)
            if (!c.pass) ++table.mismatches;
    return table;
}

}  // namespace fixfree

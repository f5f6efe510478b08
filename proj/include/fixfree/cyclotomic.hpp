#pragma once

// Cyclotomic polynomials Phi_n, split polynomials Psi_n = 1 + t + ... + t^{n-1},
// their classical identities, and a checker comparing computed invariants
// with known closed forms.

#include <string>
#include <vector>

#include "fixfree/invariants.hpp"

namespace fixfree {

struct CycloRecord {
    std::size_t n = 0;
    std::size_t radical = 0;
    IntPoly phi_n;
    IntPoly psi_n;  // zero for n = 1
    std::size_t euler_phi = 0;
};

std::size_t radical(std::size_t n);
std::size_t euler_phi(std::size_t n);
std::vector<std::size_t> prime_factors(std::size_t n);
bool is_prime(std::size_t n);
bool is_squarefree(std::size_t n);

/// Phi_n by exact division of t^n - 1; results are cached (thread-safe).
IntPoly cyclotomic(std::size_t n);
IntPoly split_polynomial(std::size_t n);
CycloRecord cyclo_record(std::size_t n);

/// Which identities applied to n and whether each held.
struct CycloIdentityCheck {
    std::size_t n = 0;
    std::size_t radical = 0;
    bool degree_is_phi = false;
    bool divisor_product = false;       // prod_{d|n} Phi_d = t^n - 1
    bool split_relation = false;        // Psi_n (t - 1) = t^n - 1
    bool radical_substitution = false;  // Phi_n(t) = Phi_m(t^{n/m})
    // Phi_{p m} Phi_m = Phi_m(t^p) for odd primes p with n = p m square-free.
    std::vector<std::pair<std::size_t, bool>> division_identities;
    // Phi_{2m}(t) = Phi_m(-t), present when n = 2m with m odd and m > 1.
    std::optional<bool> even_identity;
    Int value_at_one;
    bool value_in_one_or_radical = false;  // Phi_n(1) lies in {1, m}
    bool literal_reading = false;          // n = m gives m, n != m gives 1
    bool prime_power_reading = false;      // p for n = p^k, otherwise 1
    bool all_hold = false;
};

CycloIdentityCheck verify_cyclo_identities(std::size_t n);

struct ClosedFormCheck {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct CycloTableEntry {
    std::string family;  // "Phi" or "Psi"
    std::size_t n = 0;
    InvariantReport report;
    bool products_computed = true;
    std::vector<ClosedFormCheck> checks;
};

struct CycloTable {
    std::vector<CycloTableEntry> entries;
    std::size_t mismatches = 0;
};

/// Invariant reports for Phi_n (1 <= n <= N) and Psi_n (2 <= n <= N).  Discr*
/// and Prod* are computed only for polynomials of degree <= product_degree_cap
/// since Prod* needs a (deg)^2-dimensional characteristic polynomial.
CycloTable cyclo_invariant_table(std::size_t N, std::size_t product_degree_cap = 12);

}  // namespace fixfree

#pragma once

// Integer invariants of r(t) in Z[t]: reduced resultants, the periodic
// congruence number, Discr* and Prod*, plus the goodness and arithmetic-
// freeness verdicts.  Nothing here extracts roots.

#include <map>
#include <optional>

#include "fixfree/polycore.hpp"

namespace fixfree {

/// Witness of badness: either s(t^{u+1}) divides r(0) r(1) r(t), or one of
/// the flags records that r(0) = 0 or r(1) = 0.
struct GoodnessWitness {
    std::size_t u = 0;
    IntPoly s;
    bool r0_zero = false;
    bool r1_zero = false;
};

struct GoodnessVerdict {
    bool good = false;
    std::optional<GoodnessWitness> witness;
};

/// Witness that the roots are not arithmetically free: Phi_u divides r and
/// s(t^u) divides r.  A root at zero is reported with u = 0 and s = t.
struct AfWitness {
    std::size_t u = 0;
    std::size_t cyclotomic_index = 0;
    IntPoly s;
};

struct AfVerdict {
    bool af = false;
    std::optional<AfWitness> witness;
};

struct InvariantReport {
    IntPoly r;
    Int r_at_1;
    Int tcn;
    std::map<std::size_t, Int> rres_table;
    Int discr_star;
    Int prod_star;
    bool good = false;
    std::optional<GoodnessWitness> good_witness;
    bool roots_af = false;
    std::optional<AfWitness> af_witness;
};

Int rres(const IntPoly& r, std::size_t u);
Int tcn(const IntPoly& r);
Int discr_star(const IntPoly& r);
Int prod_star(const IntPoly& r);

/// The polynomial w(t) used by prod_star: the part of char_poly(C (x) C) coprime
/// to r, scaled to leading coefficient a^(2 deg w).  Exposed for tests.
IntPoly prod_star_cofactor(const IntPoly& r);

GoodnessVerdict is_good(const IntPoly& r);
AfVerdict roots_arithmetically_free(const IntPoly& r);
InvariantReport invariant_report(const IntPoly& r);

/// Monic gcd over Q of the shifted partial sums r_{u,j}(t) * t^{-j}, j < u.
RatPoly periodic_gcd(const IntPoly& r, std::size_t u);

}  // namespace fixfree

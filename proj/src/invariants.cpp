#include "fixfree/invariants.hpp"

#include "fixfree/cyclotomic.hpp"

namespace fixfree {

namespace {

void require_nonzero(const IntPoly& r, const char* who) {
    if (r.is_zero()) throw AlgebraError(ErrorKind::ZeroInput, std::string(who) + " of the zero polynomial");
}

Int ipow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

IntPoly to_int_exact(const RatPoly& p) {
    std::vector<Int> c;
    for (const auto& x : p.coeffs()) {
        if (x.get_den() != 1) throw AlgebraError(ErrorKind::InvalidArgument, "expected integer coefficients");
        c.push_back(x.get_num());
    }
    return IntPoly(std::move(c));
}

// h(t) = S(t^u): read off S from the coefficients at multiples of u.
IntPoly unsubstitute(const IntPoly& h, std::size_t u) {
    std::vector<Int> c;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (i % u == 0)
            c.push_back(h.coeff(i));
        else if (h.coeff(i) != 0)
            throw AlgebraError(ErrorKind::InvalidArgument, "polynomial is not a function of t^u");
    }
    return IntPoly(std::move(c));
}

}  // namespace

RatPoly periodic_gcd(const IntPoly& r, std::size_t u) {
    RatPoly g;
    for (std::size_t j = 0; j < u; ++j) {
        IntPoly part = partial_sum(r, u, j);
        if (part.is_zero()) continue;
        std::vector<Int> c(part.coeffs().begin() + static_cast<std::ptrdiff_t>(j), part.coeffs().end());
        g = gcd_q(g, to_rat(IntPoly(std::move(c))));
    }
    return g;
}

Int rres(const IntPoly& r, std::size_t u) {
    require_nonzero(r, "rres");
    if (u < 2) throw AlgebraError(ErrorKind::InvalidArgument, "rres needs u >= 2");
    std::vector<IntPoly> parts;
    for (std::size_t j = 0; j < u; ++j) parts.push_back(partial_sum(r, u, j));
    return ideal_constant(parts);
}

Int tcn(const IntPoly& r) {
    require_nonzero(r, "tcn");
    Int acc = 1;
    const std::size_t d = r.deg();
    for (std::size_t u = 2; u <= d + 1; ++u) {
        Int x = rres(r, u);
        if (x == 0) return 0;
        mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), x.get_mpz_t());
    }
    return acc;
}

Int discr_star(const IntPoly& r) {
    require_nonzero(r, "discr_star");
    if (r.deg() == 0) return r.coeff(0);
    const SquareFreeDecomposition sf = squarefree_factorization(r);
    const Int& a = r.leading();
    const unsigned long d = r.deg(), m = sf.m, l = sf.l;
    const unsigned long exponent = 1 + 2 * d * d - 2 * m * (l - 1) - m;
    Int fact;
    mpz_fac_ui(fact.get_mpz_t(), m - 1);
    Int res = resultant(sf.v, sf.v.derivative());
    return ipow(a, exponent) * fact * ipow(res, m);
}

IntPoly prod_star_cofactor(const IntPoly& r) {
    require_nonzero(r, "prod_star");
    if (r.deg() == 0) return IntPoly::constant(1);
    const SquareFreeDecomposition sf = squarefree_factorization(r);
    const Int& a = r.leading();
    RatPoly monic_v = Rat(1, 1) / Rat(a) * to_rat(sf.v);
    RatPoly w = char_poly(kronecker_square(companion_matrix(monic_v)));
    const RatPoly rq = to_rat(r);
    while (true) {
        RatPoly g = gcd_q(w, rq);
        if (g.is_constant()) break;
        w = divmod(w, g).first;
    }
    const std::size_t dw = w.deg();
    Rat scale = Rat(ipow(a, 2 * dw)) / w.leading();
    return to_int_exact(scale * w);
}

Int prod_star(const IntPoly& r) {
    require_nonzero(r, "prod_star");
    if (r.deg() == 0) return 1;
    const IntPoly w = prod_star_cofactor(r);
    const unsigned long d = r.deg(), dw = w.deg();
    return ipow(r.leading(), 2 * (d * d - dw) * d) * resultant(r, w);
}

GoodnessVerdict is_good(const IntPoly& r) {
    require_nonzero(r, "is_good");
    GoodnessVerdict v;
    const Int r0 = r.coeff(0), r1 = r.eval(Int(1));
    if (r0 == 0 || r1 == 0) {
        GoodnessWitness w;
        w.r0_zero = (r0 == 0);
        w.r1_zero = (r1 == 0);
        v.witness = w;
        return v;
    }
    if (r.deg() == 0) {
        v.good = true;
        return v;
    }
    for (std::size_t u = 2; u <= r.deg() + 1; ++u) {
        if (rres(r, u) != 0) continue;
        RatPoly h = periodic_gcd(r, u);
        GoodnessWitness w;
        w.u = u - 1;
        w.s = primitive_part(unsubstitute(primitive_integer_part(h), u));
        v.witness = w;
        return v;
    }
    v.good = true;
    return v;
}

AfVerdict roots_arithmetically_free(const IntPoly& r) {
    require_nonzero(r, "roots_arithmetically_free");
    if (r.coeff(0) == 0) throw AlgebraError(ErrorKind::ZeroConstantTerm, "r(0) = 0");
    AfVerdict v;
    const std::size_t d = r.deg();
    for (std::size_t u = 1; u <= d; ++u) {
        if (!divide_exact(r, cyclotomic(u))) continue;
        RatPoly h = periodic_gcd(r, u);
        if (h.is_constant()) continue;
        AfWitness w;
        w.u = u;
        w.cyclotomic_index = u;
        w.s = primitive_part(unsubstitute(primitive_integer_part(h), u));
        v.witness = w;
        return v;
    }
    v.af = true;
    return v;
}

InvariantReport invariant_report(const IntPoly& r) {
    require_nonzero(r, "invariant_report");
    InvariantReport rep;
    rep.r = r;
    rep.r_at_1 = r.eval(Int(1));
    Int acc = 1;
    for (std::size_t u = 2; u <= r.deg() + 1; ++u) {
        Int x = rres(r, u);
        rep.rres_table[u] = x;
        if (acc != 0) {
            if (x == 0)
                acc = 0;
            else
                mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), x.get_mpz_t());
        }
    }
    rep.tcn = acc;
    rep.discr_star = discr_star(r);
    rep.prod_star = prod_star(r);
    GoodnessVerdict g = is_good(r);
    rep.good = g.good;
    rep.good_witness = g.witness;
    if (r.coeff(0) == 0) {
        // Zero is a root, and 0, 0*mu, ... is a progression inside the root set.
        rep.roots_af = false;
        rep.af_witness = AfWitness{0, 0, IntPoly::variable()};
    } else {
        AfVerdict af = roots_arithmetically_free(r);
        rep.roots_af = af.af;
        rep.af_witness = af.witness;
    }
    return rep;
}

}  // namespace fixfree

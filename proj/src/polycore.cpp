#include "fixfree/polycore.hpp"

#include <algorithm>
#include <sstream>

namespace fixfree {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::ConstantInput: return "ConstantInput";
        case ErrorKind::ZeroInput: return "ZeroInput";
        case ErrorKind::NotMonic: return "NotMonic";
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::EmptyGenerators: return "EmptyGenerators";
        case ErrorKind::ZeroConstantTerm: return "ZeroConstantTerm";
        case ErrorKind::NotAutomorphism: return "NotAutomorphism";
        case ErrorKind::NotHomomorphism: return "NotHomomorphism";
        case ErrorKind::InvalidGroup: return "InvalidGroup";
        case ErrorKind::SeriesNotInvariant: return "SeriesNotInvariant";
        case ErrorKind::FactorNotElementaryAbelian: return "FactorNotElementaryAbelian";
        case ErrorKind::ConstantTermNotUnit: return "ConstantTermNotUnit";
        case ErrorKind::UnsupportedWordShape: return "UnsupportedWordShape";
        case ErrorKind::HypothesisViolated: return "HypothesisViolated";
        case ErrorKind::BoundExceeded: return "BoundExceeded";
        case ErrorKind::DimensionCap: return "DimensionCap";
        case ErrorKind::SupportNotAF: return "SupportNotAF";
        case ErrorKind::DoesNotSplit: return "DoesNotSplit";
        case ErrorKind::IdentityFails: return "IdentityFails";
        case ErrorKind::NotPGroup: return "NotPGroup";
        case ErrorKind::FactorsNotHomocyclic: return "FactorsNotHomocyclic";
        case ErrorKind::ClassTooHigh: return "ClassTooHigh";
        case ErrorKind::EvenModulus: return "EvenModulus";
        case ErrorKind::InvalidLieRing: return "InvalidLieRing";
        case ErrorKind::UnsupportedRing: return "UnsupportedRing";
        case ErrorKind::SeriesNotNormal: return "SeriesNotNormal";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

RatPoly to_rat(const IntPoly& p) {
    std::vector<Rat> c;
    c.reserve(p.size());
    for (const auto& x : p.coeffs()) c.emplace_back(x);
    return RatPoly(std::move(c));
}

Int content(const IntPoly& p) {
    Int g = 0;
    for (const auto& x : p.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero()) return p;
    Int g = content(p);
    if (p.leading() < 0) g = -g;
    std::vector<Int> c(p.coeffs());
    for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(c));
}

IntPoly primitive_integer_part(const RatPoly& p) {
    if (p.is_zero()) return IntPoly();
    Int den = 1;
    for (const auto& x : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Int> c;
    c.reserve(p.size());
    for (const auto& x : p.coeffs()) {
        Int v = x.get_num() * (den / x.get_den());
        c.push_back(v);
    }
    return primitive_part(IntPoly(std::move(c)));
}

RatPoly make_monic(const RatPoly& p) {
    if (p.is_zero()) return p;
    Rat inv = 1 / p.leading();
    return inv * p;
}

namespace {

template <class C>
std::string poly_text(const Poly<C>& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        C c = p.coeff(i);
        if (c == 0) continue;
        bool neg = c < 0;
        C mag = neg ? C(-c) : c;
        if (first) {
            if (neg) out << '-';
        } else {
            out << (neg ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            out << mag.get_str();
        } else {
            if (mag != 1) out << mag.get_str() << '*';
            out << var;
            if (i > 1) out << '^' << i;
        }
    }
    return out.str();
}

}  // namespace

std::string to_string(const IntPoly& p, const std::string& var) { return poly_text(p, var); }
std::string to_string(const RatPoly& p, const std::string& var) { return poly_text(p, var); }

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw AlgebraError(ErrorKind::ZeroInput, "division by the zero polynomial");
    std::vector<Rat> rem(a.coeffs());
    const std::size_t db = b.deg();
    if (rem.size() <= db) return {RatPoly(), a};
    std::vector<Rat> quo(rem.size() - db, Rat(0));
    const Rat inv = 1 / b.leading();
    for (std::size_t k = rem.size(); k-- > db;) {
        if (rem[k] == 0) continue;
        Rat f = rem[k] * inv;
        quo[k - db] = f;
        for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= f * b.coeff(j);
    }
    return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw AlgebraError(ErrorKind::ZeroInput, "division by the zero polynomial");
    if (a.is_zero()) return IntPoly();
    const std::size_t db = b.deg();
    if (a.deg() < db) return std::nullopt;
    std::vector<Int> rem(a.coeffs());
    std::vector<Int> quo(rem.size() - db, Int(0));
    const Int& lb = b.leading();
    for (std::size_t k = rem.size(); k-- > db;) {
        if (rem[k] == 0) continue;
        if (!mpz_divisible_p(rem[k].get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
        Int f;
        mpz_divexact(f.get_mpz_t(), rem[k].get_mpz_t(), lb.get_mpz_t());
        quo[k - db] = f;
        for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= f * b.coeff(j);
    }
    for (std::size_t k = 0; k < db; ++k)
        if (rem[k] != 0) return std::nullopt;
    return IntPoly(std::move(quo));
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw AlgebraError(ErrorKind::ZeroInput, "pseudo-division by zero");
    if (a.is_zero() || a.deg() < b.deg()) return a;
    const std::size_t db = b.deg();
    std::vector<Int> rem(a.coeffs());
    const Int& lb = b.leading();
    std::size_t steps = a.deg() - db + 1;
    for (std::size_t k = rem.size(); k-- > db;) {
        Int f = rem[k];
        for (auto& x : rem) x *= lb;
        for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= f * b.coeff(j);
        --steps;
    }
    // Remaining multiplications keep the lc(b)^(da-db+1) normalization exact.
    for (; steps > 0; --steps)
        for (auto& x : rem) x *= lb;
    return IntPoly(std::move(rem));
}

namespace {

Int ipow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

IntPoly divexact_scalar(const IntPoly& p, const Int& s) {
    std::vector<Int> c(p.coeffs());
    for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
    return IntPoly(std::move(c));
}

// Subresultant polynomial remainder sequence on primitive parts; returns the
// primitive gcd up to sign.
IntPoly subresultant_gcd(IntPoly a, IntPoly b) {
    if (a.is_zero()) return primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.deg() < b.deg()) std::swap(a, b);
    Int g = 1, h = 1;
    while (true) {
        const std::size_t delta = a.deg() - b.deg();
        IntPoly r = pseudo_remainder(a, b);
        if (r.is_zero()) return primitive_part(b);
        if (r.deg() == 0) return IntPoly::constant(1);
        a = b;
        b = divexact_scalar(r, g * ipow(h, delta));
        g = a.leading();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            Int num = ipow(g, delta), den = ipow(h, delta - 1);
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
    }
}

}  // namespace

RatPoly gcd_q(const IntPoly& p, const IntPoly& q) {
    if (p.is_zero() && q.is_zero()) return RatPoly();
    return make_monic(to_rat(subresultant_gcd(p, q)));
}

RatPoly gcd_q(const RatPoly& p, const RatPoly& q) {
    return gcd_q(primitive_integer_part(p), primitive_integer_part(q));
}

ExtendedGcd extended_gcd_q(const RatPoly& p, const RatPoly& q) {
    RatPoly r0 = p, r1 = q;
    RatPoly s0 = RatPoly::constant(1), s1;
    RatPoly t0, t1 = RatPoly::constant(1);
    while (!r1.is_zero()) {
        auto [quo, rem] = divmod(r0, r1);
        RatPoly s2 = s0 - quo * s1, t2 = t0 - quo * t1;
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {RatPoly(), RatPoly(), RatPoly()};
    Rat inv = 1 / r0.leading();
    return {inv * r0, inv * s0, inv * t0};
}

SquareFreeDecomposition squarefree_factorization(const IntPoly& r) {
    if (r.is_zero() || r.deg() < 1)
        throw AlgebraError(ErrorKind::ConstantInput, "square-free factorization needs degree >= 1");
    SquareFreeDecomposition out;
    RatPoly f = to_rat(r);
    RatPoly fp = f.derivative();
    RatPoly a0 = gcd_q(f, fp);
    RatPoly b = divmod(f, a0).first;
    RatPoly c = divmod(fp, a0).first;
    RatPoly d = c - b.derivative();
    unsigned i = 1;
    while (!b.is_constant()) {
        RatPoly a = gcd_q(b, d);
        if (!a.is_constant()) out.parts.push_back({primitive_integer_part(a), i});
        b = divmod(b, a).first;
        c = divmod(d, a).first;
        d = c - b.derivative();
        ++i;
    }
    IntPoly prod = IntPoly::constant(1);
    out.u = IntPoly::constant(1);
    for (const auto& part : out.parts) {
        prod *= part.u.pow(part.multiplicity);
        out.u *= part.u;
        out.m = std::max(out.m, part.multiplicity);
    }
    auto q = divide_exact(r, prod);
    if (!q || q->deg() != 0) throw AlgebraError(ErrorKind::InvalidArgument, "square-free reconstruction failed");
    out.scalar = q->coeff(0);
    out.l = out.u.deg();
    Int ratio;
    mpz_divexact(ratio.get_mpz_t(), r.leading().get_mpz_t(), out.u.leading().get_mpz_t());
    out.v = ratio * out.u;
    return out;
}

IntPoly partial_sum(const IntPoly& r, std::size_t u, std::size_t j) {
    if (u == 0 || j >= u) throw AlgebraError(ErrorKind::InvalidArgument, "partial_sum needs 0 <= j < u");
    std::vector<Int> c(r.size(), Int(0));
    for (std::size_t i = j; i < r.size(); i += u) c[i] = r.coeff(i);
    return IntPoly(std::move(c));
}

IntPoly substitute_power(const IntPoly& r, std::size_t u) {
    if (u == 0) return IntPoly::constant(r.eval(Int(1)));
    if (r.is_zero()) return r;
    std::vector<Int> c(r.deg() * u + 1, Int(0));
    for (std::size_t i = 0; i < r.size(); ++i) c[i * u] = r.coeff(i);
    return IntPoly(std::move(c));
}

// ---- ideal constant via a strong Groebner basis in Z[t] ----

namespace {

IntPoly reduce_mod(const IntPoly& p, const Int& D) {
    std::vector<Int> c(p.coeffs());
    for (auto& x : c) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), D.get_mpz_t());
    return IntPoly(std::move(c));
}

// Top-reduce f by the basis until its leading term is not divisible by any
// leading term of the basis.  Coefficients stay in [0, D).
IntPoly top_reduce(IntPoly f, const std::vector<IntPoly>& basis, const Int& D) {
    f = reduce_mod(f, D);
    while (!f.is_zero()) {
        const IntPoly* by = nullptr;
        for (const auto& g : basis) {
            if (g.deg() <= f.deg() && mpz_divisible_p(f.leading().get_mpz_t(), g.leading().get_mpz_t())) {
                by = &g;
                break;
            }
        }
        if (!by) break;
        Int q;
        mpz_divexact(q.get_mpz_t(), f.leading().get_mpz_t(), by->leading().get_mpz_t());
        f = reduce_mod(f - q * by->shift(f.deg() - by->deg()), D);
    }
    return f;
}

}  // namespace

Int ideal_constant(const std::vector<IntPoly>& gens) {
    if (gens.empty()) throw AlgebraError(ErrorKind::EmptyGenerators, "ideal_constant needs generators");
    std::vector<IntPoly> nz;
    for (const auto& g : gens)
        if (!g.is_zero()) nz.push_back(g);
    if (nz.empty()) return 0;

    // A common root over Q kills every combination, so the intersection is 0.
    RatPoly g = to_rat(nz[0]);
    for (std::size_t i = 1; i < nz.size(); ++i) g = gcd_q(g, to_rat(nz[i]));
    if (!g.is_constant()) return 0;

    // Clear denominators of a rational Bezout identity to find a nonzero
    // constant D inside the ideal; afterwards work with coefficients mod D.
    RatPoly h = to_rat(nz[0]);
    std::vector<RatPoly> cof(nz.size());
    cof[0] = RatPoly::constant(1);
    for (std::size_t i = 1; i < nz.size(); ++i) {
        ExtendedGcd e = extended_gcd_q(h, to_rat(nz[i]));
        for (std::size_t k = 0; k < i; ++k) cof[k] = e.s * cof[k];
        cof[i] = e.t;
        h = e.g;
    }
    if (nz.size() == 1) cof[0] = RatPoly::constant(1 / h.leading());
    Int D = 1;
    for (const auto& cp : cof)
        for (const auto& x : cp.coeffs()) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), x.get_den_mpz_t());
    for (const auto& gi : nz)
        if (gi.deg() == 0) mpz_gcd(D.get_mpz_t(), D.get_mpz_t(), gi.coeff(0).get_mpz_t());
    D = abs(D);
    if (D == 1) return 1;

    std::vector<IntPoly> basis{IntPoly::constant(D)};
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    auto add = [&](IntPoly f) {
        f = top_reduce(std::move(f), basis, D);
        if (f.is_zero()) return;
        if (f.deg() == 0) {
            // A smaller constant replaces D; later reductions work modulo it.
            mpz_gcd(D.get_mpz_t(), D.get_mpz_t(), f.coeff(0).get_mpz_t());
            basis[0] = IntPoly::constant(D);
            // The new constant has to meet every element again.
            for (std::size_t i = 1; i < basis.size(); ++i) pairs.emplace_back(0, i);
            return;
        }
        for (std::size_t i = 0; i < basis.size(); ++i) pairs.emplace_back(i, basis.size());
        basis.push_back(std::move(f));
    };
    for (const auto& gi : nz) add(gi);

    while (!pairs.empty() && D != 1) {
        auto [i, j] = pairs.back();
        pairs.pop_back();
        IntPoly f = basis[i], q = basis[j];
        if (f.deg() < q.deg()) std::swap(f, q);
        const std::size_t shift = f.deg() - q.deg();
        const Int& lf = f.leading();
        const Int& lq = q.leading();
        Int L;
        mpz_lcm(L.get_mpz_t(), lf.get_mpz_t(), lq.get_mpz_t());
        IntPoly spoly = Int(L / lf) * f - Int(L / lq) * q.shift(shift);
        Int gg, s, t;
        mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), lf.get_mpz_t(), lq.get_mpz_t());
        IntPoly gpoly = s * f + t * q.shift(shift);
        add(std::move(spoly));
        add(std::move(gpoly));
    }

    return D;
}

// ---- matrices ----

RatMatrix to_rat(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

Int determinant(const IntMatrix& input) {
    if (!input.is_square()) throw AlgebraError(ErrorKind::NotSquare, "determinant of a non-square matrix");
    const std::size_t n = input.rows();
    if (n == 0) return 1;
    IntMatrix m = input;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

Rat determinant(const RatMatrix& input) {
    if (!input.is_square()) throw AlgebraError(ErrorKind::NotSquare, "determinant of a non-square matrix");
    const std::size_t n = input.rows();
    RatMatrix m = input;
    Rat det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            Rat f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

IntMatrix sylvester_matrix(const IntPoly& p, const IntPoly& q) {
    if (p.is_zero() || q.is_zero()) throw AlgebraError(ErrorKind::ZeroInput, "Sylvester matrix of zero");
    const std::size_t m = p.deg(), n = q.deg(), N = m + n;
    IntMatrix s(N, N);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k <= m; ++k) s(i, i + k) = p.coeff(m - k);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k <= n; ++k) s(n + i, i + k) = q.coeff(n - k);
    return s;
}

Int resultant(const IntPoly& p, const IntPoly& q) { return determinant(sylvester_matrix(p, q)); }

RatMatrix companion_matrix(const RatPoly& p) {
    if (p.is_zero() || p.deg() < 1) throw AlgebraError(ErrorKind::ConstantInput, "companion of a constant");
    if (p.leading() != 1) throw AlgebraError(ErrorKind::NotMonic, "companion needs a monic polynomial");
    const std::size_t n = p.deg();
    RatMatrix c(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) c(i, i + 1) = 1;
    for (std::size_t j = 0; j < n; ++j) c(n - 1, j) = -p.coeff(j);
    return c;
}

RatMatrix kronecker_square(const RatMatrix& m) {
    if (!m.is_square()) throw AlgebraError(ErrorKind::NotSquare, "Kronecker square of a non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix k(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (m(i, j) == 0) continue;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) k(i * n + a, j * n + b) = m(i, j) * m(a, b);
        }
    return k;
}

RatPoly char_poly(const RatMatrix& input) {
    if (!input.is_square()) throw AlgebraError(ErrorKind::NotSquare, "characteristic polynomial of a non-square matrix");
    const std::size_t n = input.rows();
    RatMatrix h = input;
    // Similarity transforms to upper Hessenberg form.
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t piv = m;
        while (piv < n && h(piv, m - 1) == 0) ++piv;
        if (piv == n) continue;
        if (piv != m) {
            for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(m, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, m));
        }
        for (std::size_t i = m + 1; i < n; ++i) {
            if (h(i, m - 1) == 0) continue;
            Rat u = h(i, m - 1) / h(m, m - 1);
            for (std::size_t j = 0; j < n; ++j) h(i, j) -= u * h(m, j);
            for (std::size_t r = 0; r < n; ++r) h(r, m) += u * h(r, i);
        }
    }
    // p_k is the characteristic polynomial of the leading k x k block.
    std::vector<RatPoly> p(n + 1);
    p[0] = RatPoly::constant(1);
    const RatPoly t = RatPoly::variable();
    for (std::size_t k = 1; k <= n; ++k) {
        p[k] = (t - RatPoly::constant(h(k - 1, k - 1))) * p[k - 1];
        Rat prod = 1;
        for (std::size_t i = 1; i < k; ++i) {
            prod *= h(k - i, k - i - 1);
            if (prod == 0) break;
            p[k] -= Rat(prod * h(k - i - 1, k - 1)) * p[k - i - 1];
        }
    }
    return p[n];
}

RatMatrix evaluate_at_matrix(const RatPoly& p, const RatMatrix& m) {
    if (!m.is_square()) throw AlgebraError(ErrorKind::NotSquare, "polynomial evaluation at a non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix acc(n, n);
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * m;
        for (std::size_t d = 0; d < n; ++d) acc(d, d) += p.coeff(i);
    }
    return acc;
}

}  // namespace fixfree

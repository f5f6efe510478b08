#pragma once

// Dense univariate polynomials and small dense matrices over the integers
// and the rationals, with exact arithmetic throughout (GMP).

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fixfree/errors.hpp"

namespace fixfree {

using Int = mpz_class;
using Rat = mpq_class;

/// Dense polynomial with coefficient i stored at index i.  The stored vector
/// never ends in a zero, so the zero polynomial is the empty vector and its
/// degree is std::nullopt.
template <class C>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static Poly constant(const C& v) { return Poly(std::vector<C>{v}); }
    static Poly monomial(const C& v, std::size_t k) {
        std::vector<C> c(k + 1, C(0));
        c[k] = v;
        return Poly(std::move(c));
    }
    static Poly variable() { return monomial(C(1), 1); }

    std::optional<std::size_t> degree() const {
        if (c_.empty()) return std::nullopt;
        return c_.size() - 1;
    }
    /// Degree of a polynomial known to be nonzero.
    std::size_t deg() const {
        if (c_.empty()) throw AlgebraError(ErrorKind::ZeroInput, "degree of the zero polynomial");
        return c_.size() - 1;
    }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    std::size_t size() const { return c_.size(); }
    const std::vector<C>& coeffs() const { return c_; }

    C coeff(std::size_t i) const { return i < c_.size() ? c_[i] : C(0); }
    const C& leading() const {
        if (c_.empty()) throw AlgebraError(ErrorKind::ZeroInput, "leading coefficient of zero");
        return c_.back();
    }

    template <class X>
    X eval(const X& x) const {
        X acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = X(acc * x + X(c_[i]));
        return acc;
    }

    Poly derivative() const {
        std::vector<C> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(C(c_[i] * static_cast<unsigned long>(i)));
        return Poly(std::move(d));
    }

    Poly operator-() const {
        std::vector<C> c(c_);
        for (auto& x : c) x = -x;
        return Poly(std::move(c));
    }
    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<C> c(a.c_.size() + b.c_.size() - 1, C(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(c));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator*(const C& s, const Poly& p) {
        std::vector<C> c(p.c_);
        for (auto& x : c) x *= s;
        return Poly(std::move(c));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Multiply by t^k.
    Poly shift(std::size_t k) const {
        if (is_zero()) return Poly();
        std::vector<C> c(k, C(0));
        c.insert(c.end(), c_.begin(), c_.end());
        return Poly(std::move(c));
    }

    Poly pow(unsigned long e) const {
        Poly result = constant(C(1)), base = *this;
        while (e) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<C> c_;
};

using IntPoly = Poly<Int>;
using RatPoly = Poly<Rat>;

// ---- conversions and integer-specific helpers ----

RatPoly to_rat(const IntPoly& p);
/// Clear denominators and divide by the content; the leading coefficient is
/// made positive.  Zero maps to zero.
IntPoly primitive_integer_part(const RatPoly& p);
Int content(const IntPoly& p);
IntPoly primitive_part(const IntPoly& p);
RatPoly make_monic(const RatPoly& p);

/// Canonical text form, descending powers with explicit signs, e.g. "t^3 - 2*t - 1".
std::string to_string(const IntPoly& p, const std::string& var = "t");
std::string to_string(const RatPoly& p, const std::string& var = "t");

/// Quotient and remainder over the rationals; throws ZeroInput for b = 0.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
/// Exact division in Z[t]: the quotient when b divides a with integer quotient.
std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b);
/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

/// Monic gcd over Q[t]; gcd(0,0) = 0.
RatPoly gcd_q(const RatPoly& p, const RatPoly& q);
RatPoly gcd_q(const IntPoly& p, const IntPoly& q);

/// Extended Euclid over Q[t]: returns (g, s, t) with s*p + t*q = g monic.
struct ExtendedGcd {
    RatPoly g, s, t;
};
ExtendedGcd extended_gcd_q(const RatPoly& p, const RatPoly& q);

struct SquareFreePart {
    IntPoly u;
    unsigned multiplicity;
};

/// r = scalar * prod u_i^{i}.  Every u_i is primitive with positive leading
/// coefficient, parts are listed by increasing multiplicity, and factors that
/// would be constant are left out.
struct SquareFreeDecomposition {
    std::vector<SquareFreePart> parts;
    Int scalar;
    unsigned m = 0;   // largest multiplicity
    IntPoly u;        // product of the parts
    std::size_t l = 0;  // deg u, the number of distinct roots
    IntPoly v;        // (a / lc u) * u, with leading coefficient a = lc r
};

SquareFreeDecomposition squarefree_factorization(const IntPoly& r);

IntPoly partial_sum(const IntPoly& r, std::size_t u, std::size_t j);
IntPoly substitute_power(const IntPoly& r, std::size_t u);

/// Nonnegative generator of Z ∩ (g_1 Z[t] + ... + g_k Z[t]).
Int ideal_constant(const std::vector<IntPoly>& gens);

// ---- matrices ----

template <class C>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, C(0)) {}
    Matrix(std::initializer_list<std::initializer_list<long>> rows) {
        r_ = rows.size();
        c_ = r_ ? rows.begin()->size() : 0;
        for (const auto& row : rows) {
            if (row.size() != c_) throw AlgebraError(ErrorKind::DimensionMismatch, "ragged matrix literal");
            for (long v : row) a_.emplace_back(v);
        }
    }
    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = C(1);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool is_square() const { return r_ == c_; }
    C& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const C& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw AlgebraError(ErrorKind::DimensionMismatch, "matrix product");
        Matrix m(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                const C& x = a(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
            }
        return m;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw AlgebraError(ErrorKind::DimensionMismatch, "matrix sum");
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw AlgebraError(ErrorKind::DimensionMismatch, "matrix difference");
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
        return a;
    }
    friend Matrix operator*(const C& s, Matrix a) {
        for (auto& x : a.a_) x *= s;
        return a;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }
    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<C> a_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rat(const IntMatrix& m);

/// Fraction-free Bareiss elimination; the 0x0 determinant is 1.
Int determinant(const IntMatrix& m);
/// Gaussian elimination over Q.
Rat determinant(const RatMatrix& m);

/// Standard Sylvester matrix: deg q rows of shifted coefficients of p (highest
/// power first), followed by deg p rows of q.  Its determinant is
/// lc(p)^deg q * prod q(alpha) over the roots alpha of p.
IntMatrix sylvester_matrix(const IntPoly& p, const IntPoly& q);
Int resultant(const IntPoly& p, const IntPoly& q);

/// Ones on the superdiagonal and -c_0, ..., -c_{n-1} along the last row.
RatMatrix companion_matrix(const RatPoly& p);
RatMatrix kronecker_square(const RatMatrix& m);
/// det(t*I - M), via reduction to upper Hessenberg form.
RatPoly char_poly(const RatMatrix& m);

/// Horner evaluation p(M) for a square matrix.
RatMatrix evaluate_at_matrix(const RatPoly& p, const RatMatrix& m);

}  // namespace fixfree

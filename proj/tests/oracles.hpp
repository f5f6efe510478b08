#pragma once

// Independent reference computations used by the tests.  None of these call
// the library routine they check; they are slow, direct and small.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "fixfree/polycore.hpp"

namespace oracle {

using fixfree::Int;
using fixfree::IntMatrix;
using fixfree::IntPoly;
using fixfree::Rat;
using fixfree::RatMatrix;
using fixfree::RatPoly;

/// Fixed-seed generator so every run sees the same cases.
inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20261018);
    return g;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline IntPoly random_poly(std::size_t max_deg, long bound, bool nonconstant = true) {
    while (true) {
        const std::size_t d = static_cast<std::size_t>(uniform(nonconstant ? 1 : 0, static_cast<long>(max_deg)));
        std::vector<Int> c(d + 1);
        for (auto& x : c) x = uniform(-bound, bound);
        if (c[d] == 0) c[d] = uniform(0, 1) ? 1 : -1;
        IntPoly p(std::move(c));
        if (!p.is_zero() && (!nonconstant || !p.is_constant())) return p;
    }
}

/// Determinant by the permutation expansion.
template <class M>
auto leibniz(const M& m) {
    using C = std::decay_t<decltype(m(0, 0))>;
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    C total(0);
    do {
        C term(1);
        for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
        total += inversions % 2 ? C(-term) : term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

inline std::vector<Rat> to_rats(const IntPoly& p) {
    std::vector<Rat> v;
    for (const auto& c : p.coeffs()) v.emplace_back(c);
    return v;
}

inline void trim(std::vector<Rat>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

/// Remainder of a by b over Q (plain long division).
inline std::vector<Rat> rem(std::vector<Rat> a, const std::vector<Rat>& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const Rat f = a.back() / b.back();
        const std::size_t s = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[s + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

/// Resultant by the Euclidean recursion Res(p, q) = (-1)^{mn} lc(q)^{m - deg r} Res(q, r), r = p mod q.
inline Rat euclid_resultant(std::vector<Rat> p, std::vector<Rat> q) {
    trim(p);
    trim(q);
    if (p.empty() || q.empty()) return 0;
    Rat acc = 1;
    while (true) {
        const std::size_t m = p.size() - 1, n = q.size() - 1;
        if (n == 0) {
            Rat x = 1;
            for (std::size_t i = 0; i < m; ++i) x *= q[0];
            return acc * x;
        }
        if (m == 0) {
            Rat x = 1;
            for (std::size_t i = 0; i < n; ++i) x *= p[0];
            return acc * x;
        }
        auto r = rem(p, q);
        if (r.empty()) return 0;
        const std::size_t k = r.size() - 1;
        if ((m * n) % 2) acc = -acc;
        for (std::size_t i = 0; i < m - k; ++i) acc *= q.back();
        p = q;
        q = r;
    }
}

inline Int euclid_resultant(const IntPoly& p, const IntPoly& q) {
    const Rat r = euclid_resultant(to_rats(p), to_rats(q));
    return r.get_num();
}

/// det(t I - m) by evaluating at n + 1 integer points and interpolating.
inline std::vector<Rat> charpoly_interpolated(const RatMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<Rat> xs, ys;
    for (std::size_t k = 0; k <= n; ++k) {
        RatMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = (i == j ? Rat(static_cast<long>(k)) : Rat(0)) - m(i, j);
        xs.emplace_back(static_cast<long>(k));
        ys.push_back(leibniz(a));
    }
    std::vector<Rat> out(n + 1, Rat(0));
    for (std::size_t i = 0; i <= n; ++i) {
        std::vector<Rat> basis{Rat(1)};
        Rat denom = 1;
        for (std::size_t j = 0; j <= n; ++j) {
            if (j == i) continue;
            std::vector<Rat> next(basis.size() + 1, Rat(0));
            for (std::size_t k = 0; k < basis.size(); ++k) {
                next[k + 1] += basis[k];
                next[k] -= basis[k] * xs[j];
            }
            basis = next;
            denom *= xs[i] - xs[j];
        }
        for (std::size_t k = 0; k < basis.size(); ++k) out[k] += ys[i] * basis[k] / denom;
    }
    trim(out);
    return out;
}

/// Nonnegative generator of Z ∩ (sum of t^i g with deg t^i g <= max_deg) by integer row
/// echelon form with the highest degree as the first column.
inline Int lattice_constant(const std::vector<IntPoly>& gens, std::size_t max_deg) {
    std::vector<std::vector<Int>> rows;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        for (std::size_t i = 0; i + g.deg() <= max_deg; ++i) {
            std::vector<Int> row(max_deg + 1, Int(0));
            for (std::size_t k = 0; k <= g.deg(); ++k) row[max_deg - (i + k)] = g.coeff(k);
            rows.push_back(std::move(row));
        }
    }
    std::size_t top = 0;
    for (std::size_t col = 0; col <= max_deg; ++col) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t r = top; r < rows.size(); ++r)
                if (rows[r][col] != 0 && (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col]))) best = r;
            if (best == rows.size()) break;
            std::swap(rows[top], rows[best]);
            bool done = true;
            for (std::size_t r = top + 1; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[top][col].get_mpz_t());
                for (std::size_t c = col; c <= max_deg; ++c) rows[r][c] -= q * rows[top][c];
                if (rows[r][col] != 0) done = false;
            }
            if (done) {
                if (col == max_deg) return abs(rows[top][col]);
                ++top;
                break;
            }
        }
    }
    return 0;
}

// Lyndon words of length n over g letters, found by listing every word.
inline std::size_t lyndon_count(std::size_t g, std::size_t n) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= g;
    std::size_t count = 0;
    std::vector<std::size_t> w(n);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i, c /= g) w[n - 1 - i] = c % g;
        bool lyndon = true;
        for (std::size_t s = 1; s < n && lyndon; ++s) {
            std::vector<std::size_t> rot(w.begin() + static_cast<long>(s), w.end());
            rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(s));
            lyndon = w < rot;
        }
        count += lyndon;
    }
    return count;
}

inline IntPoly poly_pow(const IntPoly& p, unsigned e) {
    IntPoly out{1};
    for (unsigned i = 0; i < e; ++i) out = out * p;
    return out;
}

}  // namespace oracle

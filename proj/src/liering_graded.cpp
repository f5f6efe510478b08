#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "fixfree/cyclotomic.hpp"
#include "fixfree/invariants.hpp"
#include "fixfree/liering.hpp"

namespace fixfree {

// ---- abelian group descriptors ----

AbelianDescriptor AbelianDescriptor::cyclic(std::vector<unsigned> moduli) {
    for (unsigned m : moduli)
        if (m == 0) throw AlgebraError(ErrorKind::InvalidArgument, "cyclic factor of order zero");
    return {Kind::CyclicProduct, std::move(moduli)};
}

AbelianDescriptor AbelianDescriptor::units(unsigned n) {
    if (n < 2) throw AlgebraError(ErrorKind::InvalidArgument, "unit group needs n >= 2");
    return {Kind::UnitsMod, {n}};
}

AbelianDescriptor::Elem AbelianDescriptor::identity() const {
    if (kind == Kind::UnitsMod) return {1};
    return Elem(moduli.size(), 0);
}

AbelianDescriptor::Elem AbelianDescriptor::canonical(Elem a) const {
    if (kind == Kind::UnitsMod) {
        const long n = moduli[0];
        if (a.size() != 1) throw AlgebraError(ErrorKind::DimensionMismatch, "unit residues are single numbers");
        a[0] = ((a[0] % n) + n) % n;
        return a;
    }
    if (a.size() != moduli.size()) throw AlgebraError(ErrorKind::DimensionMismatch, "tuple length differs from the factors");
    for (std::size_t i = 0; i < a.size(); ++i) {
        const long n = moduli[i];
        a[i] = ((a[i] % n) + n) % n;
    }
    return a;
}

AbelianDescriptor::Elem AbelianDescriptor::mul(const Elem& a, const Elem& b) const {
    if (kind == Kind::UnitsMod) return canonical({a.at(0) * b.at(0)});
    Elem c(moduli.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.at(i) + b.at(i);
    return canonical(std::move(c));
}

std::vector<AbelianDescriptor::Elem> AbelianDescriptor::elements() const {
    std::vector<Elem> out;
    if (kind == Kind::UnitsMod) {
        for (long x = 1; x < static_cast<long>(moduli[0]); ++x)
            if (std::gcd(x, static_cast<long>(moduli[0])) == 1) out.push_back({x});
        return out;
    }
    Elem cur(moduli.size(), 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = cur.size();
        while (i > 0) {
            --i;
            if (++cur[i] < static_cast<long>(moduli[i])) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
        if (cur.empty()) return out;
    }
}

std::size_t AbelianDescriptor::order() const {
    if (kind == Kind::UnitsMod) return euler_phi(moduli[0]);
    std::size_t n = 1;
    for (unsigned m : moduli) n *= m;
    return n;
}

std::string AbelianDescriptor::to_string(const Elem& e) const {
    if (kind == Kind::UnitsMod) return std::to_string(e.at(0));
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s + ")";
}

namespace {

// Elements indexed 0..order-1 with a multiplication table; index 0 is the identity.
struct IndexedGroup {
    std::vector<AbelianDescriptor::Elem> elems;
    std::map<AbelianDescriptor::Elem, int> index;
    std::vector<std::vector<int>> mul;

    explicit IndexedGroup(const AbelianDescriptor& g) {
        elems = g.elements();
        auto id = g.identity();
        auto it = std::find(elems.begin(), elems.end(), id);
        std::rotate(elems.begin(), it, it + 1);
        for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
        mul.assign(elems.size(), std::vector<int>(elems.size()));
        for (std::size_t a = 0; a < elems.size(); ++a)
            for (std::size_t b = 0; b < elems.size(); ++b) mul[a][b] = index.at(g.mul(elems[a], elems[b]));
    }
    int of(const AbelianDescriptor& g, const AbelianDescriptor::Elem& e) const {
        auto it = index.find(g.canonical(e));
        if (it == index.end()) throw AlgebraError(ErrorKind::InvalidArgument, "element outside the group");
        return it->second;
    }
};

std::vector<int> subset_products(const IndexedGroup& g, const std::vector<int>& b) {
    std::vector<int> prods(std::size_t(1) << b.size());
    prods[0] = 0;
    for (std::size_t mask = 1; mask < prods.size(); ++mask) {
        std::size_t low = 0;
        while (!(mask >> low & 1)) ++low;
        prods[mask] = g.mul[prods[mask & (mask - 1)]][b[low]];
    }
    return prods;
}

bool growth_indexed(const IndexedGroup& g, const std::vector<int>& b) {
    const std::size_t k = b.size();
    std::vector<unsigned char> in(g.elems.size());
    std::size_t size = 0;
    for (int x : subset_products(g, b))
        if (!in[x]) {
            in[x] = 1;
            ++size;
        }
    if (size >= k + 1) return true;
    for (std::size_t s = 0; s < in.size(); ++s) {
        if (!in[s]) continue;
        for (int c : b) {
            int cur = static_cast<int>(s);
            bool all = true;
            for (std::size_t j = 1; j <= k && all; ++j) {
                cur = g.mul[cur][c];
                all = in[cur];
            }
            if (all) return true;
        }
    }
    return false;
}

bool escape_indexed(const IndexedGroup& g, const std::vector<unsigned char>& in_x, int a, const std::vector<int>& b) {
    const auto prods = subset_products(g, b);
    for (std::size_t mask = 1; mask < prods.size(); ++mask)
        if (!in_x[g.mul[a][prods[mask]]]) return true;
    return false;
}

bool af_indexed(const IndexedGroup& g, const std::vector<int>& x, const std::vector<unsigned char>& in_x) {
    for (int l : x)
        for (int m : x) {
            int cur = l;
            bool all = true;
            for (std::size_t j = 1; j <= x.size() && all; ++j) {
                cur = g.mul[cur][m];
                all = in_x[cur];
            }
            if (all) return false;
        }
    return true;
}

// Calls f on every nondecreasing index sequence of length k drawn from pool.
template <class F>
void multisets(const std::vector<int>& pool, std::size_t k, F&& f) {
    if (pool.empty() && k > 0) return;
    std::vector<std::size_t> idx(k, 0);
    std::vector<int> cur(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i) cur[i] = pool[idx[i]];
        f(cur);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] + 1 == pool.size()) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[i - 1];
    }
}

}  // namespace

AfCheck af_subset_check(const AbelianDescriptor& group, const std::vector<AbelianDescriptor::Elem>& x0) {
    std::vector<AbelianDescriptor::Elem> x;
    for (const auto& e : x0) x.push_back(group.canonical(e));
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    AfCheck out;
    for (const auto& l : x)
        for (const auto& m : x) {
            auto cur = l;
            bool all = true;
            for (std::size_t j = 1; j <= x.size() && all; ++j) {
                cur = group.mul(cur, m);
                all = std::binary_search(x.begin(), x.end(), cur);
            }
            if (all) {
                out.witness = std::make_pair(l, m);
                return out;
            }
        }
    out.af = true;
    return out;
}

// ---- label supports and graded rings ----

LabelSupport LabelSupport::concrete(const AbelianDescriptor& g, std::vector<AbelianDescriptor::Elem> values) {
    LabelSupport s;
    s.group = g;
    for (auto& v : values) {
        v = g.canonical(v);
        s.names.push_back(g.to_string(v));
    }
    s.values = std::move(values);
    return s;
}

LabelSupport LabelSupport::formal(std::vector<std::string> names,
                                  std::vector<std::vector<std::optional<std::size_t>>> table) {
    LabelSupport s;
    s.names = std::move(names);
    s.table = std::move(table);
    for (const auto& row : s.table)
        for (const auto& e : row)
            if (e && *e >= s.names.size()) throw AlgebraError(ErrorKind::InvalidArgument, "product table entry out of range");
    return s;
}

std::optional<std::size_t> LabelSupport::product(std::size_t a, std::size_t b) const {
    if (group) {
        auto p = group->mul(values.at(a), values.at(b));
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] == p) return i;
        return std::nullopt;
    }
    if (a < table.size() && b < table[a].size() && table[a][b]) return table[a][b];
    if (b < table.size() && a < table[b].size()) return table[b][a];
    return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> LabelSupport::progression() const {
    const std::size_t n = size();
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t m = 0; m < n; ++m) {
            std::optional<std::size_t> cur = l;
            for (std::size_t j = 1; j <= n && cur; ++j) cur = product(*cur, m);
            if (cur) return std::make_pair(l, m);
        }
    return std::nullopt;
}

bool GradedLieRing::grading_holds() const {
    const std::size_t n = ring->rank();
    if (labels.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec b = ring->basis_bracket(i, j);
            if (is_zero_vec(b)) continue;
            const auto p = support.product(labels[i], labels[j]);
            if (!p) return false;
            for (std::size_t k = 0; k < n; ++k)
                if (b[k] != 0 && labels[k] != *p) return false;
        }
    return true;
}

ClassBoundVerdict graded_class_bound_check(const GradedLieRing& k) {
    if (auto w = k.support.progression())
        throw AlgebraError(ErrorKind::SupportNotAF, "support contains a progression starting at " +
                                                        k.support.names[w->first] + " with ratio " + k.support.names[w->second]);
    if (!k.grading_holds()) throw AlgebraError(ErrorKind::HypothesisViolated, "labels do not form a grading");
    const std::size_t x = k.support.size();
    if (x > 16) throw AlgebraError(ErrorKind::BoundExceeded, "support too large for the exact bound");
    ClassBoundVerdict v;
    v.support_size = x;
    mpz_ui_pow_ui(v.derived_bound.get_mpz_t(), 2, x);
    mpz_ui_pow_ui(v.class_bound.get_mpz_t(), x, 1UL << x);
    v.klass = class_lie(*k.ring);
    v.derived_length = derived_length_lie(*k.ring);
    v.pass = v.klass && v.derived_length && Int(static_cast<unsigned long>(*v.klass)) <= v.class_bound &&
             Int(static_cast<unsigned long>(*v.derived_length)) <= v.derived_bound;
    return v;
}

// ---- eigenspaces over prime fields ----

namespace {

std::vector<Vec> kernel(const CoeffRing& ring, const RatMatrix& m) {
    const std::size_t n = m.cols();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Vec r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = m(i, j);
        rows.push_back(std::move(r));
    }
    Submodule s = Submodule::span(ring, n, rows);
    std::vector<std::size_t> pivot_of(n, n);
    std::vector<unsigned char> is_pivot(n);
    for (std::size_t r = 0; r < s.rows().size(); ++r) {
        std::size_t c = 0;
        while (s.rows()[r][c] == 0) ++c;
        is_pivot[c] = 1;
        pivot_of[c] = r;
    }
    std::vector<Vec> out;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Vec v(n, Rat(0));
        v[f] = 1;
        for (std::size_t c = 0; c < n; ++c)
            if (is_pivot[c]) v[c] = ring.normalize(-s.rows()[pivot_of[c]][f]);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

EigenspaceGrading eigenspace_grading(const LieEndo& gamma, const IntPoly& r) {
    const LieRing& l = *gamma.ring();
    const CoeffRing& ring = l.ring();
    if (ring.kind != RingKind::Zmod || !is_prime(ring.modulus))
        throw AlgebraError(ErrorKind::UnsupportedRing, "eigenspace gradings need a prime field");
    const long p = static_cast<long>(ring.modulus);
    if (!lie_evaluate(r, gamma).is_zero()) throw AlgebraError(ErrorKind::IdentityFails, "r(gamma) is not zero");

    std::vector<Int> red;
    for (const auto& c : r.coeffs()) {
        Int x;
        mpz_fdiv_r_ui(x.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
        red.push_back(x);
    }
    const IntPoly rp(std::move(red));
    if (rp.is_constant()) throw AlgebraError(ErrorKind::DoesNotSplit, "r is constant modulo p");
    std::vector<long> roots;
    for (long x = 0; x < p; ++x) {
        Int v = rp.eval(Int(x));
        if (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p))) roots.push_back(x);
    }
    if (roots.size() != rp.deg()) throw AlgebraError(ErrorKind::DoesNotSplit, "r is not a product of distinct linear factors modulo p");

    const std::size_t n = l.rank();
    std::vector<Vec> basis;
    std::vector<std::size_t> label_of;
    std::vector<long> support_roots;
    for (long lam : roots) {
        if (lam == 0) continue;
        support_roots.push_back(lam);
    }
    for (long lam : roots) {
        RatMatrix shifted = gamma.matrix();
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lam;
        RatMatrix pw = RatMatrix::identity(n);
        for (std::size_t i = 0; i < std::max<std::size_t>(n, 1); ++i) pw = normalize(ring, pw * shifted);
        auto ker = kernel(ring, pw);
        if (ker.empty()) continue;
        if (lam == 0) throw AlgebraError(ErrorKind::HypothesisViolated, "gamma has a nonzero kernel");
        const std::size_t idx = static_cast<std::size_t>(
            std::find(support_roots.begin(), support_roots.end(), lam) - support_roots.begin());
        for (auto& v : ker) {
            basis.push_back(std::move(v));
            label_of.push_back(idx);
        }
    }
    if (basis.size() != n) throw AlgebraError(ErrorKind::IdentityFails, "eigenspaces do not span");

    std::vector<BracketEntry> br;
    std::vector<std::string> names;
    std::map<std::size_t, std::size_t> counter;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back("E" + std::to_string(support_roots[label_of[i]]) + "_" + std::to_string(++counter[label_of[i]]));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto x = solve_in_span(ring, basis, l.bracket(basis[i], basis[j]));
            BracketEntry e{i, j, {}};
            for (std::size_t k = 0; k < n; ++k)
                if ((*x)[k] != 0) e.terms.emplace_back(k, (*x)[k]);
            if (!e.terms.empty()) br.push_back(std::move(e));
        }
    auto graded_ring = std::make_shared<LieRing>(ring, n, br, names);
    RatMatrix change(n, n), endo(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) change(i, j) = basis[j][i];
        auto x = solve_in_span(ring, basis, gamma(basis[j]));
        for (std::size_t i = 0; i < n; ++i) endo(i, j) = (*x)[i];
    }

    std::vector<AbelianDescriptor::Elem> values;
    for (long lam : support_roots) values.push_back({lam});
    GradedLieRing graded{graded_ring, LabelSupport::concrete(AbelianDescriptor::units(static_cast<unsigned>(p)), values),
                         label_of};
    EigenspaceGrading out{graded, LieEndo(graded_ring, endo), change, roots};
    out.grading_verified = graded.grading_holds();
    out.nonroot_brackets_vanish = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!graded.support.product(label_of[i], label_of[j]) && !is_zero_vec(graded_ring->basis_bracket(i, j)))
                out.nonroot_brackets_vanish = false;
    const Int ps = prod_star(r);
    const Int strong = r.leading() * discr_star(r) * ps;
    out.strong_condition = !mpz_divisible_ui_p(strong.get_mpz_t(), static_cast<unsigned long>(p));
    out.weak_condition = !mpz_divisible_ui_p(ps.get_mpz_t(), static_cast<unsigned long>(p));
    return out;
}

bool binomial_commutator_check(const LieEndo& gamma, const Rat& lambda0, const Rat& mu0, const Vec& v, const Vec& w,
                               unsigned m) {
    if (m > 8) throw AlgebraError(ErrorKind::InvalidArgument, "m is limited to 8");
    const LieRing& l = *gamma.ring();
    const CoeffRing& ring = l.ring();
    const Rat lambda = ring.normalize(lambda0), mu = ring.normalize(mu0), lm = ring.normalize(lambda * mu);
    auto minus = [&](const Vec& x, const Rat& c) {
        Vec y = gamma(x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] -= c * x[i];
        return normalize(ring, std::move(y));
    };
    Vec lhs = l.bracket(v, w);
    for (unsigned i = 0; i < m; ++i) lhs = minus(lhs, lm);

    Vec rhs = l.zero();
    Vec a = normalize(ring, v);  // (gamma - lambda)^i v
    for (unsigned i = 0; i <= m; ++i) {
        Vec b = normalize(ring, w);
        for (unsigned j = 0; j < m - i; ++j) b = minus(b, mu);
        for (unsigned j = 0; j < i; ++j) b = gamma(b);
        Int binom;
        mpz_bin_uiui(binom.get_mpz_t(), m, i);
        Rat coef = Rat(binom);
        for (unsigned j = 0; j < m - i; ++j) coef *= lambda;
        Vec term = l.bracket(a, b);
        for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] += coef * term[k];
        a = minus(a, lambda);
    }
    return normalize(ring, lhs) == normalize(ring, rhs);
}

// ---- associated graded Lie ring of a p-group ----

namespace {

struct FactorBasis {
    std::vector<Element> reps;
    unsigned exponent = 0;              // q = p^e, the exponent of the factor
    std::vector<long> coset;            // coset id per element of the upper term, -1 elsewhere
    std::vector<std::vector<long>> coords;  // per coset id
};

unsigned order_modulo(const FiniteGroup& g, Element x, const Subgroup& s) {
    unsigned t = 1;
    Element y = x;
    while (!contains(s, y)) {
        y = g.mul(y, x);
        ++t;
    }
    return t;
}

FactorBasis factor_basis(const FiniteGroup& g, const Subgroup& upper, const Subgroup& lower) {
    FactorBasis fb;
    unsigned q = 1;
    for (Element x : upper) q = std::max(q, order_modulo(g, x, lower));
    fb.exponent = q;
    Subgroup span = lower;
    for (Element x : upper) {
        if (span.size() == upper.size()) break;
        if (order_modulo(g, x, span) != q) continue;
        fb.reps.push_back(x);
        std::vector<Element> gens(span.begin(), span.end());
        gens.push_back(x);
        span = generate_subgroup(g, gens);
    }
    std::size_t expected = lower.size();
    for (std::size_t i = 0; i < fb.reps.size(); ++i) expected *= q;
    if (span.size() != upper.size() || expected != upper.size())
        throw AlgebraError(ErrorKind::FactorsNotHomocyclic, "a lower central factor is not homocyclic");
    fb.coset.assign(g.order(), -1);
    long next = 0;
    for (Element x : upper) {
        if (fb.coset[x] >= 0) continue;
        for (Element l : lower) fb.coset[g.mul(x, l)] = next;
        ++next;
    }
    fb.coords.resize(static_cast<std::size_t>(next));
    const std::size_t k = fb.reps.size();
    std::vector<long> c(k, 0);
    while (true) {
        Element e = g.identity();
        for (std::size_t j = 0; j < k; ++j) e = g.mul(e, power(g, fb.reps[j], Int(c[j])));
        fb.coords[fb.coset[e]] = c;
        std::size_t j = 0;
        while (j < k && ++c[j] == static_cast<long>(q)) c[j++] = 0;
        if (j == k) break;
    }
    return fb;
}

}  // namespace

AssociatedGraded associated_graded_lie_ring(const GroupPtr& gp, const GroupMap& gamma) {
    const FiniteGroup& g = *gp;
    const auto primes = prime_factors(g.order());
    if (primes.size() != 1) throw AlgebraError(ErrorKind::NotPGroup, "group order is not a prime power");
    const auto lcs = lower_central_series(g);
    std::vector<FactorBasis> factors;
    for (std::size_t i = 0; i + 1 < lcs.size(); ++i) factors.push_back(factor_basis(g, lcs[i], lcs[i + 1]));
    const unsigned q = factors.front().exponent;
    for (const auto& f : factors)
        if (f.exponent != q) throw AlgebraError(ErrorKind::FactorsNotHomocyclic, "lower central factors have different exponents");

    AssociatedGraded out{nullptr, LieEndo(std::make_shared<LieRing>(CoeffRing::zmod(q), 0, std::vector<BracketEntry>{}),
                                          RatMatrix(0, 0)),
                         {}, static_cast<unsigned>(primes[0]), 0, {}};
    for (unsigned x = q; x > 1; x /= out.prime) ++out.exponent;
    std::vector<std::size_t> offset;
    std::size_t n = 0;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        offset.push_back(n);
        for (std::size_t j = 0; j < factors[i].reps.size(); ++j) {
            out.representatives.push_back(factors[i].reps[j]);
            out.degree.push_back(i + 1);
            labels.push_back("g" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
        }
        n += factors[i].reps.size();
    }
    // Coordinates of an element of Gamma_w modulo Gamma_{w+1}, placed in the global basis.
    auto coords_in = [&](std::size_t w, Element x) {
        std::vector<std::pair<std::size_t, Rat>> terms;
        if (w > factors.size()) return terms;
        const auto& f = factors[w - 1];
        const auto& c = f.coords.at(static_cast<std::size_t>(f.coset.at(x)));
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j]) terms.emplace_back(offset[w - 1] + j, Rat(c[j]));
        return terms;
    };
    std::vector<BracketEntry> br;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            const std::size_t w = out.degree[a] + out.degree[b];
            if (w > factors.size()) continue;
            auto terms = coords_in(w, g.commutator(out.representatives[a], out.representatives[b]));
            if (!terms.empty()) br.push_back({a, b, std::move(terms)});
        }
    out.ring = std::make_shared<LieRing>(CoeffRing::zmod(q), n, br, labels);
    RatMatrix m(n, n);
    for (std::size_t b = 0; b < n; ++b)
        for (const auto& [a, c] : coords_in(out.degree[b], gamma(out.representatives[b]))) m(a, b) = c;
    out.endo = LieEndo(out.ring, m);
    return out;
}

bool identity_vanishes(const AssociatedGraded& a, const IntPoly& r) { return lie_evaluate(r, a.endo).is_zero(); }

// ---- combinatorial lemmas ----

std::vector<AbelianDescriptor::Elem> partial_products(const AbelianDescriptor& g,
                                                      const std::vector<AbelianDescriptor::Elem>& b) {
    IndexedGroup ig(g);
    std::vector<int> bi;
    for (const auto& e : b) bi.push_back(ig.of(g, e));
    auto prods = subset_products(ig, bi);
    std::sort(prods.begin(), prods.end());
    prods.erase(std::unique(prods.begin(), prods.end()), prods.end());
    std::vector<AbelianDescriptor::Elem> out;
    for (int x : prods) out.push_back(ig.elems[x]);
    return out;
}

bool growth_or_progression_holds(const AbelianDescriptor& g, const std::vector<AbelianDescriptor::Elem>& b) {
    IndexedGroup ig(g);
    std::vector<int> bi;
    for (const auto& e : b) bi.push_back(ig.of(g, e));
    return growth_indexed(ig, bi);
}

bool escape_holds(const AbelianDescriptor& g, const std::vector<AbelianDescriptor::Elem>& x,
                  const AbelianDescriptor::Elem& a, const std::vector<AbelianDescriptor::Elem>& b) {
    IndexedGroup ig(g);
    std::vector<unsigned char> in_x(ig.elems.size());
    for (const auto& e : x) in_x[ig.of(g, e)] = 1;
    std::vector<int> bi;
    for (const auto& e : b) bi.push_back(ig.of(g, e));
    return escape_indexed(ig, in_x, ig.of(g, a), bi);
}

LemmaStats growth_or_progression_exhaustive(const AbelianDescriptor& g, std::size_t k_max) {
    IndexedGroup ig(g);
    std::vector<int> pool;
    for (int i = 1; i < static_cast<int>(ig.elems.size()); ++i) pool.push_back(i);
    LemmaStats st;
    for (std::size_t k = 1; k <= k_max; ++k)
        multisets(pool, k, [&](const std::vector<int>& b) {
            ++st.cases;
            if (!growth_indexed(ig, b)) ++st.failures;
        });
    return st;
}

LemmaStats escape_exhaustive(const AbelianDescriptor& g, std::size_t x_max) {
    IndexedGroup ig(g);
    const int n = static_cast<int>(ig.elems.size());
    LemmaStats st;
    std::vector<unsigned char> in_x(ig.elems.size());
    std::vector<int> x;
    // Subsets in lexicographic order by recursion on the next element.
    std::function<void(int)> rec = [&](int start) {
        if (!x.empty() && af_indexed(ig, x, in_x)) {
            for (int a : x)
                multisets(x, x.size(), [&](const std::vector<int>& b) {
                    ++st.cases;
                    if (!escape_indexed(ig, in_x, a, b)) ++st.failures;
                });
        }
        if (x.size() == x_max) return;
        for (int e = start; e < n; ++e) {
            x.push_back(e);
            in_x[e] = 1;
            rec(e + 1);
            in_x[e] = 0;
            x.pop_back();
        }
    };
    rec(0);
    return st;
}

}  // namespace fixfree

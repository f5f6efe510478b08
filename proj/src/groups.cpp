#include "fixfree/groups.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>

namespace fixfree {

const char* family_name(GroupFamily f) {
    switch (f) {
        case GroupFamily::Abelian: return "abelian";
        case GroupFamily::Heisenberg: return "heisenberg";
        case GroupFamily::TwistedHeisenberg: return "twisted-heisenberg";
        case GroupFamily::Bch: return "bch";
        case GroupFamily::Dihedral: return "dihedral";
        case GroupFamily::Symmetric: return "symmetric";
        case GroupFamily::Alternating: return "alternating";
        case GroupFamily::Metacyclic: return "metacyclic";
        case GroupFamily::Cayley: return "cayley";
    }
    return "unknown";
}

namespace {

constexpr std::size_t kExhaustiveLimit = 512;
constexpr std::size_t kSamples = 200000;

unsigned mod(long long v, unsigned m) {
    long long r = v % static_cast<long long>(m);
    return static_cast<unsigned>(r < 0 ? r + m : r);
}

std::size_t radix_product(const std::vector<unsigned>& radix) {
    std::size_t n = 1;
    for (unsigned r : radix) {
        if (r == 0) throw AlgebraError(ErrorKind::InvalidGroup, "zero modulus");
        n *= r;
        if (n > FiniteGroup::kMaxOrder) throw AlgebraError(ErrorKind::BoundExceeded, "group order too large");
    }
    return n;
}

std::vector<std::vector<unsigned>> permutations_of(unsigned n, bool even_only) {
    std::vector<unsigned> p(n);
    std::iota(p.begin(), p.end(), 0u);
    std::vector<std::vector<unsigned>> out;
    do {
        if (even_only) {
            unsigned inversions = 0;
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = i + 1; j < n; ++j)
                    if (p[i] > p[j]) ++inversions;
            if (inversions % 2) continue;
        }
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

GroupPtr permutation_group(const std::vector<std::vector<unsigned>>& perms, std::string name) {
    const std::size_t n = perms.size();
    std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
    auto index_of = [&](const std::vector<unsigned>& p) {
        return static_cast<Element>(std::lower_bound(perms.begin(), perms.end(), p) - perms.begin());
    };
    std::vector<unsigned> c(perms.empty() ? 0 : perms[0].size());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            // (a*b)(i) = a(b(i)): apply b first.
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = perms[a][perms[b][i]];
            table[a][b] = index_of(c);
        }
    return FiniteGroup::from_table(table, std::move(name));
}

}  // namespace

void FiniteGroup::finish() {
    const std::size_t n = n_;
    for (std::size_t a = 0; a < n; ++a) {
        if (mul(0, a) != a || mul(a, 0) != a) throw AlgebraError(ErrorKind::InvalidGroup, "element 0 is not the identity");
    }
    // Latin square check: every row and column is a permutation.
    std::vector<unsigned char> seen(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t b = 0; b < n; ++b) {
            Element c = mul(a, b);
            if (c >= n || seen[c]) throw AlgebraError(ErrorKind::InvalidGroup, "table row is not a permutation");
            seen[c] = 1;
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t b = 0; b < n; ++b) {
            Element c = mul(b, a);
            if (seen[c]) throw AlgebraError(ErrorKind::InvalidGroup, "table column is not a permutation");
            seen[c] = 1;
        }
    }
    if (n <= kExhaustiveLimit) {
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b) {
                const Element ab = mul(a, b);
                for (Element c = 0; c < n; ++c)
                    if (mul(ab, c) != mul(a, mul(b, c)))
                        throw AlgebraError(ErrorKind::InvalidGroup, "multiplication is not associative");
            }
    } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
        for (std::size_t s = 0; s < kSamples; ++s) {
            Element a = pick(rng), b = pick(rng), c = pick(rng);
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                throw AlgebraError(ErrorKind::InvalidGroup, "multiplication is not associative");
        }
    }
    inverse_.assign(n, 0);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (mul(a, b) == 0) {
                inverse_[a] = b;
                break;
            }
    orders_.assign(n, 1);
    for (Element a = 0; a < n; ++a) {
        Element x = a;
        unsigned k = 1;
        while (x != 0) {
            x = mul(x, a);
            ++k;
        }
        orders_[a] = k;
    }
}

GroupPtr FiniteGroup::from_law(std::string name, GroupFamily family, std::vector<unsigned> radix,
                               const std::function<Element(Element, Element)>& law) {
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->n_ = radix_product(radix);
    g->name_ = std::move(name);
    g->family_ = family;
    g->radix_ = std::move(radix);
    g->table_.resize(g->n_ * g->n_);
    for (Element a = 0; a < g->n_; ++a)
        for (Element b = 0; b < g->n_; ++b) {
            Element c = law(a, b);
            if (c >= g->n_) throw AlgebraError(ErrorKind::InvalidGroup, "law leaves the element set");
            g->table_[static_cast<std::size_t>(a) * g->n_ + b] = c;
        }
    g->finish();
    return g;
}

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<Element>>& table, std::string name) {
    const std::size_t n = table.size();
    if (n == 0) throw AlgebraError(ErrorKind::InvalidGroup, "empty Cayley table");
    if (n > kMaxOrder) throw AlgebraError(ErrorKind::BoundExceeded, "Cayley table too large");
    for (const auto& row : table)
        if (row.size() != n) throw AlgebraError(ErrorKind::InvalidGroup, "Cayley table is not square");
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->n_ = n;
    g->name_ = std::move(name);
    g->family_ = GroupFamily::Cayley;
    g->radix_ = {static_cast<unsigned>(n)};
    g->table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (table[a][b] >= n) throw AlgebraError(ErrorKind::InvalidGroup, "table entry out of range");
            g->table_[a * n + b] = table[a][b];
        }
    g->finish();
    return g;
}

std::vector<unsigned> FiniteGroup::decode(Element e) const {
    std::vector<unsigned> t(radix_.size());
    for (std::size_t i = radix_.size(); i-- > 0;) {
        t[i] = e % radix_[i];
        e /= radix_[i];
    }
    return t;
}

Element FiniteGroup::encode(const std::vector<unsigned>& tuple) const {
    if (tuple.size() != radix_.size()) throw AlgebraError(ErrorKind::InvalidArgument, "tuple length mismatch");
    Element e = 0;
    for (std::size_t i = 0; i < radix_.size(); ++i) e = e * radix_[i] + (tuple[i] % radix_[i]);
    return e;
}

bool FiniteGroup::is_abelian() const {
    for (Element a = 0; a < n_; ++a)
        for (Element b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::vector<std::vector<Element>> FiniteGroup::cayley_table() const {
    std::vector<std::vector<Element>> t(n_, std::vector<Element>(n_));
    for (Element a = 0; a < n_; ++a)
        for (Element b = 0; b < n_; ++b) t[a][b] = mul(a, b);
    return t;
}

GroupPtr FiniteGroup::abelian(std::vector<unsigned> moduli) {
    std::string name = "Z";
    if (moduli.empty()) name = "trivial";
    for (std::size_t i = 0; i < moduli.size(); ++i) name += (i ? "x" : "") + std::to_string(moduli[i]);
    if (moduli.empty()) {
        return from_law(name, GroupFamily::Abelian, {}, [](Element, Element) { return Element(0); });
    }
    auto probe = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    probe->radix_ = moduli;
    radix_product(moduli);
    return from_law(name, GroupFamily::Abelian, moduli, [probe, &moduli](Element a, Element b) {
        auto x = probe->decode(a), y = probe->decode(b);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % moduli[i];
        return probe->encode(x);
    });
}

GroupPtr FiniteGroup::heisenberg(unsigned m) {
    if (m < 2) throw AlgebraError(ErrorKind::InvalidGroup, "Heisenberg modulus must be at least 2");
    return from_law("H" + std::to_string(m), GroupFamily::Heisenberg, {m, m, m}, [m](Element a, Element b) {
        unsigned x = a / (m * m), y = (a / m) % m, z = a % m;
        unsigned X = b / (m * m), Y = (b / m) % m, Z = b % m;
        unsigned nx = (x + X) % m, ny = (y + Y) % m;
        unsigned nz = mod(static_cast<long long>(z) + Z + static_cast<long long>(x) * Y, m);
        return static_cast<Element>((nx * m + ny) * m + nz);
    });
}

GroupPtr FiniteGroup::twisted_heisenberg(unsigned m) {
    if (m < 3 || m % 2 == 0) throw AlgebraError(ErrorKind::EvenModulus, "twisted Heisenberg needs an odd modulus");
    return from_law("N" + std::to_string(m), GroupFamily::TwistedHeisenberg, {m, m, m}, [m](Element a, Element b) {
        unsigned x = a / (m * m), y = (a / m) % m, z = a % m;
        unsigned X = b / (m * m), Y = (b / m) % m, Z = b % m;
        unsigned nx = (x + X) % m, ny = (y + Y) % m;
        unsigned nz = mod(static_cast<long long>(z) + Z + 2LL * x * Y, m);
        return static_cast<Element>((nx * m + ny) * m + nz);
    });
}

GroupPtr FiniteGroup::dihedral(unsigned n) {
    if (n < 2) throw AlgebraError(ErrorKind::InvalidGroup, "dihedral index must be at least 2");
    // (j, i) stands for r^i s^j.
    return from_law("D" + std::to_string(2 * n), GroupFamily::Dihedral, {2, n}, [n](Element a, Element b) {
        unsigned j = a / n, i = a % n, l = b / n, k = b % n;
        unsigned ni = mod(static_cast<long long>(i) + (j ? -static_cast<long long>(k) : k), n);
        return static_cast<Element>(((j + l) % 2) * n + ni);
    });
}

GroupPtr FiniteGroup::symmetric(unsigned n) {
    if (n < 1 || n > 6) throw AlgebraError(ErrorKind::InvalidGroup, "symmetric groups are supported for n <= 6");
    auto g = permutation_group(permutations_of(n, false), "S" + std::to_string(n));
    auto h = std::shared_ptr<FiniteGroup>(new FiniteGroup(*g));
    h->family_ = GroupFamily::Symmetric;
    return h;
}

GroupPtr FiniteGroup::alternating(unsigned n) {
    if (n < 1 || n > 6) throw AlgebraError(ErrorKind::InvalidGroup, "alternating groups are supported for n <= 6");
    auto g = permutation_group(permutations_of(n, true), "A" + std::to_string(n));
    auto h = std::shared_ptr<FiniteGroup>(new FiniteGroup(*g));
    h->family_ = GroupFamily::Alternating;
    return h;
}

GroupPtr FiniteGroup::metacyclic(unsigned p, unsigned q) {
    if (p < 2 || q < 2 || (p - 1) % q != 0)
        throw AlgebraError(ErrorKind::InvalidGroup, "metacyclic group needs q | p - 1");
    unsigned u = 0;
    for (unsigned c = 2; c < p && !u; ++c) {
        unsigned x = 1, k = 0;
        do {
            x = x * c % p;
            ++k;
        } while (x != 1 && k <= p);
        if (x == 1 && k == q) u = c;
    }
    if (!u) throw AlgebraError(ErrorKind::InvalidGroup, "no unit of the requested order");
    std::vector<unsigned> upow(q);
    upow[0] = 1;
    for (unsigned j = 1; j < q; ++j) upow[j] = upow[j - 1] * u % p;
    // (j, i) stands for a^i b^j with b a b^{-1} = a^u.
    return from_law("M" + std::to_string(p) + "_" + std::to_string(q), GroupFamily::Metacyclic, {q, p},
                    [p, q, upow](Element a, Element b) {
                        unsigned j = a / p, i = a % p, l = b / p, k = b % p;
                        unsigned ni = (i + upow[j] * k) % p;
                        return static_cast<Element>(((j + l) % q) * p + ni);
                    });
}

GroupPtr relabel(const GroupPtr& g, const std::vector<Element>& perm) {
    const std::size_t n = g->order();
    if (perm.size() != n || perm[0] != 0) throw AlgebraError(ErrorKind::InvalidArgument, "relabeling must fix 0");
    std::vector<Element> inv(n);
    for (Element i = 0; i < n; ++i) inv[perm[i]] = i;
    std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) t[perm[a]][perm[b]] = perm[g->mul(a, b)];
    return FiniteGroup::from_table(t, g->name() + "'");
}

// ---- maps ----

GroupMap::GroupMap(GroupPtr domain, std::vector<Element> images) : domain_(std::move(domain)), images_(std::move(images)) {
    const FiniteGroup& g = *domain_;
    const std::size_t n = g.order();
    if (images_.size() != n) throw AlgebraError(ErrorKind::NotHomomorphism, "image array has the wrong length");
    for (Element x : images_)
        if (x >= n) throw AlgebraError(ErrorKind::NotHomomorphism, "image out of range");
    if (n <= kExhaustiveLimit) {
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b)
                if (images_[g.mul(a, b)] != g.mul(images_[a], images_[b]))
                    throw AlgebraError(ErrorKind::NotHomomorphism, "map does not respect multiplication");
    } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
        for (std::size_t s = 0; s < kSamples; ++s) {
            Element a = pick(rng), b = pick(rng);
            if (images_[g.mul(a, b)] != g.mul(images_[a], images_[b]))
                throw AlgebraError(ErrorKind::NotHomomorphism, "map does not respect multiplication");
        }
    }
}

GroupMap GroupMap::unchecked(GroupPtr domain, std::vector<Element> images) {
    GroupMap m;
    m.domain_ = std::move(domain);
    m.images_ = std::move(images);
    return m;
}

GroupMap GroupMap::identity(const GroupPtr& g) {
    std::vector<Element> im(g->order());
    std::iota(im.begin(), im.end(), Element(0));
    return GroupMap(g, std::move(im));
}

GroupMap GroupMap::from_function(const GroupPtr& g, const std::function<Element(Element)>& f) {
    std::vector<Element> im(g->order());
    for (Element x = 0; x < g->order(); ++x) im[x] = f(x);
    return GroupMap(g, std::move(im));
}

GroupMap GroupMap::linear(const GroupPtr& g, const IntMatrix& m) {
    const auto& radix = g->radix();
    if (g->family() != GroupFamily::Abelian) throw AlgebraError(ErrorKind::InvalidArgument, "linear maps need an abelian tuple group");
    if (m.rows() != radix.size() || m.cols() != radix.size())
        throw AlgebraError(ErrorKind::DimensionMismatch, "matrix size must match the number of factors");
    return from_function(g, [&](Element e) {
        auto v = g->decode(e);
        std::vector<unsigned> w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            Int acc = 0;
            for (std::size_t j = 0; j < v.size(); ++j) acc += m(i, j) * v[j];
            w[i] = static_cast<unsigned>(mpz_fdiv_ui(acc.get_mpz_t(), radix[i]));
        }
        return g->encode(w);
    });
}

bool GroupMap::is_automorphism() const {
    std::vector<unsigned char> seen(images_.size());
    for (Element x : images_) {
        if (seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

GroupMap GroupMap::then(const GroupMap& other) const {
    std::vector<Element> im(images_.size());
    for (std::size_t x = 0; x < im.size(); ++x) im[x] = other.images_[images_[x]];
    return GroupMap(domain_, std::move(im));
}

GroupMap GroupMap::inverse() const {
    if (!is_automorphism()) throw AlgebraError(ErrorKind::NotAutomorphism, "map is not bijective");
    std::vector<Element> im(images_.size());
    for (Element x = 0; x < im.size(); ++x) im[images_[x]] = x;
    return GroupMap(domain_, std::move(im));
}

GroupMap heisenberg_golden_automorphism(const GroupPtr& g) {
    if (g->family() != GroupFamily::Heisenberg) throw AlgebraError(ErrorKind::InvalidArgument, "needs a Heisenberg group");
    const unsigned m = g->radix()[0];
    if (m % 2 == 0) throw AlgebraError(ErrorKind::EvenModulus, "the golden automorphism needs an odd modulus");
    return GroupMap::from_function(g, [&](Element e) {
        auto v = g->decode(e);
        long long x = v[0], y = v[1], z = v[2];
        long long nz = x * y + y * (y - 1) / 2 - z;
        return g->encode({mod(y, m), mod(x + y, m), mod(nz, m)});
    });
}

GroupMap twisted_golden_automorphism(const GroupPtr& g) {
    if (g->family() != GroupFamily::TwistedHeisenberg)
        throw AlgebraError(ErrorKind::InvalidArgument, "needs a twisted Heisenberg group");
    const unsigned m = g->radix()[0];
    return GroupMap::from_function(g, [&](Element e) {
        auto v = g->decode(e);
        long long x = v[0], y = v[1], z = v[2];
        return g->encode({mod(y, m), mod(x + y, m), mod(2 * x * y + y * y - z, m)});
    });
}

GroupMap power_map(const GroupPtr& g, long k) {
    return GroupMap::from_function(g, [&](Element x) { return power(*g, x, Int(k)); });
}

// ---- identities ----

IntPoly IdentityDecomposition::sum() const {
    IntPoly s;
    for (const auto& p : parts) s += p;
    return s;
}

IdentityDecomposition monotone(const IntPoly& r) { return IdentityDecomposition{{r}}; }

IdentityDecomposition descending_monomials(const IntPoly& r) {
    IdentityDecomposition d;
    for (std::size_t i = r.size(); i-- > 0;)
        if (r.coeff(i) != 0) d.parts.push_back(IntPoly::monomial(r.coeff(i), i));
    return d;
}

Word word_of(const IdentityDecomposition& deco) {
    Word w;
    for (const auto& p : deco.parts)
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p.coeff(i) != 0) w.push_back({i, p.coeff(i)});
    return w;
}

IdentityDecomposition decomposition_of(const Word& w) {
    IdentityDecomposition d;
    for (const auto& term : w) d.parts.push_back(IntPoly::monomial(term.coeff, term.exponent));
    return d;
}

Element power(const FiniteGroup& g, Element x, const Int& n) {
    const unsigned ord = g.element_order(x);
    unsigned long e = mpz_fdiv_ui(n.get_mpz_t(), ord);
    Element acc = g.identity(), base = x;
    while (e) {
        if (e & 1) acc = g.mul(acc, base);
        e >>= 1;
        if (e) base = g.mul(base, base);
    }
    return acc;
}

Element evaluate_monotone(const FiniteGroup& g, const GroupMap& gamma, const IntPoly& r, Element x) {
    // gamma^i(x^{a_i}) = (gamma^i x)^{a_i} because gamma^i is a homomorphism.
    Element acc = g.identity(), z = x;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r.coeff(i) != 0) acc = g.mul(acc, power(g, z, r.coeff(i)));
        if (i + 1 < r.size()) z = gamma(z);
    }
    return acc;
}

Element evaluate_decomposed(const FiniteGroup& g, const GroupMap& gamma, const IdentityDecomposition& deco, Element x) {
    Element acc = g.identity();
    for (const auto& part : deco.parts) acc = g.mul(acc, evaluate_monotone(g, gamma, part, x));
    return acc;
}

Element evaluate_word(const FiniteGroup& g, const GroupMap& gamma, const Word& w, Element x) {
    std::size_t top = 0;
    for (const auto& t : w) top = std::max(top, t.exponent);
    std::vector<Element> orbit(top + 1);
    orbit[0] = x;
    for (std::size_t i = 1; i <= top; ++i) orbit[i] = gamma(orbit[i - 1]);
    Element acc = g.identity();
    for (const auto& t : w) acc = g.mul(acc, power(g, orbit[t.exponent], t.coeff));
    return acc;
}

bool is_identity(const FiniteGroup& g, const GroupMap& gamma, const IdentityDecomposition& deco) {
    for (Element x = 0; x < g.order(); ++x)
        if (evaluate_decomposed(g, gamma, deco, x) != g.identity()) return false;
    return true;
}

bool is_fixpoint_free(const FiniteGroup& g, const GroupMap& alpha) {
    if (!alpha.is_automorphism()) throw AlgebraError(ErrorKind::NotAutomorphism, "fix-point-freeness needs an automorphism");
    for (Element x = 1; x < g.order(); ++x)
        if (alpha(x) == x) return false;
    return true;
}

// ---- subgroups ----

Subgroup generate_subgroup(const FiniteGroup& g, const std::vector<Element>& gens) {
    std::vector<unsigned char> in(g.order());
    std::vector<Element> elems{g.identity()};
    in[g.identity()] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (Element s : gens) {
            Element y = g.mul(elems[i], s);
            if (!in[y]) {
                in[y] = 1;
                elems.push_back(y);
            }
        }
    std::sort(elems.begin(), elems.end());
    return elems;
}

Subgroup whole_group(const FiniteGroup& g) {
    Subgroup s(g.order());
    std::iota(s.begin(), s.end(), Element(0));
    return s;
}

bool contains(const Subgroup& h, Element x) { return std::binary_search(h.begin(), h.end(), x); }

Subgroup normal_closure(const FiniteGroup& g, const std::vector<Element>& elems) {
    std::vector<unsigned char> mark(g.order());
    std::vector<Element> gens;
    for (Element e : elems)
        for (Element x = 0; x < g.order(); ++x) {
            Element c = g.mul(g.mul(g.inv(x), e), x);
            if (!mark[c]) {
                mark[c] = 1;
                gens.push_back(c);
            }
        }
    return generate_subgroup(g, gens);
}

Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
    std::vector<unsigned char> mark(g.order());
    std::vector<Element> gens;
    for (Element x : a)
        for (Element y : b) {
            Element c = g.commutator(x, y);
            if (!mark[c]) {
                mark[c] = 1;
                gens.push_back(c);
            }
        }
    return generate_subgroup(g, gens);
}

Subgroup center(const FiniteGroup& g) {
    Subgroup z;
    for (Element x = 0; x < g.order(); ++x) {
        bool central = true;
        for (Element y = 0; y < g.order() && central; ++y) central = g.mul(x, y) == g.mul(y, x);
        if (central) z.push_back(x);
    }
    return z;
}

bool is_normal_in(const FiniteGroup& g, const Subgroup& n, const Subgroup& k) {
    for (Element x : n)
        if (!contains(k, x)) return false;
    for (Element y : k)
        for (Element x : n)
            if (!contains(n, g.mul(g.mul(g.inv(y), x), y))) return false;
    return true;
}

bool is_invariant(const Subgroup& h, const GroupMap& gamma) {
    for (Element x : h)
        if (!contains(h, gamma(x))) return false;
    return true;
}

std::vector<Subgroup> lower_central_series(const FiniteGroup& g) {
    std::vector<Subgroup> series{whole_group(g)};
    const Subgroup all = series[0];
    while (series.back().size() > 1) {
        Subgroup next = commutator_subgroup(g, series.back(), all);
        if (next == series.back()) break;
        series.push_back(std::move(next));
    }
    return series;
}

std::optional<std::size_t> nilpotency_class(const FiniteGroup& g) {
    auto s = lower_central_series(g);
    if (s.back().size() != 1) return std::nullopt;
    return s.size() - 1;
}

std::vector<Subgroup> derived_series(const FiniteGroup& g) {
    std::vector<Subgroup> series{whole_group(g)};
    while (series.back().size() > 1) {
        Subgroup next = commutator_subgroup(g, series.back(), series.back());
        if (next == series.back()) break;
        series.push_back(std::move(next));
    }
    return series;
}

bool is_solvable(const FiniteGroup& g) { return derived_series(g).back().size() == 1; }

bool is_n_element(const FiniteGroup& g, Element x, const Int& n) {
    if (n == 0) return true;
    Int o = g.element_order(x), an = abs(n), d;
    while (true) {
        mpz_gcd(d.get_mpz_t(), o.get_mpz_t(), an.get_mpz_t());
        if (d == 1) break;
        o /= d;
    }
    return o == 1;
}

bool has_n_torsion(const FiniteGroup& g, const Int& n) {
    for (Element x = 1; x < g.order(); ++x)
        if (mpz_divisible_ui_p(n.get_mpz_t(), g.element_order(x))) return true;
    return false;
}

bool is_n_group(const FiniteGroup& g, const Int& n) {
    for (Element x = 0; x < g.order(); ++x)
        if (!is_n_element(g, x, n)) return false;
    return true;
}

bool induced_quotient_fixpoint_free(const FiniteGroup& g, const GroupMap& alpha, const Subgroup& n) {
    for (Element x = 0; x < g.order(); ++x) {
        if (contains(n, x)) continue;
        if (contains(n, g.mul(g.inv(x), alpha(x)))) return false;
    }
    return true;
}

}  // namespace fixfree

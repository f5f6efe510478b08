#include <algorithm>
#include <functional>

#include "fixfree/cyclotomic.hpp"
#include "fixfree/groups.hpp"
#include "fixfree/invariants.hpp"

namespace fixfree {

// ---- series and Cayley-Hamilton identities ----

namespace {

bool is_prime_power(std::size_t n, unsigned& p, unsigned& k) {
    auto primes = prime_factors(n);
    if (primes.size() != 1) return false;
    p = static_cast<unsigned>(primes[0]);
    k = 0;
    while (n > 1) {
        n /= p;
        ++k;
    }
    return true;
}

// Merge adjacent terms with equal exponent and drop zero coefficients.
Word normalize(const Word& w) {
    Word out;
    for (const auto& t : w) {
        if (t.coeff == 0) continue;
        if (!out.empty() && out.back().exponent == t.exponent) {
            out.back().coeff += t.coeff;
            if (out.back().coeff == 0) out.pop_back();
        } else {
            out.push_back(t);
        }
    }
    return out;
}

Word inverse_word(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (auto& t : out) t.coeff = -t.coeff;
    return out;
}

Word shift_word(const Word& w, std::size_t j) {
    Word out = w;
    for (auto& t : out) t.exponent += j;
    return out;
}

}  // namespace

SubnormalSeriesSpec make_series(const FiniteGroup& g, const GroupMap& gamma, std::vector<Subgroup> terms) {
    if (terms.size() < 2 || terms.front().size() != g.order() || terms.back().size() != 1)
        throw AlgebraError(ErrorKind::InvalidArgument, "series must run from the whole group down to the trivial subgroup");
    SubnormalSeriesSpec series;
    for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
        const Subgroup& upper = terms[i];
        const Subgroup& lower = terms[i + 1];
        if (!is_normal_in(g, lower, upper))
            throw AlgebraError(ErrorKind::SeriesNotNormal, "term " + std::to_string(i + 2) + " is not normal in its predecessor");
        if (upper.size() == lower.size())
            throw AlgebraError(ErrorKind::InvalidArgument, "series has a repeated term");
        unsigned p = 0, k = 0;
        if (upper.size() % lower.size() != 0 || !is_prime_power(upper.size() / lower.size(), p, k))
            throw AlgebraError(ErrorKind::FactorNotElementaryAbelian, "factor order is not a prime power");
        for (Element x : upper) {
            if (!contains(lower, power(g, x, Int(p))))
                throw AlgebraError(ErrorKind::FactorNotElementaryAbelian, "factor has exponent larger than p");
            for (Element y : upper)
                if (!contains(lower, g.commutator(x, y)))
                    throw AlgebraError(ErrorKind::FactorNotElementaryAbelian, "factor is not abelian");
        }
        series.factors.push_back({p, k});
    }
    for (const auto& t : terms)
        if (!is_invariant(t, gamma)) throw AlgebraError(ErrorKind::SeriesNotInvariant, "series term is not gamma-invariant");
    series.terms = std::move(terms);
    return series;
}

FactorAction induced_factor_action(const FiniteGroup& g, const GroupMap& gamma, const Subgroup& upper,
                                   const Subgroup& lower, unsigned prime) {
    std::vector<long> coset(g.order(), -1);
    long next = 0;
    for (Element x : upper) {
        if (coset[x] >= 0) continue;
        for (Element l : lower) coset[g.mul(x, l)] = next;
        ++next;
    }
    FactorAction fa;
    fa.prime = prime;
    Subgroup span = lower;
    for (Element x : upper) {
        if (contains(span, x)) continue;
        fa.basis.push_back(x);
        std::vector<Element> gens(lower.begin(), lower.end());
        gens.insert(gens.end(), fa.basis.begin(), fa.basis.end());
        span = generate_subgroup(g, gens);
    }
    const std::size_t k = fa.basis.size();
    std::vector<std::vector<unsigned>> coords(static_cast<std::size_t>(next));
    std::vector<unsigned> c(k, 0);
    while (true) {
        Element e = g.identity();
        for (std::size_t j = 0; j < k; ++j) e = g.mul(e, power(g, fa.basis[j], Int(c[j])));
        coords[coset[e]] = c;
        std::size_t j = 0;
        while (j < k && ++c[j] == prime) c[j++] = 0;
        if (j == k) break;
    }
    fa.matrix = IntMatrix(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        const Element img = gamma(fa.basis[j]);
        if (coset[img] < 0) throw AlgebraError(ErrorKind::SeriesNotInvariant, "image leaves the section");
        const auto& col = coords[coset[img]];
        for (std::size_t i = 0; i < k; ++i) fa.matrix(i, j) = col[i];
    }
    return fa;
}

IntPoly lift_mod_p(const RatPoly& chi, unsigned p) {
    std::vector<Int> out;
    for (std::size_t i = 0; i < chi.size(); ++i) {
        const Rat& q = chi.coeff(i);
        if (q.get_den() != 1) throw AlgebraError(ErrorKind::InvalidArgument, "lift needs integer coefficients");
        Int r = q.get_num() % p;
        if (r < 0) r += p;
        if (2 * r > p) r -= p;
        out.push_back(r);
    }
    return IntPoly(std::move(out));
}

IdentityDecomposition compose_identities(const std::vector<IdentityDecomposition>& decos) {
    if (decos.empty()) return IdentityDecomposition{{IntPoly::constant(1)}};
    if (decos.size() == 1) return decos[0];
    Word acc = normalize(word_of(decos[0]));
    for (std::size_t f = 1; f < decos.size(); ++f) {
        const Word inv = inverse_word(acc);
        Word next;
        for (const auto& part : decos[f].parts)
            for (std::size_t j = 0; j < part.size(); ++j) {
                const Int& c = part.coeff(j);
                if (c == 0) continue;
                const Word piece = shift_word(c > 0 ? acc : inv, j);
                for (Int n = abs(c); n > 0; --n) next.insert(next.end(), piece.begin(), piece.end());
            }
        acc = normalize(next);
    }
    if (acc.empty()) return IdentityDecomposition{{IntPoly()}};
    return decomposition_of(acc);
}

CharPolyIdentity char_poly_identity(const FiniteGroup& g, const SubnormalSeriesSpec& series, const GroupMap& gamma) {
    for (const auto& t : series.terms)
        if (!is_invariant(t, gamma)) throw AlgebraError(ErrorKind::SeriesNotInvariant, "series term is not gamma-invariant");
    CharPolyIdentity out;
    out.chi = IntPoly::constant(1);
    std::vector<IdentityDecomposition> decos;
    for (std::size_t i = 0; i + 1 < series.terms.size(); ++i) {
        const unsigned p = series.factors.at(i).prime;
        FactorAction fa = induced_factor_action(g, gamma, series.terms[i], series.terms[i + 1], p);
        IntPoly chi_i = lift_mod_p(char_poly(to_rat(fa.matrix)), p);
        out.factor_polys.push_back(chi_i);
        out.chi *= chi_i;
        decos.push_back(descending_monomials(chi_i));
    }
    out.deco = compose_identities(decos);
    if (!is_identity(g, gamma, out.deco))
        throw AlgebraError(ErrorKind::IdentityFails, "composed characteristic identity does not vanish");
    return out;
}

InverseFromIdentity inverse_from_identity(const GroupPtr& g, const GroupMap& gamma, const IntPoly& chi,
                                          const IdentityDecomposition& deco) {
    if (chi.is_zero() || abs(chi.coeff(0)) != 1)
        throw AlgebraError(ErrorKind::ConstantTermNotUnit, "constant term must be 1 or -1");
    if (!gamma.is_automorphism()) throw AlgebraError(ErrorKind::NotAutomorphism, "gamma is not bijective");
    Word w = normalize(word_of(deco));
    std::vector<std::size_t> zero_blocks;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i].exponent == 0) zero_blocks.push_back(i);
    // The word is cyclic: two zero blocks at the two ends merge into one.
    if (zero_blocks.size() == 2 && zero_blocks[0] == 0 && zero_blocks[1] == w.size() - 1 && w.size() > 1) {
        w.back().coeff += w.front().coeff;
        w.erase(w.begin());
        zero_blocks = {w.size() - 1};
        if (w.back().coeff == 0) zero_blocks.clear();
    }
    if (zero_blocks.size() != 1)
        throw AlgebraError(ErrorKind::UnsupportedWordShape, "word needs exactly one block at exponent zero");
    std::rotate(w.begin(), w.begin() + static_cast<long>(zero_blocks[0]) + 1, w.end());
    const Int k = w.back().coeff;
    if (abs(k) != 1) throw AlgebraError(ErrorKind::UnsupportedWordShape, "exponent-zero block is not a unit");
    w.pop_back();
    for (auto& t : w) t.exponent -= 1;
    const FiniteGroup& G = *g;
    std::vector<Element> images(G.order());
    for (Element x = 0; x < G.order(); ++x) {
        Element v = evaluate_word(G, gamma, w, x);
        images[x] = k == -1 ? v : G.inv(v);
    }
    GroupMap inv = GroupMap::unchecked(g, std::move(images));
    if (!(inv == gamma.inverse()))
        throw AlgebraError(ErrorKind::IdentityFails, "word does not reproduce the inverse; deco is not an identity");
    return InverseFromIdentity{inv, w, k == -1 ? -1 : 1};
}

// ---- theorem verifiers ----

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw AlgebraError(ErrorKind::HypothesisViolated, what);
}

std::string branch_name(bool torsion, bool second) {
    if (torsion && second) return "both";
    if (torsion) return "torsion";
    if (second) return "nilpotent";
    return "neither";
}

}  // namespace

TheoremVerdict verify_theorem_A(const FiniteGroup& g, const GroupMap& alpha, const IdentityDecomposition& deco) {
    require(alpha.is_automorphism(), "alpha is not an automorphism");
    require(is_fixpoint_free(g, alpha), "alpha is not fix-point-free");
    const IntPoly r = deco.sum();
    require(!r.is_zero(), "identity polynomial is zero");
    require(is_identity(g, alpha, deco), "deco is not an identity of alpha");
    require(is_good(r).good, "r is not good");
    TheoremVerdict v;
    v.torsion_modulus = tcn(r);
    v.has_torsion = has_n_torsion(g, v.torsion_modulus);
    v.nilpotency_class = nilpotency_class(g);
    v.pass = v.has_torsion || v.nilpotency_class.has_value();
    v.branch = branch_name(v.has_torsion, v.nilpotency_class.has_value());
    return v;
}

TheoremVerdict verify_theorem_B(const FiniteGroup& g, const GroupMap& gamma, const IdentityDecomposition& deco) {
    const IntPoly r = deco.sum();
    require(!r.is_zero(), "identity polynomial is zero");
    TheoremVerdict v;
    v.nilpotency_class = nilpotency_class(g);
    require(v.nilpotency_class.has_value(), "group is not nilpotent");
    require(is_identity(g, gamma, deco), "deco is not an identity of gamma");
    require(is_good(r).good, "r is not good");
    const std::size_t d = r.deg();
    if (d > 20) throw AlgebraError(ErrorKind::BoundExceeded, "class bound d^(2^d) too large to materialize");
    Int bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), d, 1UL << d);
    v.class_bound = bound;
    v.torsion_modulus = discr_star(r) * prod_star(r);
    v.has_torsion = has_n_torsion(g, v.torsion_modulus);
    const bool within = Int(static_cast<unsigned long>(*v.nilpotency_class)) <= bound;
    v.pass = v.has_torsion || within;
    v.branch = branch_name(v.has_torsion, within);
    if (!within) v.notes.push_back("class exceeds d^(2^d)");
    return v;
}

SolvableVerdict verify_solvable_decomposition(const FiniteGroup& g, const GroupMap& alpha,
                                              const IdentityDecomposition& deco) {
    require(is_solvable(g), "group is not solvable");
    require(alpha.is_automorphism(), "alpha is not an automorphism");
    require(is_fixpoint_free(g, alpha), "alpha is not fix-point-free");
    const IntPoly r = deco.sum();
    require(!r.is_zero(), "identity polynomial is zero");
    require(is_identity(g, alpha, deco), "deco is not an identity of alpha");

    SolvableVerdict v;
    v.n = tcn(r);
    std::vector<Element> n_elements;
    for (Element x = 0; x < g.order(); ++x)
        if (is_n_element(g, x, v.n)) n_elements.push_back(x);
    v.s = normal_closure(g, n_elements);
    v.s_order = v.s.size();
    v.s_is_n_group = std::all_of(v.s.begin(), v.s.end(), [&](Element x) { return is_n_element(g, x, v.n); });

    // Lower central series of G/S, carried as preimages: Gamma_{i+1} = <[Gamma_i, G]> S.
    const Subgroup all = whole_group(g);
    Subgroup cur = all;
    std::size_t cls = 0;
    while (cur.size() != v.s.size()) {
        Subgroup comm = commutator_subgroup(g, cur, all);
        std::vector<Element> gens(comm.begin(), comm.end());
        gens.insert(gens.end(), v.s.begin(), v.s.end());
        Subgroup next = generate_subgroup(g, gens);
        if (next == cur) break;
        cur = std::move(next);
        ++cls;
    }
    if (cur.size() == v.s.size()) v.quotient_class = cls;

    for (Element x = 0; x < g.order() && !v.quotient_has_n_torsion; ++x)
        if (!contains(v.s, x) && contains(v.s, power(g, x, v.n))) v.quotient_has_n_torsion = true;
    v.pass = v.s_is_n_group && v.quotient_class.has_value() && !v.quotient_has_n_torsion;
    return v;
}

// ---- instance search ----

namespace {

std::vector<Element> generating_set(const FiniteGroup& g) {
    std::vector<Element> order_sorted(g.order());
    for (Element x = 0; x < g.order(); ++x) order_sorted[x] = x;
    std::stable_sort(order_sorted.begin(), order_sorted.end(),
                     [&](Element a, Element b) { return g.element_order(a) > g.element_order(b); });
    std::vector<Element> gens;
    Subgroup span{g.identity()};
    for (Element x : order_sorted) {
        if (span.size() == g.order()) break;
        if (contains(span, x)) continue;
        gens.push_back(x);
        span = generate_subgroup(g, gens);
    }
    for (std::size_t i = gens.size(); i-- > 0;) {
        std::vector<Element> rest = gens;
        rest.erase(rest.begin() + static_cast<long>(i));
        if (generate_subgroup(g, rest).size() == g.order()) gens = std::move(rest);
    }
    return gens;
}

void abelian_types(unsigned n, unsigned prev, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
    if (n == 1) {
        out.push_back(cur);
        return;
    }
    for (unsigned d = std::max(prev, 2u); d <= n; ++d) {
        if (d % prev || n % d) continue;
        const unsigned rest = n / d;
        if (rest != 1 && rest % d) continue;
        cur.push_back(d);
        abelian_types(rest, d, cur, out);
        cur.pop_back();
    }
}

bool wants(const std::vector<std::string>& families, const std::string& f) {
    for (const auto& x : families)
        if (x == f || x == "any") return true;
    return false;
}

}  // namespace

std::vector<GroupMap> enumerate_automorphisms(const GroupPtr& gp, std::size_t cap, bool fixpoint_free_only,
                                              bool* exhaustive) {
    const FiniteGroup& g = *gp;
    const std::size_t n = g.order();
    std::vector<GroupMap> out;
    if (exhaustive) *exhaustive = true;
    if (n == 1) {
        out.push_back(GroupMap::identity(gp));
        return out;
    }
    const std::vector<Element> gens = generating_set(g);
    const std::size_t k = gens.size();
    std::vector<std::vector<Element>> candidates(k);
    for (std::size_t i = 0; i < k; ++i)
        for (Element y = 1; y < n; ++y)
            if (g.element_order(y) == g.element_order(gens[i]) && !(fixpoint_free_only && y == gens[i]))
                candidates[i].push_back(y);

    std::vector<Element> img(k);
    std::vector<Element> map(n);
    std::vector<unsigned char> defined(n), used(n);
    std::vector<Element> queue;
    std::size_t visited = 0;
    bool stopped = false;

    // Extend the partial assignment on <gens[0..depth]>; false on any conflict.
    auto extend = [&](std::size_t depth) {
        std::fill(defined.begin(), defined.end(), 0);
        std::fill(used.begin(), used.end(), 0);
        queue.assign(1, g.identity());
        defined[0] = 1;
        map[0] = 0;
        used[0] = 1;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const Element h = queue[q];
            for (std::size_t j = 0; j <= depth; ++j) {
                const Element x = g.mul(h, gens[j]);
                const Element y = g.mul(map[h], img[j]);
                if (defined[x]) {
                    if (map[x] != y) return false;
                    continue;
                }
                if (used[y]) return false;
                if (fixpoint_free_only && x == y) return false;
                defined[x] = 1;
                used[y] = 1;
                map[x] = y;
                queue.push_back(x);
            }
        }
        return true;
    };

    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
        for (Element c : candidates[depth]) {
            if (stopped) return;
            if (++visited > cap) {
                stopped = true;
                return;
            }
            img[depth] = c;
            if (!extend(depth)) continue;
            if (depth + 1 == k) {
                out.push_back(GroupMap::unchecked(gp, map));
            } else {
                rec(depth + 1);
            }
        }
    };
    rec(0);
    if (exhaustive) *exhaustive = !stopped;
    return out;
}

std::vector<GroupPtr> enumerate_groups(std::size_t bound, const std::vector<std::string>& families) {
    if (bound > FiniteGroup::kMaxOrder) throw AlgebraError(ErrorKind::BoundExceeded, "order bound too large");
    std::vector<GroupPtr> out;
    if (bound >= 1 && wants(families, "abelian")) {
        for (unsigned n = 1; n <= bound; ++n) {
            std::vector<std::vector<unsigned>> types;
            std::vector<unsigned> cur;
            abelian_types(n, 1, cur, types);
            for (auto& t : types) out.push_back(FiniteGroup::abelian(t));
        }
    } else if (bound >= 1) {
        out.push_back(FiniteGroup::abelian({}));
    }
    if (wants(families, "heisenberg")) {
        for (unsigned m = 2; static_cast<std::size_t>(m) * m * m <= bound; ++m) {
            out.push_back(FiniteGroup::heisenberg(m));
            if (m % 2 == 1) out.push_back(FiniteGroup::twisted_heisenberg(m));
        }
    }
    if (wants(families, "dihedral"))
        for (unsigned n = 3; 2 * n <= bound; ++n) out.push_back(FiniteGroup::dihedral(n));
    if (wants(families, "symmetric")) {
        const std::size_t fact[] = {6, 24, 120};
        for (unsigned n = 3; n <= 5; ++n)
            if (fact[n - 3] <= bound) out.push_back(FiniteGroup::symmetric(n));
    }
    if (wants(families, "alternating") || wants(families, "symmetric")) {
        if (12 <= bound) out.push_back(FiniteGroup::alternating(4));
        if (60 <= bound) out.push_back(FiniteGroup::alternating(5));
    }
    if (wants(families, "metacyclic")) {
        for (unsigned q = 3; q * q <= bound; ++q) {
            if (!is_prime(q)) continue;
            for (unsigned p = q + 1; p * q <= bound; ++p)
                if (is_prime(p) && (p - 1) % q == 0) out.push_back(FiniteGroup::metacyclic(p, q));
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const GroupPtr& a, const GroupPtr& b) { return a->order() < b->order(); });
    return out;
}

namespace {

// Abelian groups get no series description, since the characteristic identity already holds monotonely.
std::optional<SubnormalSeriesSpec> characteristic_lcs(const GroupPtr& gp) {
    if (gp->is_abelian()) return std::nullopt;
    try {
        return make_series(*gp, GroupMap::identity(gp), lower_central_series(*gp));
    } catch (const AlgebraError&) {
        return std::nullopt;
    }
}

}  // namespace

std::optional<FoundIdentity> find_identity(const GroupPtr& g, const GroupMap& alpha, const IntPoly& r,
                                           const std::optional<SubnormalSeriesSpec>& lcs) {
    IdentityDecomposition mono = monotone(r);
    if (is_identity(*g, alpha, mono)) return FoundIdentity{std::move(mono), "monotone"};
    IdentityDecomposition desc = descending_monomials(r);
    if (desc.parts.size() > 1 && is_identity(*g, alpha, desc)) return FoundIdentity{std::move(desc), "descending"};
    if (!lcs) return std::nullopt;
    CharPolyIdentity cpi = char_poly_identity(*g, *lcs, alpha);
    auto q = divide_exact(r, cpi.chi);
    if (!q) return std::nullopt;
    IdentityDecomposition deco = compose_identities({cpi.deco, monotone(*q)});
    if (!is_identity(*g, alpha, deco)) return std::nullopt;
    return FoundIdentity{std::move(deco), "composed"};
}

std::optional<FoundIdentity> find_identity(const GroupPtr& g, const GroupMap& alpha, const IntPoly& r) {
    return find_identity(g, alpha, r, characteristic_lcs(g));
}

SearchResult search_instances(std::size_t bound, const IntPoly& r, const SearchOptions& opts) {
    if (bound > opts.max_order) throw AlgebraError(ErrorKind::BoundExceeded, "order bound exceeds the configured maximum");
    std::vector<GroupPtr> groups = enumerate_groups(bound, opts.families);
    if (wants(opts.families, "cayley"))
        for (const auto& g : opts.extra_groups)
            if (g->order() <= bound) groups.push_back(g);

    SearchResult result;
    for (const auto& gp : groups) {
        const FiniteGroup& g = *gp;
        GroupSearchLog log;
        log.group = g.name();
        log.order = g.order();
        auto autos = enumerate_automorphisms(gp, opts.automorphism_cap, true, &log.exhaustive);
        log.automorphisms = autos.size();
        log.fixpoint_free = autos.size();
        // The lower central series is characteristic, so one series description serves every automorphism.
        const auto lcs = characteristic_lcs(gp);
        for (const auto& alpha : autos) {
            auto found = find_identity(gp, alpha, r, lcs);
            if (!found) continue;
            result.instances.push_back({gp, alpha, std::move(found->deco), found->kind});
            ++log.matches;
        }
        result.log.push_back(std::move(log));
    }
    return result;
}

}  // namespace fixfree

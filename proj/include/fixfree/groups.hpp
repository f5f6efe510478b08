#pragma once

// Finite groups stored as multiplication tables over a canonical element
// encoding, endomorphisms as image arrays, and brute-force verifiers for
// identities, nilpotency, torsion and the structure statements about groups
// with fix-point-free automorphisms.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fixfree/polycore.hpp"

namespace fixfree {

using Element = std::uint32_t;

enum class GroupFamily { Abelian, Heisenberg, TwistedHeisenberg, Bch, Dihedral, Symmetric, Alternating, Metacyclic, Cayley };
const char* family_name(GroupFamily f);

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
public:
    /// Largest order accepted; the table needs order^2 entries.
    static constexpr std::size_t kMaxOrder = 4096;

    /// Z_{n_1} x ... x Z_{n_k}; tuples encoded in mixed radix, first factor most significant.
    static GroupPtr abelian(std::vector<unsigned> moduli);
    /// Upper unitriangular 3x3 matrices over Z/m; (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y').
    static GroupPtr heisenberg(unsigned m);
    /// Odd m; (x,y,z)(x',y',z') = (x+x', y+y', z+z'+2 x y').
    static GroupPtr twisted_heisenberg(unsigned m);
    static GroupPtr dihedral(unsigned n);
    static GroupPtr symmetric(unsigned n);
    static GroupPtr alternating(unsigned n);
    /// Z_p semidirect Z_q where the generator of Z_q acts by multiplication with a unit of order q mod p.
    static GroupPtr metacyclic(unsigned p, unsigned q);
    /// Generic group from a Cayley table with element 0 as the identity.
    static GroupPtr from_table(const std::vector<std::vector<Element>>& table, std::string name = "cayley");
    /// Group on mixed-radix tuples with an arbitrary law (element 0 must be the identity).
    static GroupPtr from_law(std::string name, GroupFamily family, std::vector<unsigned> radix,
                             const std::function<Element(Element, Element)>& law);

    std::size_t order() const { return n_; }
    Element identity() const { return 0; }
    Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    Element inv(Element a) const { return inverse_[a]; }
    unsigned element_order(Element a) const { return orders_[a]; }
    const std::string& name() const { return name_; }
    GroupFamily family() const { return family_; }
    const std::vector<unsigned>& radix() const { return radix_; }
    std::vector<unsigned> decode(Element e) const;
    Element encode(const std::vector<unsigned>& tuple) const;
    bool is_abelian() const;
    /// Commutator x^{-1} y^{-1} x y.
    Element commutator(Element x, Element y) const { return mul(mul(inv(x), inv(y)), mul(x, y)); }
    std::vector<std::vector<Element>> cayley_table() const;

private:
    FiniteGroup() = default;
    void finish();  // inverses, orders and the group-axiom checks

    std::size_t n_ = 0;
    std::string name_;
    GroupFamily family_ = GroupFamily::Cayley;
    std::vector<unsigned> radix_;
    std::vector<Element> table_;
    std::vector<Element> inverse_;
    std::vector<unsigned> orders_;
};

/// Relabel a group's elements by a permutation fixing 0; used for isomorphism sanity checks.
GroupPtr relabel(const GroupPtr& g, const std::vector<Element>& perm);

class GroupMap {
public:
    /// Validates the homomorphism property (exhaustively up to order 512, sampled above).
    GroupMap(GroupPtr domain, std::vector<Element> images);
    static GroupMap identity(const GroupPtr& g);
    static GroupMap from_function(const GroupPtr& g, const std::function<Element(Element)>& f);
    /// For abelian tuple groups: image of a tuple v is M v with entries reduced by the moduli.
    static GroupMap linear(const GroupPtr& g, const IntMatrix& m);
    /// Skips validation; for maps already known to be homomorphisms (automorphism enumeration).
    static GroupMap unchecked(GroupPtr domain, std::vector<Element> images);

    Element operator()(Element x) const { return images_[x]; }
    const GroupPtr& domain() const { return domain_; }
    const std::vector<Element>& images() const { return images_; }
    bool is_automorphism() const;
    /// other after this: x -> other(this(x)).
    GroupMap then(const GroupMap& other) const;
    /// Brute-force inverse; throws NotAutomorphism when not bijective.
    GroupMap inverse() const;
    friend bool operator==(const GroupMap& a, const GroupMap& b) { return a.images_ == b.images_; }

private:
    GroupMap() = default;
    GroupPtr domain_;
    std::vector<Element> images_;
};

/// (x,y,z) -> (y, x+y, x y + y(y-1)/2 - z) on the Heisenberg group mod odd m.
GroupMap heisenberg_golden_automorphism(const GroupPtr& g);
/// (x,y,z) -> (y, x+y, 2 x y + y^2 - z) on the twisted Heisenberg group.
GroupMap twisted_golden_automorphism(const GroupPtr& g);
/// x -> x^k on an abelian group.
GroupMap power_map(const GroupPtr& g, long k);

// ---- identities ----

struct IdentityDecomposition {
    std::vector<IntPoly> parts;
    IntPoly sum() const;
};

/// gamma^exponent applied to x^coeff.
struct WordTerm {
    std::size_t exponent = 0;
    Int coeff;
    friend bool operator==(const WordTerm& a, const WordTerm& b) {
        return a.exponent == b.exponent && a.coeff == b.coeff;
    }
};
using Word = std::vector<WordTerm>;

/// Each part contributes its monomials in ascending degree.
Word word_of(const IdentityDecomposition& deco);
/// Split a word into one monomial part per term.
IdentityDecomposition decomposition_of(const Word& w);
Element evaluate_word(const FiniteGroup& g, const GroupMap& gamma, const Word& w, Element x);

Element power(const FiniteGroup& g, Element x, const Int& n);
Element evaluate_monotone(const FiniteGroup& g, const GroupMap& gamma, const IntPoly& r, Element x);
Element evaluate_decomposed(const FiniteGroup& g, const GroupMap& gamma, const IdentityDecomposition& deco, Element x);
bool is_identity(const FiniteGroup& g, const GroupMap& gamma, const IdentityDecomposition& deco);
bool is_fixpoint_free(const FiniteGroup& g, const GroupMap& alpha);

/// [a_d t^d, ..., a_1 t, a_0] with zero coefficients dropped.
IdentityDecomposition descending_monomials(const IntPoly& r);
IdentityDecomposition monotone(const IntPoly& r);

// ---- subgroups ----

using Subgroup = std::vector<Element>;  // sorted element list

Subgroup generate_subgroup(const FiniteGroup& g, const std::vector<Element>& gens);
Subgroup normal_closure(const FiniteGroup& g, const std::vector<Element>& elems);
/// Subgroup generated by [a, b] for a in A, b in B.
Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);
Subgroup center(const FiniteGroup& g);
Subgroup whole_group(const FiniteGroup& g);
bool contains(const Subgroup& h, Element x);
bool is_normal_in(const FiniteGroup& g, const Subgroup& n, const Subgroup& k);
bool is_invariant(const Subgroup& h, const GroupMap& gamma);

std::vector<Subgroup> lower_central_series(const FiniteGroup& g);
std::optional<std::size_t> nilpotency_class(const FiniteGroup& g);
std::vector<Subgroup> derived_series(const FiniteGroup& g);
bool is_solvable(const FiniteGroup& g);

/// Some x != 1 with x^n = 1 (n = 0 means every element qualifies).
bool has_n_torsion(const FiniteGroup& g, const Int& n);
/// Every element order divides a power of n.
bool is_n_group(const FiniteGroup& g, const Int& n);
bool is_n_element(const FiniteGroup& g, Element x, const Int& n);

/// True when x^{-1} alpha(x) lies outside N for every x outside N.
bool induced_quotient_fixpoint_free(const FiniteGroup& g, const GroupMap& alpha, const Subgroup& n);

// ---- Cayley-Hamilton identities along subnormal series ----

struct FactorDescriptor {
    unsigned prime = 0;
    unsigned rank = 0;
};

struct SubnormalSeriesSpec {
    std::vector<Subgroup> terms;  // G = G_1 > ... > G_{l+1} = {1}
    std::vector<FactorDescriptor> factors;
};

/// Validates normality, gamma-invariance and elementary-abelian factors.
SubnormalSeriesSpec make_series(const FiniteGroup& g, const GroupMap& gamma, std::vector<Subgroup> terms);

/// Matrix of the map induced by gamma on G_i / G_{i+1} over F_p, plus the
/// chosen basis of coset representatives.
struct FactorAction {
    std::vector<Element> basis;
    IntMatrix matrix;  // entries in [0, p)
    unsigned prime = 0;
};
FactorAction induced_factor_action(const FiniteGroup& g, const GroupMap& gamma, const Subgroup& upper,
                                   const Subgroup& lower, unsigned prime);

/// Monic lift of a characteristic polynomial mod p with coefficients in (-p/2, p/2].
IntPoly lift_mod_p(const RatPoly& chi, unsigned p);

struct CharPolyIdentity {
    IntPoly chi;
    std::vector<IntPoly> factor_polys;
    IdentityDecomposition deco;
};

CharPolyIdentity char_poly_identity(const FiniteGroup& g, const SubnormalSeriesSpec& series, const GroupMap& gamma);

/// decos[0] is applied first.  The result evaluates, for every endomorphism,
/// to the composition of the per-factor maps.
IdentityDecomposition compose_identities(const std::vector<IdentityDecomposition>& decos);

struct InverseFromIdentity {
    GroupMap inverse;
    Word word;      // gamma^{-1}(x) is this word at x, or its inverse when sign = +1
    int sign = -1;  // the coefficient of the lone gamma^0 term after rotation
};
InverseFromIdentity inverse_from_identity(const GroupPtr& g, const GroupMap& gamma, const IntPoly& chi,
                                          const IdentityDecomposition& deco);

// ---- theorem verifiers ----

struct TheoremVerdict {
    bool pass = false;
    std::string branch;  // "torsion", "nilpotent", "both", or "neither"
    Int torsion_modulus;
    bool has_torsion = false;
    std::optional<std::size_t> nilpotency_class;
    std::optional<Int> class_bound;
    std::vector<std::string> notes;
};

TheoremVerdict verify_theorem_A(const FiniteGroup& g, const GroupMap& alpha, const IdentityDecomposition& deco);
TheoremVerdict verify_theorem_B(const FiniteGroup& g, const GroupMap& gamma, const IdentityDecomposition& deco);

struct SolvableVerdict {
    bool pass = false;
    Int n;
    std::size_t s_order = 0;
    bool s_is_n_group = false;
    std::optional<std::size_t> quotient_class;
    bool quotient_has_n_torsion = false;
    Subgroup s;
};
SolvableVerdict verify_solvable_decomposition(const FiniteGroup& g, const GroupMap& alpha,
                                              const IdentityDecomposition& deco);

// ---- instance search ----

struct SearchOptions {
    std::size_t max_order = 128;
    std::size_t automorphism_cap = 200000;  // candidate image tuples per group
    std::vector<std::string> families{"any"};  // abelian, heisenberg, dihedral, symmetric, metacyclic, cayley, any
    std::vector<GroupPtr> extra_groups;         // user-supplied Cayley tables
};

struct Instance {
    GroupPtr group;
    GroupMap alpha;
    IdentityDecomposition deco;
    std::string deco_kind;  // "monotone", "descending", "composed"
};

struct GroupSearchLog {
    std::string group;
    std::size_t order = 0;
    std::size_t automorphisms = 0;
    std::size_t fixpoint_free = 0;
    std::size_t matches = 0;
    bool exhaustive = true;
};

struct SearchResult {
    std::vector<Instance> instances;
    std::vector<GroupSearchLog> log;
};

/// A decomposition of r that is an identity of alpha: the monotone form, then the
/// descending-monomial form, then (for non-abelian groups whose lower central
/// series has elementary-abelian factors) the characteristic identity chi composed
/// with the monotone form of r / chi.  kind is "monotone", "descending" or "composed".
struct FoundIdentity {
    IdentityDecomposition deco;
    std::string kind;
};
std::optional<FoundIdentity> find_identity(const GroupPtr& g, const GroupMap& alpha, const IntPoly& r);
/// Same search with a precomputed lower-central series description (nullopt skips the composed form).
std::optional<FoundIdentity> find_identity(const GroupPtr& g, const GroupMap& alpha, const IntPoly& r,
                                           const std::optional<SubnormalSeriesSpec>& lcs);

/// All automorphisms found by generator-image backtracking (up to cap tuples).
std::vector<GroupMap> enumerate_automorphisms(const GroupPtr& g, std::size_t cap, bool fixpoint_free_only,
                                              bool* exhaustive = nullptr);
std::vector<GroupPtr> enumerate_groups(std::size_t bound, const std::vector<std::string>& families);
SearchResult search_instances(std::size_t bound, const IntPoly& r, const SearchOptions& opts = {});

}  // namespace fixfree

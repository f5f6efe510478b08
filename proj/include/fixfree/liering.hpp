#pragma once

// Lie rings given by structure constants over Q, Z or Z/m; free nilpotent Lie
// algebras on a Hall basis; ideals, quotients and central series; gradings by
// finite abelian groups with the class bounds they imply; the associated graded
// Lie ring of a finite p-group and class-2 BCH groups.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fixfree/groups.hpp"
#include "fixfree/polycore.hpp"

namespace fixfree {

enum class RingKind { Q, Z, Zmod };

/// Coefficient ring tag.  Scalars are always stored as Rat and normalized:
/// integers for Z, residues in [0, m) for Z/m.
struct CoeffRing {
    RingKind kind = RingKind::Q;
    unsigned long modulus = 0;

    static CoeffRing rationals() { return {}; }
    static CoeffRing integers() { return {RingKind::Z, 0}; }
    static CoeffRing zmod(unsigned long m);
    /// "Q", "Z" or "Zmod:m".
    static CoeffRing parse(const std::string& s);
    std::string name() const;

    Rat normalize(const Rat& x) const;
    bool is_field() const;
    friend bool operator==(const CoeffRing& a, const CoeffRing& b) {
        return a.kind == b.kind && a.modulus == b.modulus;
    }
};

using Vec = std::vector<Rat>;

/// [e_i, e_j] = sum of scalar * e_k over the listed terms (i < j).
struct BracketEntry {
    std::size_t i = 0, j = 0;
    std::vector<std::pair<std::size_t, Rat>> terms;
};

class LieRing {
public:
    /// Checks antisymmetry and the Jacobi identity on all basis triples.
    LieRing(CoeffRing ring, std::size_t rank, const std::vector<BracketEntry>& brackets,
            std::vector<std::string> labels = {});

    std::size_t rank() const { return n_; }
    const CoeffRing& ring() const { return ring_; }
    const std::vector<std::string>& labels() const { return labels_; }
    Vec zero() const { return Vec(n_, Rat(0)); }
    Vec basis_vector(std::size_t i) const;
    Vec bracket(const Vec& a, const Vec& b) const;
    Vec basis_bracket(std::size_t i, std::size_t j) const;
    /// Nonzero brackets with i < j.
    std::vector<BracketEntry> brackets() const;
    bool is_abelian() const;

private:
    const std::vector<std::pair<std::size_t, Rat>>& entry(std::size_t i, std::size_t j) const {
        return table_[i * n_ + j];
    }
    CoeffRing ring_;
    std::size_t n_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::pair<std::size_t, Rat>>> table_;  // row-major, both orders stored
};

using LiePtr = std::shared_ptr<const LieRing>;

Vec normalize(const CoeffRing& ring, Vec v);
bool is_zero_vec(const Vec& v);
Vec apply(const RatMatrix& m, const Vec& v, const CoeffRing& ring);
RatMatrix normalize(const CoeffRing& ring, RatMatrix m);

/// Linear map preserving the bracket; column j holds the image of e_j.
class LieEndo {
public:
    LieEndo(LiePtr ring, RatMatrix matrix);
    const LiePtr& ring() const { return ring_; }
    const RatMatrix& matrix() const { return m_; }
    Vec operator()(const Vec& v) const { return apply(m_, v, ring_->ring()); }

private:
    LiePtr ring_;
    RatMatrix m_;
};

/// sum a_i gamma^i with entries normalized in the coefficient ring.
RatMatrix lie_evaluate(const IntPoly& r, const LieEndo& gamma);

// ---- submodules ----

/// Canonical echelon form: reduced row echelon over fields, Hermite normal
/// form over Z and Z/m (for Z/m the lattice includes m Z^n).
class Submodule {
public:
    static Submodule span(const CoeffRing& ring, std::size_t n, const std::vector<Vec>& vectors);
    static Submodule whole(const CoeffRing& ring, std::size_t n);

    const CoeffRing& ring() const { return ring_; }
    std::size_t ambient() const { return n_; }
    const std::vector<Vec>& rows() const { return rows_; }
    /// Generators that are nonzero in the ring (skips the m e_i rows for Z/m).
    std::vector<Vec> generators() const;
    bool is_zero() const;
    bool contains(const Vec& v) const;
    /// Vector-space dimension over a field; number of echelon rows otherwise.
    std::size_t rank() const;
    friend bool operator==(const Submodule& a, const Submodule& b) { return a.rows_ == b.rows_; }

private:
    CoeffRing ring_;
    std::size_t n_ = 0;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

/// Coordinates of v in the given independent vectors (field rings only); nullopt if v is outside their span.
std::optional<Vec> solve_in_span(const CoeffRing& ring, const std::vector<Vec>& basis, const Vec& v);

Submodule ideal_generated_by(const LieRing& l, const std::vector<Vec>& s);

struct Quotient {
    LiePtr ring;
    Submodule ideal;
    std::vector<std::size_t> complement;  // indices of the standard basis vectors kept
    Vec project(const Vec& v) const;
};
/// Quotient by an ideal; supported over fields.
Quotient quotient(const LiePtr& l, const Submodule& ideal);
LieEndo induced_endo(const Quotient& q, const LieEndo& gamma);

std::vector<Submodule> lower_central_series_lie(const LieRing& l);
std::vector<Submodule> derived_series_lie(const LieRing& l);
/// Least c with Gamma_{c+1} = 0; nullopt when the series stalls above zero.
std::optional<std::size_t> class_lie(const LieRing& l);
/// Least s with Delta_s = 0 where Delta_0 = L.
std::optional<std::size_t> derived_length_lie(const LieRing& l);

// ---- free nilpotent Lie algebras ----

struct HallElement {
    std::string label;
    std::size_t degree = 1;
    std::optional<std::size_t> left, right;  // set for brackets
};

struct HallBasis {
    std::size_t generators = 0;
    std::size_t klass = 0;
    std::vector<HallElement> elements;
    std::vector<std::size_t> per_degree;  // per_degree[d - 1] = number of elements of degree d
};

struct FreeNilpotent {
    LiePtr ring;
    HallBasis hall;
};

/// Necklace count (1/n) sum_{d | n} mu(d) g^{n/d}.
Int witt_dimension(std::size_t g, std::size_t n);
FreeNilpotent free_nilpotent(std::size_t g, std::size_t k, std::size_t dimension_cap = 200);
/// Column j of m is the image of generator x_{j+1} in generator coordinates.
LieEndo extend_endomorphism(const FreeNilpotent& f, const RatMatrix& m);

struct FreeQuotientConstruction {
    FreeNilpotent free;
    LieEndo alpha;
    Submodule ideal;
    Quotient quotient;
    LieEndo induced;
    std::optional<std::size_t> quotient_class;
    bool r_vanishes_on_quotient = false;
};
/// F = free k-step nilpotent on g generators, alpha extending m, I the ideal
/// generated by the image of r(alpha), and the induced map on F / I.
FreeQuotientConstruction free_quotient_construction(std::size_t g, std::size_t k, const RatMatrix& m,
                                                    const IntPoly& r);

// ---- class-2 groups and rings from constructions ----

struct GoldenLie {
    LiePtr ring;
    LieEndo alpha;
};
/// Rank 3 with [e1, e2] = 2 e3 and alpha(e1) = e2, alpha(e2) = e1 + e2, alpha(e3) = -e3.
GoldenLie golden_lie_ring(const CoeffRing& ring);

/// Same structure constants read in Z/m; denominators must be invertible mod m.
LiePtr reduce_mod(const LieRing& l, unsigned long m);
LieEndo reduce_mod(const LieEndo& gamma, const LiePtr& target);

/// Group on (Z/m)^rank with x * y = x + y + [x, y] / 2.
GroupPtr bch_group(const LieRing& l);
/// The group automorphism x -> gamma(x) of a BCH group.
GroupMap bch_automorphism(const GroupPtr& g, const LieEndo& gamma);

struct MalcevVerdict {
    bool pass = false;
    RatPoly chi;
    std::vector<RatPoly> factor_polys;
    bool integral = false;
    std::optional<std::size_t> power;  // least N with chi | (prod r_i)^N
};
/// Characteristic polynomial of gamma along the lower central factors of a nilpotent L over Q.
MalcevVerdict malcev_charpoly_check(const LieEndo& gamma, const std::vector<IntPoly>& identities);

// ---- gradings ----

/// Finite abelian group written multiplicatively: a product of cyclic groups
/// (tuples added componentwise) or the unit group mod n (residues multiplied).
struct AbelianDescriptor {
    enum class Kind { CyclicProduct, UnitsMod };
    using Elem = std::vector<long>;

    Kind kind = Kind::CyclicProduct;
    std::vector<unsigned> moduli;  // for UnitsMod: {n}

    static AbelianDescriptor cyclic(std::vector<unsigned> moduli);
    static AbelianDescriptor units(unsigned n);
    Elem identity() const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem canonical(Elem a) const;
    std::vector<Elem> elements() const;
    std::size_t order() const;
    std::string to_string(const Elem& e) const;
};

struct AfCheck {
    bool af = false;
    std::optional<std::pair<AbelianDescriptor::Elem, AbelianDescriptor::Elem>> witness;  // (lambda, mu)
};
/// No lambda, mu in X with lambda, lambda mu, ..., lambda mu^{|X|} all in X.
AfCheck af_subset_check(const AbelianDescriptor& group, const std::vector<AbelianDescriptor::Elem>& x);

/// Support X of a grading: values in a concrete group, or formal names with a
/// partial product table (missing entries lie outside X).
struct LabelSupport {
    std::vector<std::string> names;
    std::optional<AbelianDescriptor> group;
    std::vector<AbelianDescriptor::Elem> values;
    std::vector<std::vector<std::optional<std::size_t>>> table;

    static LabelSupport concrete(const AbelianDescriptor& g, std::vector<AbelianDescriptor::Elem> values);
    static LabelSupport formal(std::vector<std::string> names, std::vector<std::vector<std::optional<std::size_t>>> table);
    std::size_t size() const { return names.size(); }
    std::optional<std::size_t> product(std::size_t a, std::size_t b) const;
    /// Progression search through the product rule; returns the offending (lambda, mu) indices.
    std::optional<std::pair<std::size_t, std::size_t>> progression() const;
};

struct GradedLieRing {
    LiePtr ring;
    LabelSupport support;
    std::vector<std::size_t> labels;  // support index of each basis vector
    /// [e_i, e_j] lies in the span of vectors labeled label_i * label_j, or vanishes outside the support.
    bool grading_holds() const;
};

struct ClassBoundVerdict {
    bool pass = false;
    std::size_t support_size = 0;
    std::optional<std::size_t> klass;
    std::optional<std::size_t> derived_length;
    Int class_bound;    // |X|^(2^|X|)
    Int derived_bound;  // 2^|X|
};
ClassBoundVerdict graded_class_bound_check(const GradedLieRing& k);

struct EigenspaceGrading {
    GradedLieRing graded;
    LieEndo endo;              // gamma in the eigenvector basis
    RatMatrix change_of_basis;  // columns: the new basis in old coordinates
    std::vector<long> roots;
    bool grading_verified = false;
    bool nonroot_brackets_vanish = false;
    bool strong_condition = false;  // p does not divide a * Discr* * Prod*
    bool weak_condition = false;    // p does not divide Prod*
};
EigenspaceGrading eigenspace_grading(const LieEndo& gamma, const IntPoly& r);

/// Both sides of the binomial commutator formula, compared exactly.
bool binomial_commutator_check(const LieEndo& gamma, const Rat& lambda, const Rat& mu, const Vec& v, const Vec& w,
                               unsigned m);

struct AssociatedGraded {
    LiePtr ring;
    LieEndo endo;
    std::vector<std::size_t> degree;  // lower-central weight of each basis vector
    unsigned prime = 0;
    unsigned exponent = 0;  // coefficients in Z / prime^exponent
    std::vector<Element> representatives;
};
AssociatedGraded associated_graded_lie_ring(const GroupPtr& g, const GroupMap& gamma);
/// lie_evaluate(r, endo) restricted to each homogeneous component vanishes.
bool identity_vanishes(const AssociatedGraded& a, const IntPoly& r);

// ---- combinatorial lemmas on subset products ----

/// Products of all sub-multisets of b (the empty product included).
std::vector<AbelianDescriptor::Elem> partial_products(const AbelianDescriptor& g,
                                                      const std::vector<AbelianDescriptor::Elem>& b);
/// |S| >= k + 1, or S contains g, g c, ..., g c^k with c among the b_i.
bool growth_or_progression_holds(const AbelianDescriptor& g, const std::vector<AbelianDescriptor::Elem>& b);
/// Some nonempty sub-product a * b_{s(1)} ... b_{s(k)} leaves X.
bool escape_holds(const AbelianDescriptor& g, const std::vector<AbelianDescriptor::Elem>& x,
                  const AbelianDescriptor::Elem& a, const std::vector<AbelianDescriptor::Elem>& b);

struct LemmaStats {
    std::size_t cases = 0;
    std::size_t failures = 0;
};
/// Every multiset of k non-identity elements, 1 <= k <= k_max.
LemmaStats growth_or_progression_exhaustive(const AbelianDescriptor& g, std::size_t k_max);
/// Every AF subset X with |X| <= x_max, every a in X and every multiset b of |X| elements of X.
LemmaStats escape_exhaustive(const AbelianDescriptor& g, std::size_t x_max);

}  // namespace fixfree

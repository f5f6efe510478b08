#include "fixfree/liering.hpp"

#include <algorithm>
#include <map>

#include "fixfree/cyclotomic.hpp"

namespace fixfree {

// ---- coefficient rings ----

CoeffRing CoeffRing::zmod(unsigned long m) {
    if (m < 2) throw AlgebraError(ErrorKind::UnsupportedRing, "modulus must be at least 2");
    return {RingKind::Zmod, m};
}

CoeffRing CoeffRing::parse(const std::string& s) {
    if (s == "Q") return rationals();
    if (s == "Z") return integers();
    if (s.rfind("Zmod:", 0) == 0) {
        try {
            std::size_t used = 0;
            unsigned long m = std::stoul(s.substr(5), &used);
            if (used == s.size() - 5) return zmod(m);
        } catch (const std::logic_error&) {
        }
    }
    throw AlgebraError(ErrorKind::UnsupportedRing, "unknown ring tag '" + s + "'");
}

std::string CoeffRing::name() const {
    switch (kind) {
        case RingKind::Q: return "Q";
        case RingKind::Z: return "Z";
        case RingKind::Zmod: return "Zmod:" + std::to_string(modulus);
    }
    return "?";
}

Rat CoeffRing::normalize(const Rat& x) const {
    switch (kind) {
        case RingKind::Q: return x;
        case RingKind::Z:
            if (x.get_den() != 1) throw AlgebraError(ErrorKind::UnsupportedRing, "non-integer scalar over Z");
            return x;
        case RingKind::Zmod: {
            const Int m(modulus);
            Int num = x.get_num();
            if (x.get_den() != 1) {
                Int inv, den = x.get_den() % m;
                if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
                    throw AlgebraError(ErrorKind::UnsupportedRing, "denominator not invertible modulo " + std::to_string(modulus));
                num *= inv;
            }
            Int r;
            mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
            return Rat(r);
        }
    }
    return x;
}

bool CoeffRing::is_field() const {
    return kind == RingKind::Q || (kind == RingKind::Zmod && is_prime(modulus));
}

namespace {

Rat field_inverse(const CoeffRing& ring, const Rat& x) {
    if (ring.kind == RingKind::Q) return 1 / x;
    Int m(ring.modulus), inv;
    mpz_invert(inv.get_mpz_t(), Int(x.get_num()).get_mpz_t(), m.get_mpz_t());
    return Rat(inv);
}

void require_field(const CoeffRing& ring, const char* what) {
    if (!ring.is_field()) throw AlgebraError(ErrorKind::UnsupportedRing, std::string(what) + " needs Q or a prime field");
}

}  // namespace

Vec normalize(const CoeffRing& ring, Vec v) {
    for (auto& x : v) x = ring.normalize(x);
    return v;
}

RatMatrix normalize(const CoeffRing& ring, RatMatrix m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = ring.normalize(m(i, j));
    return m;
}

bool is_zero_vec(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

Vec apply(const RatMatrix& m, const Vec& v, const CoeffRing& ring) {
    if (m.cols() != v.size()) throw AlgebraError(ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
    Vec out(m.rows(), Rat(0));
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] == 0) continue;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (m(i, j) != 0) out[i] += m(i, j) * v[j];
    }
    return normalize(ring, std::move(out));
}

// ---- Lie rings ----

LieRing::LieRing(CoeffRing ring, std::size_t rank, const std::vector<BracketEntry>& brackets,
                 std::vector<std::string> labels)
    : ring_(ring), n_(rank), labels_(std::move(labels)), table_(rank * rank) {
    if (labels_.empty())
        for (std::size_t i = 0; i < n_; ++i) labels_.push_back("e" + std::to_string(i + 1));
    if (labels_.size() != n_) throw AlgebraError(ErrorKind::InvalidLieRing, "label count differs from the rank");
    std::vector<unsigned char> seen(n_ * n_);
    for (const auto& b : brackets) {
        if (b.i >= b.j || b.j >= n_) throw AlgebraError(ErrorKind::InvalidLieRing, "brackets must be listed with i < j < rank");
        if (seen[b.i * n_ + b.j]) throw AlgebraError(ErrorKind::InvalidLieRing, "bracket listed twice");
        seen[b.i * n_ + b.j] = 1;
        std::map<std::size_t, Rat> acc;
        for (const auto& [k, c] : b.terms) {
            if (k >= n_) throw AlgebraError(ErrorKind::InvalidLieRing, "bracket term index out of range");
            acc[k] += c;
        }
        auto& fwd = table_[b.i * n_ + b.j];
        auto& bwd = table_[b.j * n_ + b.i];
        for (const auto& [k, c] : acc) {
            Rat x = ring_.normalize(c);
            if (x == 0) continue;
            fwd.emplace_back(k, x);
            bwd.emplace_back(k, ring_.normalize(-x));
        }
    }
    // Jacobi on basis triples; antisymmetry holds by storage.
    Vec acc;
    auto add_bracket = [&](const std::vector<std::pair<std::size_t, Rat>>& inner, std::size_t k) {
        for (const auto& [l, c] : inner)
            for (const auto& [m, d] : entry(l, k)) acc[m] += c * d;
    };
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            for (std::size_t k = j + 1; k < n_; ++k) {
                const auto& ij = entry(i, j);
                const auto& jk = entry(j, k);
                const auto& ki = entry(k, i);
                if (ij.empty() && jk.empty() && ki.empty()) continue;
                acc.assign(n_, Rat(0));
                add_bracket(ij, k);
                add_bracket(jk, i);
                add_bracket(ki, j);
                for (auto& x : acc)
                    if (ring_.normalize(x) != 0)
                        throw AlgebraError(ErrorKind::InvalidLieRing,
                                           "Jacobi identity fails on (" + labels_[i] + ", " + labels_[j] + ", " + labels_[k] + ")");
            }
}

Vec LieRing::basis_vector(std::size_t i) const {
    Vec v = zero();
    v.at(i) = 1;
    return v;
}

Vec LieRing::bracket(const Vec& a, const Vec& b) const {
    if (a.size() != n_ || b.size() != n_) throw AlgebraError(ErrorKind::DimensionMismatch, "bracket of wrong-size vectors");
    Vec out = zero();
    for (std::size_t i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (b[j] == 0 || i == j) continue;
            const auto& e = entry(i, j);
            if (e.empty()) continue;
            const Rat coef = a[i] * b[j];
            for (const auto& [k, c] : e) out[k] += coef * c;
        }
    }
    return normalize(ring_, std::move(out));
}

Vec LieRing::basis_bracket(std::size_t i, std::size_t j) const {
    Vec out = zero();
    for (const auto& [k, c] : entry(i, j)) out[k] = c;
    return out;
}

std::vector<BracketEntry> LieRing::brackets() const {
    std::vector<BracketEntry> out;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (!entry(i, j).empty()) out.push_back({i, j, entry(i, j)});
    return out;
}

bool LieRing::is_abelian() const {
    return std::all_of(table_.begin(), table_.end(), [](const auto& e) { return e.empty(); });
}

LieEndo::LieEndo(LiePtr ring, RatMatrix matrix) : ring_(std::move(ring)), m_(std::move(matrix)) {
    const std::size_t n = ring_->rank();
    if (m_.rows() != n || m_.cols() != n) throw AlgebraError(ErrorKind::DimensionMismatch, "endomorphism matrix size");
    m_ = normalize(ring_->ring(), m_);
    std::vector<Vec> img(n);
    for (std::size_t j = 0; j < n; ++j) {
        img[j] = ring_->zero();
        for (std::size_t i = 0; i < n; ++i) img[j][i] = m_(i, j);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if ((*this)(ring_->basis_bracket(i, j)) != ring_->bracket(img[i], img[j]))
                throw AlgebraError(ErrorKind::NotHomomorphism, "matrix does not preserve the bracket");
}

RatMatrix lie_evaluate(const IntPoly& r, const LieEndo& gamma) {
    const std::size_t n = gamma.ring()->rank();
    const CoeffRing& ring = gamma.ring()->ring();
    RatMatrix acc(n, n);
    for (std::size_t i = r.size(); i-- > 0;) {
        acc = normalize(ring, acc * gamma.matrix());
        for (std::size_t d = 0; d < n; ++d) acc(d, d) += Rat(r.coeff(i));
    }
    return normalize(ring, acc);
}

// ---- submodules ----

namespace {

// Reduced row echelon form over a field.
void rref(const CoeffRing& ring, std::vector<Vec>& rows, std::vector<std::size_t>& pivots, std::size_t n) {
    pivots.clear();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        const Rat inv = field_inverse(ring, rows[r][c]);
        for (auto& x : rows[r]) x = ring.normalize(x * inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rat f = rows[i][c];
            for (std::size_t k = c; k < n; ++k) rows[i][k] = ring.normalize(rows[i][k] - f * rows[r][k]);
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
}

// Hermite normal form of the integer row lattice.
void hnf(std::vector<std::vector<Int>>& rows, std::vector<std::size_t>& pivots, std::size_t n) {
    pivots.clear();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
            if (best == rows.size()) break;
            std::swap(rows[best], rows[r]);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                for (std::size_t k = c; k < n; ++k) rows[i][k] -= q * rows[r][k];
                if (rows[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (r == rows.size() || rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (auto& x : rows[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
            if (q != 0)
                for (std::size_t k = c; k < n; ++k) rows[i][k] -= q * rows[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
}

}  // namespace

Submodule Submodule::span(const CoeffRing& ring, std::size_t n, const std::vector<Vec>& vectors) {
    Submodule s;
    s.ring_ = ring;
    s.n_ = n;
    for (const auto& v : vectors)
        if (v.size() != n) throw AlgebraError(ErrorKind::DimensionMismatch, "vector size differs from the ambient rank");
    if (ring.is_field()) {
        std::vector<Vec> rows;
        for (const auto& v : vectors) rows.push_back(normalize(ring, v));
        rref(ring, rows, s.pivots_, n);
        s.rows_ = std::move(rows);
        return s;
    }
    std::vector<std::vector<Int>> rows;
    for (const auto& v : vectors) {
        std::vector<Int> row(n);
        for (std::size_t i = 0; i < n; ++i) row[i] = ring.normalize(v[i]).get_num();
        rows.push_back(std::move(row));
    }
    if (ring.kind == RingKind::Zmod)
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Int> row(n, Int(0));
            row[i] = Int(ring.modulus);
            rows.push_back(std::move(row));
        }
    hnf(rows, s.pivots_, n);
    for (auto& row : rows) {
        Vec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = Rat(row[i]);
        s.rows_.push_back(std::move(v));
    }
    return s;
}

Submodule Submodule::whole(const CoeffRing& ring, std::size_t n) {
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < n; ++i) {
        Vec v(n, Rat(0));
        v[i] = 1;
        basis.push_back(std::move(v));
    }
    return span(ring, n, basis);
}

std::vector<Vec> Submodule::generators() const {
    if (ring_.kind != RingKind::Zmod || ring_.is_field()) return rows_;
    std::vector<Vec> out;
    for (const auto& r : rows_) {
        Vec v = normalize(ring_, r);
        if (!is_zero_vec(v)) out.push_back(std::move(v));
    }
    return out;
}

bool Submodule::is_zero() const { return generators().empty(); }

std::size_t Submodule::rank() const { return generators().size(); }

bool Submodule::contains(const Vec& v0) const {
    if (v0.size() != n_) return false;
    Vec v = normalize(ring_, v0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const std::size_t c = pivots_[r];
        if (v[c] == 0) continue;
        Rat f;
        if (ring_.is_field()) {
            f = v[c];  // pivots are 1 in reduced form
        } else {
            Int q, rem;
            mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), v[c].get_num().get_mpz_t(), rows_[r][c].get_num().get_mpz_t());
            if (rem != 0) return false;
            f = Rat(q);
        }
        for (std::size_t k = c; k < n_; ++k) v[k] -= f * rows_[r][k];
        if (ring_.is_field())
            for (std::size_t k = c; k < n_; ++k) v[k] = ring_.normalize(v[k]);
    }
    return is_zero_vec(v);
}

std::optional<Vec> solve_in_span(const CoeffRing& ring, const std::vector<Vec>& basis, const Vec& v) {
    require_field(ring, "solving");
    const std::size_t k = basis.size(), n = v.size();
    // Rows are coordinates; columns are basis vectors followed by v.
    std::vector<Vec> rows(n, Vec(k + 1, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) rows[i][j] = ring.normalize(basis[j].at(i));
        rows[i][k] = ring.normalize(v[i]);
    }
    std::vector<std::size_t> pivots;
    rref(ring, rows, pivots, k + 1);
    Vec x(k, Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == k) return std::nullopt;
        x[pivots[r]] = rows[r][k];
    }
    return x;
}

Submodule ideal_generated_by(const LieRing& l, const std::vector<Vec>& s) {
    Submodule cur = Submodule::span(l.ring(), l.rank(), s);
    while (true) {
        std::vector<Vec> gens = cur.generators();
        const std::size_t base = gens.size();
        for (std::size_t g = 0; g < base; ++g)
            for (std::size_t j = 0; j < l.rank(); ++j) {
                Vec b = l.bracket(gens[g], l.basis_vector(j));
                if (!is_zero_vec(b)) gens.push_back(std::move(b));
            }
        Submodule next = Submodule::span(l.ring(), l.rank(), gens);
        if (next == cur) return cur;
        cur = std::move(next);
    }
}

Vec Quotient::project(const Vec& v0) const {
    const CoeffRing& r = ideal.ring();
    Vec v = normalize(r, v0);
    const auto& rows = ideal.rows();
    for (const auto& row : rows) {
        std::size_t c = 0;
        while (row[c] == 0) ++c;
        if (v[c] == 0) continue;
        const Rat f = v[c];
        for (std::size_t k = c; k < v.size(); ++k) v[k] = r.normalize(v[k] - f * row[k]);
    }
    Vec out;
    for (std::size_t i : complement) out.push_back(v[i]);
    return out;
}

Quotient quotient(const LiePtr& l, const Submodule& ideal) {
    require_field(l->ring(), "quotient");
    Quotient q{nullptr, ideal, {}};
    std::vector<unsigned char> pivot(l->rank());
    for (const auto& row : ideal.rows()) {
        std::size_t c = 0;
        while (row[c] == 0) ++c;
        pivot[c] = 1;
    }
    for (std::size_t i = 0; i < l->rank(); ++i)
        if (!pivot[i]) q.complement.push_back(i);
    for (const auto& g : ideal.generators())
        for (std::size_t j = 0; j < l->rank(); ++j)
            if (!ideal.contains(l->bracket(g, l->basis_vector(j))))
                throw AlgebraError(ErrorKind::InvalidArgument, "subspace is not an ideal");
    std::vector<BracketEntry> br;
    std::vector<std::string> labels;
    const std::size_t m = q.complement.size();
    for (std::size_t a = 0; a < m; ++a) {
        labels.push_back(l->labels()[q.complement[a]]);
        for (std::size_t b = a + 1; b < m; ++b) {
            Vec p = q.project(l->basis_bracket(q.complement[a], q.complement[b]));
            BracketEntry e{a, b, {}};
            for (std::size_t k = 0; k < m; ++k)
                if (p[k] != 0) e.terms.emplace_back(k, p[k]);
            if (!e.terms.empty()) br.push_back(std::move(e));
        }
    }
    q.ring = std::make_shared<LieRing>(l->ring(), m, br, labels);
    return q;
}

LieEndo induced_endo(const Quotient& q, const LieEndo& gamma) {
    for (const auto& g : q.ideal.generators())
        if (!q.ideal.contains(gamma(g))) throw AlgebraError(ErrorKind::InvalidArgument, "ideal is not invariant");
    const std::size_t m = q.complement.size();
    RatMatrix mat(m, m);
    for (std::size_t b = 0; b < m; ++b) {
        Vec e(gamma.ring()->rank(), Rat(0));
        e[q.complement[b]] = 1;
        Vec img = q.project(gamma(e));
        for (std::size_t a = 0; a < m; ++a) mat(a, b) = img[a];
    }
    return LieEndo(q.ring, mat);
}

std::vector<Submodule> lower_central_series_lie(const LieRing& l) {
    std::vector<Submodule> s{Submodule::whole(l.ring(), l.rank())};
    while (!s.back().is_zero()) {
        std::vector<Vec> gens;
        for (const auto& g : s.back().generators())
            for (std::size_t j = 0; j < l.rank(); ++j) gens.push_back(l.bracket(g, l.basis_vector(j)));
        Submodule next = Submodule::span(l.ring(), l.rank(), gens);
        if (next == s.back()) break;
        s.push_back(std::move(next));
    }
    return s;
}

std::vector<Submodule> derived_series_lie(const LieRing& l) {
    std::vector<Submodule> s{Submodule::whole(l.ring(), l.rank())};
    while (!s.back().is_zero()) {
        const auto g = s.back().generators();
        std::vector<Vec> gens;
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = a + 1; b < g.size(); ++b) gens.push_back(l.bracket(g[a], g[b]));
        Submodule next = Submodule::span(l.ring(), l.rank(), gens);
        if (next == s.back()) break;
        s.push_back(std::move(next));
    }
    return s;
}

std::optional<std::size_t> class_lie(const LieRing& l) {
    auto s = lower_central_series_lie(l);
    if (!s.back().is_zero()) return std::nullopt;
    return s.size() - 1;
}

std::optional<std::size_t> derived_length_lie(const LieRing& l) {
    auto s = derived_series_lie(l);
    if (!s.back().is_zero()) return std::nullopt;
    return s.size() - 1;
}

// ---- free nilpotent Lie algebras ----

namespace {

int moebius(std::size_t n) {
    int mu = 1;
    for (auto p : prime_factors(n)) {
        if ((n / p) % p == 0) return 0;
        mu = -mu;
    }
    return mu;
}

using Expansion = std::map<std::string, Rat>;  // noncommutative polynomial, words over generator indices

Expansion commutator(const Expansion& a, const Expansion& b) {
    Expansion out;
    for (const auto& [u, x] : a)
        for (const auto& [v, y] : b) {
            out[u + v] += x * y;
            out[v + u] -= x * y;
        }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

// Square matrix inverse over Q by Gauss-Jordan.
RatMatrix invert(const RatMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<Vec> rows(n, Vec(2 * n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
        rows[i][n + i] = 1;
    }
    std::vector<std::size_t> pivots;
    rref(CoeffRing::rationals(), rows, pivots, 2 * n);
    if (pivots.size() != n || pivots.back() != n - 1) throw AlgebraError(ErrorKind::InvalidArgument, "singular matrix");
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = rows[i][n + j];
    return inv;
}

}  // namespace

Int witt_dimension(std::size_t g, std::size_t n) {
    if (n == 0) throw AlgebraError(ErrorKind::InvalidArgument, "degree must be positive");
    Int sum = 0;
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d) continue;
        const int mu = moebius(d);
        if (!mu) continue;
        Int p;
        mpz_ui_pow_ui(p.get_mpz_t(), g, n / d);
        sum += mu * p;
    }
    return sum / static_cast<unsigned long>(n);
}

FreeNilpotent free_nilpotent(std::size_t g, std::size_t k, std::size_t dimension_cap) {
    if (g < 1 || k < 1) throw AlgebraError(ErrorKind::InvalidArgument, "need at least one generator and class at least 1");
    Int total = 0;
    for (std::size_t d = 1; d <= k; ++d) total += witt_dimension(g, d);
    if (total > Int(static_cast<unsigned long>(dimension_cap)))
        throw AlgebraError(ErrorKind::DimensionCap, "free nilpotent dimension " + total.get_str() + " exceeds the cap");

    HallBasis hall;
    hall.generators = g;
    hall.klass = k;
    std::vector<Expansion> expansion;
    for (std::size_t i = 0; i < g; ++i) {
        hall.elements.push_back({"x" + std::to_string(i + 1), 1, std::nullopt, std::nullopt});
        expansion.push_back({{std::string(1, static_cast<char>(i)), Rat(1)}});
    }
    hall.per_degree.push_back(g);
    for (std::size_t d = 2; d <= k; ++d) {
        const std::size_t before = hall.elements.size();
        for (std::size_t u = 0; u < before; ++u)
            for (std::size_t v = 0; v < u; ++v) {
                if (hall.elements[u].degree + hall.elements[v].degree != d) continue;
                const auto& ue = hall.elements[u];
                if (ue.right && *ue.right > v) continue;
                hall.elements.push_back({"[" + ue.label + "," + hall.elements[v].label + "]", d, u, v});
                expansion.push_back(commutator(expansion[u], expansion[v]));
            }
        hall.per_degree.push_back(hall.elements.size() - before);
    }
    const std::size_t n = hall.elements.size();

    // Per degree: pivot words and the inverse of the pivot submatrix.
    std::vector<std::size_t> first(k + 2, 0);
    for (std::size_t d = 1; d <= k; ++d) first[d + 1] = first[d] + hall.per_degree[d - 1];
    std::vector<std::vector<std::string>> pivot_words(k + 1);
    std::vector<RatMatrix> pivot_inverse(k + 1);
    for (std::size_t d = 1; d <= k; ++d) {
        const std::size_t lo = first[d], cnt = hall.per_degree[d - 1];
        if (cnt == 0) continue;
        std::vector<std::string> words;
        for (std::size_t i = lo; i < lo + cnt; ++i)
            for (const auto& [w, c] : expansion[i]) words.push_back(w);
        std::sort(words.begin(), words.end());
        words.erase(std::unique(words.begin(), words.end()), words.end());
        std::vector<Vec> rows(cnt, Vec(words.size(), Rat(0)));
        for (std::size_t i = 0; i < cnt; ++i)
            for (const auto& [w, c] : expansion[lo + i])
                rows[i][std::lower_bound(words.begin(), words.end(), w) - words.begin()] = c;
        std::vector<Vec> reduced = rows;
        std::vector<std::size_t> pivots;
        rref(CoeffRing::rationals(), reduced, pivots, words.size());
        if (pivots.size() != cnt) throw AlgebraError(ErrorKind::InvalidLieRing, "Hall expansions are dependent");
        RatMatrix sub(cnt, cnt);  // sub(w, i) = coefficient of pivot word w in element i
        for (std::size_t a = 0; a < cnt; ++a) {
            pivot_words[d].push_back(words[pivots[a]]);
            for (std::size_t i = 0; i < cnt; ++i) sub(a, i) = rows[i][pivots[a]];
        }
        pivot_inverse[d] = invert(sub);
    }

    std::vector<BracketEntry> br;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::size_t d = hall.elements[i].degree + hall.elements[j].degree;
            if (d > k) continue;
            const Expansion c = commutator(expansion[i], expansion[j]);
            if (c.empty()) continue;
            const std::size_t cnt = hall.per_degree[d - 1];
            BracketEntry e{i, j, {}};
            for (std::size_t a = 0; a < cnt; ++a) {
                Rat x = 0;
                for (std::size_t b = 0; b < cnt; ++b) {
                    auto it = c.find(pivot_words[d][b]);
                    if (it != c.end()) x += pivot_inverse[d](a, b) * it->second;
                }
                if (x != 0) e.terms.emplace_back(first[d] + a, x);
            }
            br.push_back(std::move(e));
        }
    std::vector<std::string> labels;
    for (const auto& e : hall.elements) labels.push_back(e.label);
    return FreeNilpotent{std::make_shared<LieRing>(CoeffRing::rationals(), n, br, labels), std::move(hall)};
}

LieEndo extend_endomorphism(const FreeNilpotent& f, const RatMatrix& m) {
    const std::size_t g = f.hall.generators, n = f.ring->rank();
    if (m.rows() != g || m.cols() != g) throw AlgebraError(ErrorKind::DimensionMismatch, "matrix must be g x g");
    std::vector<Vec> img(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& e = f.hall.elements[i];
        if (!e.left) {
            img[i] = f.ring->zero();
            for (std::size_t r = 0; r < g; ++r) img[i][r] = m(r, i);
        } else {
            img[i] = f.ring->bracket(img[*e.left], img[*e.right]);
        }
    }
    RatMatrix mat(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) mat(i, j) = img[j][i];
    return LieEndo(f.ring, mat);
}

FreeQuotientConstruction free_quotient_construction(std::size_t g, std::size_t k, const RatMatrix& m,
                                                    const IntPoly& r) {
    FreeNilpotent f = free_nilpotent(g, k);
    LieEndo alpha = extend_endomorphism(f, m);
    const RatMatrix ra = lie_evaluate(r, alpha);
    std::vector<Vec> image;
    for (std::size_t j = 0; j < ra.cols(); ++j) {
        Vec col(ra.rows());
        for (std::size_t i = 0; i < ra.rows(); ++i) col[i] = ra(i, j);
        image.push_back(std::move(col));
    }
    Submodule ideal = ideal_generated_by(*f.ring, image);
    Quotient q = quotient(f.ring, ideal);
    LieEndo induced = induced_endo(q, alpha);
    auto cls = class_lie(*q.ring);
    const bool vanishes = lie_evaluate(r, induced).is_zero();
    return FreeQuotientConstruction{std::move(f), std::move(alpha), std::move(ideal), std::move(q),
                                    std::move(induced), cls, vanishes};
}

// ---- class-2 constructions ----

GoldenLie golden_lie_ring(const CoeffRing& ring) {
    auto l = std::make_shared<LieRing>(ring, 3, std::vector<BracketEntry>{{0, 1, {{2, Rat(2)}}}},
                                       std::vector<std::string>{"e1", "e2", "e3"});
    RatMatrix a(3, 3);
    a(1, 0) = 1;
    a(0, 1) = 1;
    a(1, 1) = 1;
    a(2, 2) = -1;
    return GoldenLie{l, LieEndo(l, a)};
}

LiePtr reduce_mod(const LieRing& l, unsigned long m) {
    return std::make_shared<LieRing>(CoeffRing::zmod(m), l.rank(), l.brackets(), l.labels());
}

LieEndo reduce_mod(const LieEndo& gamma, const LiePtr& target) {
    return LieEndo(target, normalize(target->ring(), gamma.matrix()));
}

namespace {

std::vector<long> as_longs(const CoeffRing& ring, const Vec& v) {
    std::vector<long> out;
    for (const auto& x : v) out.push_back(ring.normalize(x).get_num().get_si());
    return out;
}

}  // namespace

GroupPtr bch_group(const LieRing& l) {
    const CoeffRing& ring = l.ring();
    if (ring.kind != RingKind::Zmod) throw AlgebraError(ErrorKind::UnsupportedRing, "BCH groups need coefficients in Z/m");
    const unsigned long m = ring.modulus;
    if (m % 2 == 0) throw AlgebraError(ErrorKind::EvenModulus, "BCH needs 2 invertible");
    auto cls = class_lie(l);
    if (!cls || *cls > 2) throw AlgebraError(ErrorKind::ClassTooHigh, "BCH is implemented for class at most 2");
    const std::size_t n = l.rank();
    const long half = static_cast<long>((m + 1) / 2);
    // c[i][j][k] with i < j, as residues.
    std::vector<long> c(n * n * n, 0);
    for (const auto& e : l.brackets())
        for (const auto& [k, x] : e.terms) {
            const long v = ring.normalize(x).get_num().get_si();
            c[(e.i * n + e.j) * n + k] = v;
            c[(e.j * n + e.i) * n + k] = (static_cast<long>(m) - v) % static_cast<long>(m);
        }
    std::vector<unsigned> radix(n, static_cast<unsigned>(m));
    auto probe = FiniteGroup::abelian(radix);
    const long mm = static_cast<long>(m);
    return FiniteGroup::from_law("BCH" + std::to_string(m) + "^" + std::to_string(n), GroupFamily::Bch, radix,
                                 [=](Element a, Element b) {
                                     auto x = probe->decode(a), y = probe->decode(b);
                                     std::vector<unsigned> z(n);
                                     std::vector<long> br(n, 0);
                                     for (std::size_t i = 0; i < n; ++i) {
                                         if (!x[i]) continue;
                                         for (std::size_t j = 0; j < n; ++j) {
                                             if (!y[j] || i == j) continue;
                                             const long f = static_cast<long>(x[i]) * y[j] % mm;
                                             for (std::size_t k = 0; k < n; ++k)
                                                 br[k] = (br[k] + f * c[(i * n + j) * n + k]) % mm;
                                         }
                                     }
                                     for (std::size_t k = 0; k < n; ++k)
                                         z[k] = static_cast<unsigned>((x[k] + y[k] + half * br[k]) % mm);
                                     return probe->encode(z);
                                 });
}

GroupMap bch_automorphism(const GroupPtr& g, const LieEndo& gamma) {
    if (g->family() != GroupFamily::Bch) throw AlgebraError(ErrorKind::InvalidArgument, "needs a BCH group");
    const CoeffRing& ring = gamma.ring()->ring();
    const std::size_t n = gamma.ring()->rank();
    if (g->radix().size() != n || ring.kind != RingKind::Zmod || g->radix()[0] != ring.modulus)
        throw AlgebraError(ErrorKind::DimensionMismatch, "endomorphism does not match the group");
    return GroupMap::from_function(g, [&](Element e) {
        auto t = g->decode(e);
        Vec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = t[i];
        auto w = as_longs(ring, gamma(v));
        std::vector<unsigned> u(w.begin(), w.end());
        return g->encode(u);
    });
}

MalcevVerdict malcev_charpoly_check(const LieEndo& gamma, const std::vector<IntPoly>& identities) {
    const LieRing& l = *gamma.ring();
    if (l.ring().kind != RingKind::Q) throw AlgebraError(ErrorKind::UnsupportedRing, "the check runs over Q");
    if (identities.empty()) throw AlgebraError(ErrorKind::HypothesisViolated, "no identities supplied");
    for (const auto& r : identities)
        if (r.is_zero() || r.leading() != 1) throw AlgebraError(ErrorKind::HypothesisViolated, "identities must be monic");
    auto series = lower_central_series_lie(l);
    if (!series.back().is_zero()) throw AlgebraError(ErrorKind::HypothesisViolated, "Lie ring is not nilpotent");

    MalcevVerdict v;
    v.chi = RatPoly::constant(Rat(1));
    const CoeffRing q = CoeffRing::rationals();
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        std::vector<Vec> basis = series[i + 1].rows();
        const std::size_t low = basis.size();
        for (const auto& row : series[i].rows())
            if (!solve_in_span(q, basis, row)) basis.push_back(row);
        const std::size_t d = basis.size() - low;
        RatMatrix m(d, d);
        for (std::size_t b = 0; b < d; ++b) {
            auto x = solve_in_span(q, basis, gamma(basis[low + b]));
            if (!x) throw AlgebraError(ErrorKind::HypothesisViolated, "series term is not invariant");
            for (std::size_t a = 0; a < d; ++a) m(a, b) = (*x)[low + a];
        }
        RatPoly f = char_poly(m);
        v.factor_polys.push_back(f);
        v.chi *= f;
    }
    v.integral = std::all_of(v.chi.coeffs().begin(), v.chi.coeffs().end(), [](const Rat& c) { return c.get_den() == 1; });
    IntPoly s = IntPoly::constant(1);
    for (const auto& r : identities) s *= r;
    RatPoly sp = to_rat(s), acc = RatPoly::constant(Rat(1));
    for (std::size_t n = 1; n <= std::max<std::size_t>(l.rank(), 1); ++n) {
        acc *= sp;
        if (divmod(acc, v.chi).second.is_zero()) {
            v.power = n;
            break;
        }
    }
    v.pass = v.integral && v.power.has_value();
    return v;
}

}  // namespace fixfree

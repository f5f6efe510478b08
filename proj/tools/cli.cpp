#include "fixfree/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fixfree/cyclotomic.hpp"
#include "fixfree/groups.hpp"
#include "fixfree/invariants.hpp"
#include "fixfree/liering.hpp"
#include "fixfree/polyparse.hpp"

namespace fixfree::cli {

using json = nlohmann::json;

namespace {

constexpr const char* kSchemaVersion = "1";
constexpr const char* kDefaultPoly = "t^3-2*t-1";

// Bad user input: flags, files, or values the library rejects while building inputs.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// What a command handler produces; `verdict` is false when a verified predicate fails.
struct Outcome {
    json results = json::object();
    bool verdict = true;
};

std::string str(const Int& x) { return x.get_str(); }
std::string poly(const IntPoly& p) { return to_string(p); }
std::string poly(const RatPoly& p) { return to_string(p); }

json opt_size(const std::optional<std::size_t>& v) { return v ? json(std::to_string(*v)) : json(nullptr); }

IntPoly parse_poly_arg(const std::string& text) { return parse_polynomial(text); }

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

// Integer written as a JSON number or a decimal string.
Int json_int(const json& j) {
    if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
    if (j.is_string()) return Int(j.get<std::string>());
    throw UsageError("expected an integer, got " + j.dump());
}

Rat json_rat(const json& j) {
    if (j.is_number_integer()) return Rat(json_int(j));
    if (j.is_string()) {
        Rat r(j.get<std::string>());
        r.canonicalize();
        return r;
    }
    throw UsageError("expected an integer or a fraction string, got " + j.dump());
}

// Small prime factorization for display, e.g. "3^28 * 5^14"; large cofactors are left whole.
std::string factored(Int x) {
    if (x == 0) return "0";
    std::string out;
    auto append = [&](const std::string& s) { out += (out.empty() || out == "-" ? "" : " * ") + s; };
    if (x < 0) {
        out = "-";
        x = -x;
    }
    if (x == 1) return out + "1";
    for (unsigned long p = 2; p < 100000 && x > 1; ++p) {
        if (!mpz_divisible_ui_p(x.get_mpz_t(), p)) continue;
        unsigned e = 0;
        while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
            mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
            ++e;
        }
        append(std::to_string(p) + (e > 1 ? "^" + std::to_string(e) : ""));
    }
    if (x > 1) append(str(x));
    return out;
}

// ---- polynomial invariants ----

json goodness_json(bool good, const std::optional<GoodnessWitness>& w) {
    json j{{"good", good}};
    if (w) j["witness"] = {{"u", std::to_string(w->u)}, {"s", poly(w->s)}, {"r0_zero", w->r0_zero}, {"r1_zero", w->r1_zero}};
    else j["witness"] = nullptr;
    return j;
}

json af_json(bool af, const std::optional<AfWitness>& w) {
    json j{{"roots_af", af}};
    if (w)
        j["witness"] = {{"u", std::to_string(w->u)},
                        {"cyclotomic_index", std::to_string(w->cyclotomic_index)},
                        {"s", poly(w->s)}};
    else j["witness"] = nullptr;
    return j;
}

json report_json(const InvariantReport& rep) {
    json rres = json::array();
    for (const auto& [u, v] : rep.rres_table) rres.push_back({{"u", std::to_string(u)}, {"rres", str(v)}});
    return {{"polynomial", poly(rep.r)},
            {"r_at_1", str(rep.r_at_1)},
            {"tcn", str(rep.tcn)},
            {"discr_star", str(rep.discr_star)},
            {"prod_star", str(rep.prod_star)},
            {"rres_table", rres},
            {"goodness", goodness_json(rep.good, rep.good_witness)},
            {"arithmetic_freeness", af_json(rep.roots_af, rep.af_witness)}};
}

Outcome cmd_invariants(const std::string& expr) {
    return {report_json(invariant_report(parse_poly_arg(expr)))};
}

Outcome cmd_rres(const std::string& expr, std::size_t u) {
    const IntPoly r = parse_poly_arg(expr);
    Outcome o;
    json parts = json::array();
    for (std::size_t j = 0; j < u; ++j) parts.push_back(poly(partial_sum(r, u, j)));
    o.results = {{"polynomial", poly(r)},
                 {"u", std::to_string(u)},
                 {"partial_sums", parts},
                 {"periodic_gcd", poly(periodic_gcd(r, u))},
                 {"rres", str(rres(r, u))}};
    return o;
}

Outcome cmd_good(const std::string& expr) {
    const IntPoly r = parse_poly_arg(expr);
    const auto v = is_good(r);
    json j = goodness_json(v.good, v.witness);
    j["polynomial"] = poly(r);
    return {j};
}

Outcome cmd_af_roots(const std::string& expr) {
    const IntPoly r = parse_poly_arg(expr);
    const auto v = roots_arithmetically_free(r);
    json j = af_json(v.af, v.witness);
    j["polynomial"] = poly(r);
    return {j};
}

json checks_json(const std::vector<ClosedFormCheck>& checks, bool& all) {
    json arr = json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
        all = all && c.pass;
    }
    return arr;
}

ClosedFormCheck check_equal(const std::string& name, const Int& expected, const Int& actual) {
    return {name, str(expected), str(actual), expected == actual};
}

Outcome cmd_cyclotomic(std::size_t n, bool with_invariants) {
    if (n == 0) throw UsageError("n must be positive");
    const CycloRecord rec = cyclo_record(n);
    const CycloIdentityCheck ids = verify_cyclo_identities(n);
    Outcome o;
    json div = json::array();
    for (const auto& [p, ok] : ids.division_identities) div.push_back({{"prime", std::to_string(p)}, {"holds", ok}});
    o.results = {{"n", std::to_string(n)},
                 {"radical", std::to_string(rec.radical)},
                 {"euler_phi", std::to_string(rec.euler_phi)},
                 {"phi", poly(rec.phi_n)},
                 {"identities",
                  {{"degree_is_phi", ids.degree_is_phi},
                   {"divisor_product", ids.divisor_product},
                   {"split_relation", ids.split_relation},
                   {"radical_substitution", ids.radical_substitution},
                   {"division_identities", div},
                   {"even_identity", ids.even_identity ? json(*ids.even_identity) : json(nullptr)},
                   {"value_at_one", str(ids.value_at_one)},
                   {"value_in_one_or_radical", ids.value_in_one_or_radical},
                   {"all_hold", ids.all_hold}}}};
    o.verdict = ids.all_hold;
    if (with_invariants) {
        const InvariantReport rep = invariant_report(rec.phi_n);
        bool all = true;
        std::vector<ClosedFormCheck> checks{check_equal("tcn", Int(is_squarefree(n) ? 1 : 0), rep.tcn)};
        o.results["invariants"] = report_json(rep);
        const Int dp = rep.discr_star * rep.prod_star;
        o.results["discr_prod"] = str(dp);
        o.results["discr_prod_factored"] = factored(dp);
        o.results["checks"] = checks_json(checks, all);
        o.verdict = o.verdict && all;
    }
    return o;
}

Outcome cmd_split(std::size_t n, bool with_invariants) {
    if (n < 2) throw UsageError("n must be at least 2");
    const IntPoly psi = split_polynomial(n);
    Outcome o;
    o.results = {{"n", std::to_string(n)}, {"psi", poly(psi)}, {"prime", is_prime(n)}};
    if (with_invariants) {
        const InvariantReport rep = invariant_report(psi);
        Int nd(static_cast<unsigned long>(n)), d2, d1;
        mpz_pow_ui(d2.get_mpz_t(), nd.get_mpz_t(), n - 2);
        mpz_pow_ui(d1.get_mpz_t(), nd.get_mpz_t(), n - 1);
        const bool composite = !is_prime(n);
        std::vector<ClosedFormCheck> checks{
            check_equal("discr_star", d2, rep.discr_star),
            check_equal("prod_star", d1, rep.prod_star),
            {"tcn_zero_iff_composite", composite ? "true" : "false", rep.tcn == 0 ? "true" : "false",
             composite == (rep.tcn == 0)}};
        bool all = true;
        o.results["invariants"] = report_json(rep);
        o.results["checks"] = checks_json(checks, all);
        o.verdict = all;
    }
    return o;
}

// ---- groups ----

json deco_json(const IdentityDecomposition& d) {
    json parts = json::array();
    for (const auto& p : d.parts) parts.push_back(poly(p));
    return {{"parts", parts}, {"sum", poly(d.sum())}};
}

json theorem_json(const TheoremVerdict& v) {
    return {{"pass", v.pass},
            {"branch", v.branch},
            {"torsion_modulus", str(v.torsion_modulus)},
            {"has_torsion", v.has_torsion},
            {"nilpotency_class", opt_size(v.nilpotency_class)},
            {"class_bound", v.class_bound ? json(str(*v.class_bound)) : json(nullptr)},
            {"notes", v.notes}};
}

json solvable_json(const SolvableVerdict& v) {
    return {{"pass", v.pass},
            {"n", str(v.n)},
            {"s_order", std::to_string(v.s_order)},
            {"s_is_n_group", v.s_is_n_group},
            {"quotient_class", opt_size(v.quotient_class)},
            {"quotient_has_n_torsion", v.quotient_has_n_torsion}};
}

// Runs a verifier, recording it as not applicable when its hypotheses are not met.
template <class F>
json run_verifier(F&& f, bool& verdict) {
    try {
        json j = f();
        j["applicable"] = true;
        verdict = verdict && j["pass"].get<bool>();
        return j;
    } catch (const AlgebraError& e) {
        if (e.kind() != ErrorKind::HypothesisViolated && e.kind() != ErrorKind::BoundExceeded) throw;
        return {{"applicable", false}, {"reason", e.what()}};
    }
}

GroupPtr cayley_group(const json& doc) {
    if (!doc.contains("table")) throw UsageError("table document needs a 'table' array");
    std::vector<std::vector<Element>> table;
    for (const auto& row : doc.at("table")) {
        std::vector<Element> r;
        for (const auto& e : row) r.push_back(e.get<Element>());
        table.push_back(std::move(r));
    }
    if (doc.contains("order") && doc.at("order").get<std::size_t>() != table.size())
        throw UsageError("'order' disagrees with the table size");
    return FiniteGroup::from_table(table, doc.value("name", std::string("cayley")));
}

struct GroupInput {
    GroupPtr group;
    std::optional<GroupMap> map;
};

GroupInput build_group(const std::string& family, unsigned m, const std::string& autom, const std::string& table_path,
                       const std::string& images_path) {
    try {
        GroupInput in;
        if (family == "heisenberg") in.group = FiniteGroup::heisenberg(m);
        else if (family == "twisted") in.group = FiniteGroup::twisted_heisenberg(m);
        else if (family == "bch") {
            const GoldenLie gl = golden_lie_ring(CoeffRing::zmod(m));
            in.group = bch_group(*gl.ring);
            if (autom == "golden") in.map = bch_automorphism(in.group, gl.alpha);
        } else if (family == "cayley") {
            if (table_path.empty()) throw UsageError("cayley needs --table FILE");
            in.group = cayley_group(read_json_file(table_path));
        } else throw UsageError("unknown group family '" + family + "'");

        if (in.map) return in;
        if (autom == "golden") {
            if (family == "heisenberg") in.map = heisenberg_golden_automorphism(in.group);
            else if (family == "twisted") in.map = twisted_golden_automorphism(in.group);
            else throw UsageError("--auto golden is defined for heisenberg, twisted and bch");
        } else if (autom == "identity") {
            in.map = GroupMap::identity(in.group);
        } else if (autom.rfind("power:", 0) == 0) {
            in.map = power_map(in.group, std::stol(autom.substr(6)));
        } else if (autom == "images") {
            const std::string path = images_path.empty() ? table_path : images_path;
            if (path.empty()) throw UsageError("--auto images needs --images FILE");
            const json doc = read_json_file(path);
            if (!doc.contains("images")) throw UsageError(path + " has no 'images' array");
            in.map = GroupMap(in.group, doc.at("images").get<std::vector<Element>>());
        } else throw UsageError("unknown automorphism '" + autom + "'");
        return in;
    } catch (const AlgebraError& e) {
        throw UsageError(e.what());
    } catch (const json::exception& e) {
        throw UsageError(e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad number: ") + e.what());
    }
}

json group_json(const FiniteGroup& g) {
    return {{"name", g.name()},
            {"family", family_name(g.family())},
            {"order", std::to_string(g.order())},
            {"abelian", g.is_abelian()},
            {"nilpotency_class", opt_size(nilpotency_class(g))},
            {"solvable", is_solvable(g)}};
}

Outcome verify_group_instance(const GroupPtr& gp, const GroupMap& gamma, const IntPoly& r) {
    const FiniteGroup& g = *gp;
    Outcome o;
    const bool automorphism = gamma.is_automorphism();
    const bool fpf = is_fixpoint_free(g, gamma);
    o.results["group"] = group_json(g);
    o.results["polynomial"] = poly(r);
    o.results["automorphism"] = automorphism;
    o.results["fixpoint_free"] = fpf;
    const auto found = find_identity(gp, gamma, r);
    if (!found) {
        o.results["identity"] = {{"holds", false}};
        o.verdict = false;
        return o;
    }
    o.results["identity"] = {{"holds", true}, {"kind", found->kind}, {"decomposition", deco_json(found->deco)}};
    bool ok = true;
    if (automorphism && fpf)
        o.results["theorem_A"] = run_verifier([&] { return theorem_json(verify_theorem_A(g, gamma, found->deco)); }, ok);
    if (nilpotency_class(g))
        o.results["theorem_B"] = run_verifier([&] { return theorem_json(verify_theorem_B(g, gamma, found->deco)); }, ok);
    if (automorphism && fpf && is_solvable(g))
        o.results["solvable_decomposition"] =
            run_verifier([&] { return solvable_json(verify_solvable_decomposition(g, gamma, found->deco)); }, ok);
    o.verdict = ok;
    return o;
}

Outcome cmd_verify_group(const std::string& family, unsigned m, std::string autom, const std::string& poly_text,
                         const std::string& table_path, const std::string& images_path) {
    if (autom.empty()) autom = family == "cayley" ? "images" : "golden";
    const IntPoly r = parse_poly_arg(poly_text);
    GroupInput in = build_group(family, m, autom, table_path, images_path);
    Outcome o = verify_group_instance(in.group, *in.map, r);
    o.results["automorphism_source"] = autom;
    return o;
}

// ---- Lie rings ----

struct LieInput {
    LiePtr ring;
    std::optional<RatMatrix> endo;
};

LieInput read_lie(const std::string& path) {
    const json doc = read_json_file(path);
    try {
        const CoeffRing ring = CoeffRing::parse(doc.value("ring", std::string("Q")));
        const std::size_t n = doc.at("rank").get<std::size_t>();
        std::vector<BracketEntry> brackets;
        for (const auto& b : doc.value("brackets", json::array())) {
            BracketEntry e{b.at(0).get<std::size_t>(), b.at(1).get<std::size_t>(), {}};
            for (const auto& t : b.at(2)) e.terms.emplace_back(t.at(0).get<std::size_t>(), json_rat(t.at(1)));
            brackets.push_back(std::move(e));
        }
        std::vector<std::string> labels = doc.value("labels", std::vector<std::string>{});
        LieInput in{std::make_shared<LieRing>(ring, n, brackets, labels), std::nullopt};
        if (doc.contains("endo")) {
            const auto& rows = doc.at("endo");
            if (rows.size() != n) throw UsageError("'endo' must have rank rows");
            RatMatrix m(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                if (rows.at(i).size() != n) throw UsageError("'endo' must be square");
                for (std::size_t j = 0; j < n; ++j) m(i, j) = json_rat(rows.at(i).at(j));
            }
            in.endo = m;
        }
        return in;
    } catch (const AlgebraError& e) {
        throw UsageError(path + ": " + e.what());
    } catch (const json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

json lie_summary(const LieRing& l) {
    return {{"rank", std::to_string(l.rank())},
            {"ring", l.ring().name()},
            {"abelian", l.is_abelian()},
            {"class", opt_size(class_lie(l))},
            {"derived_length", opt_size(derived_length_lie(l))}};
}

json class_bound_json(const ClassBoundVerdict& v) {
    return {{"pass", v.pass},
            {"support_size", std::to_string(v.support_size)},
            {"class", opt_size(v.klass)},
            {"derived_length", opt_size(v.derived_length)},
            {"class_bound", str(v.class_bound)},
            {"derived_bound", str(v.derived_bound)}};
}

Outcome cmd_verify_lie(const std::string& path, const std::string& poly_text) {
    const IntPoly r = parse_poly_arg(poly_text);
    LieInput in = read_lie(path);
    if (!in.endo) throw UsageError(path + " has no 'endo' matrix");
    std::optional<LieEndo> gamma;
    try {
        gamma.emplace(in.ring, *in.endo);
    } catch (const AlgebraError& e) {
        throw UsageError(path + ": " + e.what());
    }
    const LieRing& l = *in.ring;
    Outcome o;
    o.results["ring"] = lie_summary(l);
    o.results["polynomial"] = poly(r);
    const bool vanishes = lie_evaluate(r, *gamma).is_zero();
    o.results["identity_holds"] = vanishes;
    const auto good = is_good(r);
    o.results["goodness"] = goodness_json(good.good, good.witness);
    if (!vanishes) {
        o.verdict = false;
        return o;
    }

    // Either the additive group has tcn(r)-torsion or the ring is nilpotent of bounded class.
    const Int n = tcn(r);
    bool torsion = false;
    if (l.ring().kind == RingKind::Zmod && l.rank() > 0) {
        Int g;
        const Int m(static_cast<unsigned long>(l.ring().modulus));
        mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
        torsion = g != 1;
    }
    const auto klass = class_lie(l);
    const std::size_t d = r.deg();
    json theorem{{"torsion_modulus", str(n)}, {"has_torsion", torsion}, {"class", opt_size(klass)}};
    if (good.good) {
        Int bound;
        if (d <= 20) {
            Int base(static_cast<unsigned long>(d));
            mpz_pow_ui(bound.get_mpz_t(), base.get_mpz_t(), 1UL << d);
            theorem["class_bound"] = str(bound);
        } else {
            theorem["class_bound"] = nullptr;
        }
        const bool nil = klass && (d > 20 || Int(static_cast<unsigned long>(*klass)) <= bound);
        theorem["branch"] = torsion && nil ? "both" : torsion ? "torsion" : nil ? "nilpotent" : "neither";
        theorem["pass"] = torsion || nil;
        theorem["applicable"] = true;
        o.verdict = torsion || nil;
    } else {
        theorem["applicable"] = false;
        theorem["reason"] = "r is not good";
    }
    o.results["theorem"] = theorem;

    if (l.ring().kind == RingKind::Zmod && is_prime(l.ring().modulus)) {
        try {
            const EigenspaceGrading eg = eigenspace_grading(*gamma, r);
            json labels = json::array();
            for (std::size_t i : eg.graded.labels) labels.push_back(eg.graded.support.names[i]);
            json roots = json::array();
            for (long x : eg.roots) roots.push_back(std::to_string(x));
            json grading{{"roots", roots},
                         {"labels", labels},
                         {"grading_verified", eg.grading_verified},
                         {"nonroot_brackets_vanish", eg.nonroot_brackets_vanish},
                         {"strong_condition", eg.strong_condition},
                         {"weak_condition", eg.weak_condition}};
            try {
                grading["class_bound_check"] = class_bound_json(graded_class_bound_check(eg.graded));
                o.verdict = o.verdict && grading["class_bound_check"]["pass"].get<bool>();
            } catch (const AlgebraError& e) {
                grading["class_bound_check"] = {{"applicable", false}, {"reason", e.what()}};
            }
            o.verdict = o.verdict && eg.grading_verified;
            o.results["eigenspace_grading"] = grading;
        } catch (const AlgebraError& e) {
            if (e.kind() != ErrorKind::DoesNotSplit && e.kind() != ErrorKind::HypothesisViolated) throw;
            o.results["eigenspace_grading"] = {{"applicable", false}, {"reason", e.what()}};
        }
    }
    return o;
}

RatMatrix parse_matrix(const std::string& text) {
    std::vector<std::vector<Rat>> rows;
    std::stringstream rs(text);
    std::string row;
    while (std::getline(rs, row, ';')) {
        std::vector<Rat> r;
        std::stringstream es(row);
        std::string e;
        while (std::getline(es, e, ',')) {
            e.erase(std::remove_if(e.begin(), e.end(), [](unsigned char c) { return std::isspace(c); }), e.end());
            try {
                Rat v(e);
                v.canonicalize();
                r.push_back(v);
            } catch (const std::invalid_argument&) {
                throw UsageError("bad matrix entry '" + e + "'");
            }
        }
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw UsageError("empty matrix");
    RatMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw UsageError("ragged matrix");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Outcome cmd_lie_free_quotient(std::size_t g, std::size_t k, const std::string& matrix, const std::string& poly_text) {
    const IntPoly r = parse_poly_arg(poly_text);
    const RatMatrix m = parse_matrix(matrix);
    if (m.rows() != g || m.cols() != g) throw UsageError("--matrix must be gens x gens");
    const FreeQuotientConstruction fq = free_quotient_construction(g, k, m, r);
    Outcome o;
    json witt = json::array(), hall = json::array();
    for (std::size_t d = 1; d <= k; ++d) {
        witt.push_back(str(witt_dimension(g, d)));
        hall.push_back(std::to_string(fq.free.hall.per_degree.at(d - 1)));
    }
    o.results = {{"generators", std::to_string(g)},
                 {"class", std::to_string(k)},
                 {"polynomial", poly(r)},
                 {"free_dimension", std::to_string(fq.free.ring->rank())},
                 {"hall_per_degree", hall},
                 {"witt_dimensions", witt},
                 {"ideal_rank", std::to_string(fq.ideal.rank())},
                 {"ideal_is_zero", fq.ideal.is_zero()},
                 {"quotient", lie_summary(*fq.quotient.ring)},
                 {"quotient_class", opt_size(fq.quotient_class)},
                 {"r_vanishes_on_quotient", fq.r_vanishes_on_quotient}};
    try {
        const MalcevVerdict mv = malcev_charpoly_check(fq.induced, {r});
        json factors = json::array();
        for (const auto& f : mv.factor_polys) factors.push_back(poly(f));
        o.results["charpoly"] = {{"pass", mv.pass},
                                 {"chi", poly(mv.chi)},
                                 {"factor_polys", factors},
                                 {"integral", mv.integral},
                                 {"power", opt_size(mv.power)}};
    } catch (const AlgebraError& e) {
        o.results["charpoly"] = {{"applicable", false}, {"reason", e.what()}};
    }
    o.verdict = fq.r_vanishes_on_quotient;
    return o;
}

// ---- search and the combined report ----

Outcome cmd_search(std::size_t max_order, const std::string& poly_text, const std::vector<std::string>& families,
                   const std::vector<std::string>& tables) {
    const IntPoly r = parse_poly_arg(poly_text);
    SearchOptions opts;
    if (!families.empty()) opts.families = families;
    for (const auto& t : tables) {
        try {
            opts.extra_groups.push_back(cayley_group(read_json_file(t)));
        } catch (const AlgebraError& e) {
            throw UsageError(t + ": " + e.what());
        }
    }
    if (max_order > opts.max_order) throw UsageError("--max-order is limited to " + std::to_string(opts.max_order));
    const SearchResult res = search_instances(max_order, r, opts);
    Outcome o;
    json instances = json::array();
    std::size_t non_nilpotent = 0;
    bool ok = true;
    for (const auto& inst : res.instances) {
        const FiniteGroup& g = *inst.group;
        const bool nil = nilpotency_class(g).has_value();
        if (!nil) ++non_nilpotent;
        json j{{"group", g.name()}, {"order", std::to_string(g.order())}, {"nilpotent", nil}, {"identity_kind", inst.deco_kind}};
        j["theorem_A"] = run_verifier([&] { return theorem_json(verify_theorem_A(g, inst.alpha, inst.deco)); }, ok);
        instances.push_back(std::move(j));
    }
    json log = json::array();
    for (const auto& l : res.log)
        log.push_back({{"group", l.group},
                       {"order", std::to_string(l.order)},
                       {"fixpoint_free_automorphisms", std::to_string(l.fixpoint_free)},
                       {"matches", std::to_string(l.matches)},
                       {"exhaustive", l.exhaustive}});
    o.results = {{"polynomial", poly(r)},
                 {"max_order", std::to_string(max_order)},
                 {"groups_scanned", std::to_string(res.log.size())},
                 {"instances_found", std::to_string(res.instances.size())},
                 {"non_nilpotent_instances", std::to_string(non_nilpotent)},
                 {"instances", instances},
                 {"log", log}};
    o.verdict = ok;
    return o;
}

Outcome cmd_report(const std::string& expr, std::size_t max_order) {
    const IntPoly r = parse_poly_arg(expr);
    Outcome o;
    o.results["invariants"] = report_json(invariant_report(r));
    const SquareFreeDecomposition sq = squarefree_factorization(r);
    json parts = json::array();
    for (const auto& p : sq.parts) parts.push_back({{"factor", poly(p.u)}, {"multiplicity", std::to_string(p.multiplicity)}});
    o.results["squarefree"] = {{"scalar", str(sq.scalar)}, {"parts", parts}};
    json cyclo = json::array();
    for (std::size_t u = 1; u <= 4 * r.deg() * r.deg() + 2; ++u)
        if (divide_exact(r, cyclotomic(u))) cyclo.push_back(std::to_string(u));
    o.results["cyclotomic_divisors"] = cyclo;
    if (max_order > 0) {
        Outcome s = cmd_search(max_order, expr, {}, {});
        s.results.erase("log");
        s.results.erase("instances");
        o.results["search"] = s.results;
        o.verdict = s.verdict;
    }
    return o;
}

// ---- rendering ----

void render_text(const json& j, std::ostream& out, const std::string& indent) {
    auto scalar = [](const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_null()) return std::string("none");
        return v.dump();
    };
    auto flat = [](const json& v) {
        return std::all_of(v.begin(), v.end(), [](const json& e) { return !e.is_structured(); });
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const json& v = it.value();
        if (!v.is_structured()) {
            out << indent << it.key() << ": " << scalar(v) << "\n";
        } else if (v.is_array() && flat(v)) {
            std::string line;
            for (const auto& e : v) line += (line.empty() ? "" : ", ") + scalar(e);
            out << indent << it.key() << ": [" << line << "]\n";
        } else if (v.is_array()) {
            out << indent << it.key() << ":\n";
            for (const auto& e : v) {
                out << indent << "  -\n";
                render_text(e, out, indent + "    ");
            }
        } else {
            out << indent << it.key() << ":\n";
            render_text(v, out, indent + "  ");
        }
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Identities of automorphisms: polynomial invariants, group and Lie-ring verifiers"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "Emit a JSON report document");

    std::string expr, poly_text = kDefaultPoly, family, autom, table, images, lie, matrix = "0,1;1,1";
    std::size_t u = 2, n = 1, max_order = 128, gens = 2, klass = 2, report_order = 32;
    unsigned modulus = 5;
    bool invariants = false;
    std::vector<std::string> families, tables;
    std::function<Outcome()> action;
    bool verifier = false;

    auto* s = app.add_subcommand("invariants", "r(1), tcn, Discr*, Prod*, reduced resultants, goodness and AF verdicts");
    s->add_option("poly", expr, "Polynomial in t")->required();
    s->callback([&] { action = [&] { return cmd_invariants(expr); }; });

    s = app.add_subcommand("rres", "Reduced resultant of the u-periodic partial sums");
    s->add_option("poly", expr, "Polynomial in t")->required();
    s->add_option("u", u, "Period (at least 2)")->required()->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    s->callback([&] { action = [&] { return cmd_rres(expr, u); }; });

    s = app.add_subcommand("good", "Goodness verdict with a witness of badness");
    s->add_option("poly", expr, "Polynomial in t")->required();
    s->callback([&] { action = [&] { return cmd_good(expr); }; });

    s = app.add_subcommand("af-roots", "Whether the roots form an arithmetically free set");
    s->add_option("poly", expr, "Polynomial in t")->required();
    s->callback([&] { action = [&] { return cmd_af_roots(expr); }; });

    s = app.add_subcommand("cyclotomic", "Phi_n with its classical identities checked");
    s->add_option("n", n, "Index")->required()->check(CLI::Range(std::size_t{1}, std::size_t{400}));
    s->add_flag("--invariants", invariants, "Also compute the invariant report and Discr* * Prod*");
    s->callback([&] {
        verifier = true;
        action = [&] { return cmd_cyclotomic(n, invariants); };
    });

    s = app.add_subcommand("split", "Psi_n = 1 + t + ... + t^(n-1) and its closed forms");
    s->add_option("n", n, "Index")->required()->check(CLI::Range(std::size_t{2}, std::size_t{400}));
    s->add_flag("--invariants", invariants, "Compare Discr*, Prod* and tcn with the closed forms");
    s->callback([&] {
        verifier = true;
        action = [&] { return cmd_split(n, invariants); };
    });

    s = app.add_subcommand("verify-group", "Check an identity and the structure theorems on a finite group");
    s->add_option("family", family, "heisenberg | twisted | bch | cayley")->required();
    s->add_option("--mod", modulus, "Modulus for heisenberg, twisted and bch")->check(CLI::Range(2u, 15u));
    s->add_option("--auto", autom, "golden | identity | power:K | images");
    s->add_option("--poly", poly_text, "Polynomial identity r(t)");
    s->add_option("--table", table, "Cayley table JSON");
    s->add_option("--images", images, "Automorphism images JSON (defaults to the table file)");
    s->callback([&] {
        verifier = true;
        action = [&] { return cmd_verify_group(family, modulus, autom, poly_text, table, images); };
    });

    s = app.add_subcommand("verify-lie", "Check r(gamma) = 0 and the nilpotency bound on a Lie ring");
    s->add_option("--lie", lie, "Structure-constant JSON with an 'endo' matrix")->required();
    s->add_option("--poly", poly_text, "Polynomial identity r(t)");
    s->callback([&] {
        verifier = true;
        action = [&] { return cmd_verify_lie(lie, poly_text); };
    });

    s = app.add_subcommand("lie-free-quotient", "Free nilpotent Lie ring modulo the ideal generated by r(alpha)");
    s->add_option("--gens", gens, "Number of generators")->check(CLI::Range(std::size_t{1}, std::size_t{8}));
    s->add_option("--class", klass, "Nilpotency class of the free ring")->check(CLI::Range(std::size_t{1}, std::size_t{8}));
    s->add_option("--matrix", matrix, "Action on generators, rows separated by ';' (column j = image of x_j)");
    s->add_option("--poly", poly_text, "Polynomial r(t)");
    s->callback([&] {
        verifier = true;
        action = [&] { return cmd_lie_free_quotient(gens, klass, matrix, poly_text); };
    });

    s = app.add_subcommand("search", "Enumerate groups with fix-point-free automorphisms satisfying r");
    s->add_option("--max-order", max_order, "Largest group order (default 128)");
    s->add_option("--poly", poly_text, "Polynomial identity r(t)");
    s->add_option("--family", families, "abelian | heisenberg | dihedral | symmetric | alternating | metacyclic | cayley | any");
    s->add_option("--table", tables, "Extra Cayley table JSON files");
    s->callback([&] {
        verifier = true;
        action = [&] { return cmd_search(max_order, poly_text, families, tables); };
    });

    s = app.add_subcommand("report", "Invariants, square-free parts, cyclotomic divisors and a small search");
    s->add_option("poly", expr, "Polynomial in t")->required();
    s->add_option("--max-order", report_order, "Search bound (0 skips the search)");
    s->callback([&] {
        verifier = true;
        action = [&] { return cmd_report(expr, report_order); };
    });

    const auto start = std::chrono::steady_clock::now();
    json doc{{"schema_version", kSchemaVersion}, {"command", args}};
    auto finish = [&](int code, const std::string& status, const json& results) {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        doc["status"] = status;
        doc["results"] = results;
        doc["timing"] = {{"elapsed_ms", std::to_string(ms.count())}};
        if (as_json) out << doc.dump(2) << "\n";
        else if (!results.contains("error")) render_text(results, out, "");  // errors already went to err
        return code;
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return finish(kUsageError, "usage_error", {{"error", e.what()}});
    }

    try {
        Outcome o = action();
        if (!o.verdict) err << "verdict failure\n";
        return finish(o.verdict ? kSuccess : kVerdictFailure, o.verdict ? "ok" : "verdict_failure", o.results);
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return finish(kUsageError, "usage_error", {{"error", e.what()}, {"position", std::to_string(e.position())}});
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return finish(kUsageError, "usage_error", {{"error", e.what()}});
    } catch (const AlgebraError& e) {
        err << e.what() << "\n";
        // Inside a verifier a library refusal is a negative verdict; for plain computations it means bad input.
        return verifier ? finish(kVerdictFailure, "verdict_failure", {{"error", e.what()}})
                        : finish(kUsageError, "usage_error", {{"error", e.what()}});
    }
}

}  // namespace fixfree::cli

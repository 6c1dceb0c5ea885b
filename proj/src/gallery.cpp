#include "odolab/gallery.hpp"

#include "odolab/criteria.hpp"
#include "odolab/errors.hpp"

#include <algorithm>

namespace odolab {

namespace {

json fam(const std::string& family, json params = json::object()) { return json{{"family", family}, {"params", std::move(params)}}; }

json system(const std::string& kind, json alphabet, json measure, const std::string& name) {
    return json{{"kind", kind}, {"alphabet", std::move(alphabet)}, {"measure", std::move(measure)}, {"name", name}};
}

json shift_system(const std::string& index, const std::string& family, const std::string& name) {
    return json{{"kind", "weighted-shift"}, {"index", index}, {"weights", fam(family, {{"base", "2"}})}, {"offset", 1}, {"name", name}};
}

// configs are stored in emitted form so that emit -> parse -> emit is the identity
json canonical(const json& c) {
    if (c.value("kind", std::string()) == "weighted-shift") return ShiftSystem::from_json(c).to_json();
    return SystemSpec<double>::from_json(c).to_json();
}

std::vector<GalleryEntry> build() {
    std::vector<GalleryEntry> g;
    auto add = [&](GalleryEntry e) {
        e.config = canonical(e.config);
        g.push_back(std::move(e));
    };
    const json affine = fam("affine", {{"a", 1}, {"b", 1}});
    const json binary = fam("constant", {{"m", 2}});

    // ---- odometers ----
    add({"ornstein", "Ornstein odometer", system("odometer", affine, fam("ornstein"), "ornstein"), "rational", 200,
         {{"bounded", true, "C_o is (bounded and) hypercyclic", ""},
          {"cor:hc", true, "mu_i(0)=1/2 and mu_i(j)=1/2i; C_o is (bounded and) hypercyclic", "eta_i - delta_i = 1/2 - 1/(2i) -> 1/2"}},
         {"m_i = i + 1 so that Omega_i = [0, i]"}, std::nullopt, false});

    add({"binary-alpha-2", "binary alpha = 2", system("odometer", binary, fam("binary-alpha", {{"alpha", "2"}}), "binary-alpha-2"),
         "rational", 200,
         {{"bounded", true, "C_o is easily seen to be bounded on L_p, for any alpha > 0", ""},
          {"power-bounded", true, "the infinite product prod(eta_i/delta_i) is convergent", "eta_i/delta_i = 1 + 4/i^2 + o(1/i^2)"},
          {"cor:hc", false, "if alpha in (1, infinity), then C_o is not hypercyclic", "eta_i - delta_i = 2/i^2 -> 0"}},
         {}, std::nullopt, false});

    add({"binary-alpha-1/4", "binary alpha = 1/4", system("odometer", binary, fam("binary-alpha", {{"alpha", "1/4"}}), "binary-alpha-1/4"),
         "float", 400,
         {{"bounded", true, "C_o is easily seen to be bounded on L_p, for any alpha > 0", ""},
          {"thm:hc", true, "if alpha in (0, 1/2), then C_o is hypercyclic", "sum_{s<=n} theta_{i_s} ~ c n^{1 - alpha beta}, i_s = floor(s^1.5)"}},
         {"i_s = floor(s^beta) with beta = 1.5: alpha beta = 3/8 < 1/2"}, std::nullopt, false});

    add({"same-measure", "same measure nu = (1/2, 1/4, 1/4)",
         system("odometer", fam("constant", {{"m", 3}}), fam("list", {{"weights", json::array({json::array({"1/2", "1/4", "1/4"})})}, {"repeat", "cycle"}}),
                "same-measure"),
         "rational", 100,
         {{"bounded", true, "C_o is bounded on L_p if and only if nu(0) >= nu(N-1)", ""},
          {"cor:hc", true, "hypercyclic if and only if nu is not the uniform distribution", "eta_i - delta_i = 1/4 for every i"}},
         {}, std::nullopt, false});

    add({"same-measure-unbounded", "same measure nu = (1/4, 1/4, 1/2)",
         system("odometer", fam("constant", {{"m", 3}}), fam("list", {{"weights", json::array({json::array({"1/4", "1/4", "1/2"})})}, {"repeat", "cycle"}}),
                "same-measure-unbounded"),
         "rational", 100, {{"bounded", false, "C_o is bounded on L_p if and only if nu(0) >= nu(N-1)", ""}}, {}, std::nullopt, false});

    add({"hc-not-mixing", "hypercyclic, not mixing", system("odometer", affine, fam("two-peak"), "hc-not-mixing"), "rational", 200,
         {{"cor:hc", true, "c_i >= 1/4 and eta_i - delta_i >= 1/8", ""},
          {"thm:mixing", false, "kappa_i <= 7/8 for all i", "kappa_i <= 7/8"}},
         {"m_i = i + 1: the construction works for any (m_i), this one covers both parities"}, std::nullopt, false});

    {
        SolverSpec s;
        s.equation = "geometric-c";
        add({"geometric-mixing", "geometric weights, mixing", system("odometer", affine, fam("geometric-mixing"), "geometric-mixing"), "float",
             120,
             {{"thm:mixing", true, "C_o is topologically mixing", "kappa_i >= eta_i = i/(i+1) -> 1"},
              {"cor:ufhc0", true, "the odometer of the mixing example does the job since mu_i(0) -> 1", "mu_i(0) = i/(i+1) -> 1"}},
             {"m_i = i + 1: any (m_i) is allowed", "mu_1 uniform: the construction starts at i = 2",
              "horizon 120: c_i^{m_i - 1} ~ i^-i leaves the double range near i = 145"}, s, false});
    }

    add({"fhc-binary", "mu_i(0) = i/(i+1)", system("odometer", binary, fam("binary-harmonic"), "fhc-binary"), "rational", 200,
         {{"bounded", true, "prod_{i<l} mu_i(1)/mu_i(0) x max(...) = l/(l-1)!", "l/(l-1)! -> 0"},
          {"cor:fhc2", true, "frequent hypercyclicity is a consequence of the binary criterion", "mu_i(0) = i/(i+1) -> 1"}},
         {}, std::nullopt, false});

    add({"fhc-not-mixing", "frequently hypercyclic, not mixing", system("odometer", binary, fam("fhc-not-mixing"), "fhc-not-mixing"),
         "rational", 120,
         {{"thm:fhc", true, "gamma_{n_k} = 1 - 1/(k+1) and omega_{n_k - 1}(1/5) = 1/(k+1)", "gamma_{3k+2} = 1 - 1/(k+1)"},
          {"EmmaUdayan-mixing", false, "not topologically mixing since eta_{3k+3} = 1/2", "eta_{3k+3} = 1/2"}},
         {}, std::nullopt, false});

    add({"open-binary-3/4", "open: mu_i(0) = 3/4", system("odometer", binary, fam("binary-constant", {{"p0", "3/4"}}), "open-binary-3/4"),
         "rational", 100, {}, {}, std::nullopt, true});
    add({"open-m-to-infinity", "open: m_i -> infinity", system("odometer", affine, fam("ornstein"), "open-m-to-infinity"), "rational", 100, {},
         {"Ornstein weights on m_i = i + 1: hypercyclic, and omega_i(kappa) is eventually 1"}, std::nullopt, true});

    // ---- diagonal translations ----
    {
        SolverSpec s;
        s.equation = "sumhc-epsilon";
        add({"trans-hc", "translation, hypercyclic",
             system("diagonal-translation", affine, fam("trans-hc"), "trans-hc"), "rational", 200,
             {{"hcsum", true, "there exists (mu_i) such that C_t is hypercyclic", "beta_{i_s} -> 1"}},
             {"m_i = i + 1: unbounded", "i_s = s^3: sum 1/m_{i_s} = sum 1/(s^3 + 1) < infinity",
              "delta_s = s^-2: sum delta_s < infinity and delta_s m_{i_s} -> infinity"},
             s, false});
    }
    add({"trans-mixing", "translation, mixing",
         system("diagonal-translation", fam("power", {{"exponent", 3}, {"shift", 1}}), fam("trans-mixing", {{"kappa", "1/5"}}), "trans-mixing"),
         "rational", 12,
         {{"hcsum-mixing", true, "if sum m_i^-1 < infinity and m_{i+1} = O(m_i), C_t is topologically mixing", "beta_i -> 1"}},
         {"m_i = (i+1)^3: sum 1/m_i < infinity, m_{i+1} <= 8 m_i",
          "kappa = 1/5: kappa m_{i+1} + 1 <= (1 - kappa) m_i for i >= 3", "delta_i = i^-2"},
         std::nullopt, false});
    add({"trans-fhc", "translation, frequently hypercyclic",
         system("diagonal-translation", fam("scaled-pow2", {{"scale", 1}, {"offset", 0}}), fam("trans-fhc", {{"delta", "inv-square"}}), "trans-fhc"),
         "rational", 12, {{"fhcsum", true, "if m_i -> infinity, C_t is frequently hypercyclic", ""}},
         {"m_i = 2^i: each m_{i+1} a multiple of m_i", "delta_i = i^-2"}, std::nullopt, false});
    add({"trans-rigid", "translation, frequently hypercyclic and rigid",
         system("diagonal-translation", fam("sparse-jump"), fam("trans-fhc", {{"delta", "pow2-over-prev"}}), "trans-rigid"), "float", 12,
         {{"fhcsum", true, "frequently hypercyclic and topologically rigid along (m_i)", ""}},
         {"m_i / m_{i-1} = k 2^i at i = 2^k (k >= 3), else 2: unbounded ratios",
          "delta_i = 1/(2^i m_{i-1}): delta_i m_{i-1} = 2^-i, so K <= e"},
         std::nullopt, false});
    add({"trans-hufhc", "translation, hereditarily U-frequently hypercyclic",
         system("diagonal-translation", fam("scaled-pow2", {{"scale", 3}, {"offset", 0}}), fam("trans-hufhc"), "trans-hufhc"), "rational", 11,
         {{"ufhcsum", true, "n_i := 2^i and m_i := 3 n_i; mu_i(J_{2,i}) -> 1", ""}}, {"delta_i = i^-2"}, std::nullopt, false});
    add({"hoeffbis-blocks", "translation, hypercyclic with limsup beta_i < 1",
         system("diagonal-translation", fam("blocks-pow2"), fam("hoeffbis-blocks"), "hoeffbis-blocks"), "float", 100,
         {{"Hoeffbis", true, "C_t is hypercyclic on L_p and limsup beta_i < 1", ""},
          {"hcsum", false, "limsup beta_i < 1", "beta_i -> (e - 1)/e"}},
         {}, std::nullopt, false});

    // ---- weighted shifts ----
    add({"shift-z", "backward shift on Z, nu_i = 2^-|i|", shift_system("Z", "two-sided-geometric", "shift-z"), "rational", 200,
         {{"salas", true, "nu_{i+n_k} nu_{i-n_k} -> 0", "nu_n nu_-n = 4^-n"},
          {"fhcshift", true, "mu(Omega) < infinity, bounded ratio and no periodic point", ""}},
         {}, std::nullopt, false});
    add({"shift-zplus", "backward shift on Z+, nu_i = 2^-i", shift_system("Z+", "geometric", "shift-zplus"), "rational", 200,
         {{"salas", true, "when I = Z+, B is always supercyclic", ""},
          {"fhcshift", true, "mu(Omega) < infinity, bounded ratio and no periodic point", ""}},
         {}, std::nullopt, false});
    return g;
}

}  // namespace

MapKind GalleryEntry::kind() const { return parse_kind(config.at("kind").get<std::string>()); }

VerdictParams GalleryEntry::verdict_params() const {
    VerdictParams p;
    p.horizon = horizon;
    for (const auto& e : expectations)
        if (!e.formula.empty()) p.closed_forms[e.theorem] = ClosedForm{e.holds, e.formula};
    return p;
}

json GalleryEntry::to_json() const {
    json ex = json::array();
    for (const auto& e : expectations) {
        json j{{"theorem", e.theorem}, {"holds", e.holds}, {"anchor", e.anchor}};
        if (!e.formula.empty()) j["closed_form"] = e.formula;
        ex.push_back(j);
    }
    json j{{"id", id}, {"title", title}, {"config", config}, {"backend", backend}, {"horizon", horizon},
           {"expectations", ex}, {"defaults", defaults}, {"open_question", open_question}};
    if (solver) j["solver"] = solver->equation;
    return j;
}

const std::vector<GalleryEntry>& gallery() {
    static const std::vector<GalleryEntry> g = build();
    return g;
}

const GalleryEntry& gallery_entry(const std::string& id) {
    for (const auto& e : gallery())
        if (e.id == id) return e;
    throw SpecError("unknown gallery id '" + id + "'");
}

std::vector<std::string> gallery_ids() {
    std::vector<std::string> ids;
    for (const auto& e : gallery()) ids.push_back(e.id);
    return ids;
}

json GalleryCheck::to_json() const {
    return json{{"id", id},
                {"theorem", theorem},
                {"expected", expected},
                {"status", odolab::to_string(status)},
                {"numeric_status", odolab::to_string(numeric_status)},
                {"consistent", consistent},
                {"note", note}};
}

bool GalleryVerifyResult::pass() const {
    return roundtrip_failures.empty() && std::all_of(checks.begin(), checks.end(), [](const GalleryCheck& c) { return c.consistent; });
}

json GalleryVerifyResult::to_json() const {
    json cs = json::array();
    for (const auto& c : checks) cs.push_back(c.to_json());
    return json{{"checks", cs}, {"roundtrip_failures", roundtrip_failures}, {"open_questions", open_questions}, {"pass", pass()}};
}

namespace {

template <class S>
Verdict run_verdict(const GalleryEntry& e, const std::string& theorem, const VerdictParams& p) {
    return evaluate(SystemSpec<S>::from_json(e.config), theorem, p);
}

/// gamma_i and omega_i(1/5) for the first few coordinates
json open_question_values(const GalleryEntry& e) {
    auto spec = SystemSpec<Rational>::from_json(e.config);
    json rows = json::array();
    for (std::int64_t i = 1; i <= 12; ++i) {
        auto w = spec.mu(i);
        auto g = gamma_odometer(*w);
        auto om = omega(*w, spec.m(i + 1), Rational(1, 5));
        rows.push_back(json{{"i", i}, {"m_i", spec.m(i)}, {"gamma", rational_string(g.value)}, {"omega_1/5", rational_string(om)}});
    }
    return json{{"id", e.id}, {"values", rows}};
}

}  // namespace

GalleryVerifyResult verify_gallery(const GalleryVerifyOptions& opt) {
    GalleryVerifyResult r;
    for (const auto& e : gallery()) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), e.id) == opt.only.end()) continue;
        json again = canonical(e.config);
        if (again != e.config) r.roundtrip_failures.push_back(e.id);
        if (e.open_question) {
            r.open_questions.push_back(open_question_values(e));
            continue;
        }
        VerdictParams p = e.verdict_params();
        if (opt.horizon) p.horizon = *opt.horizon;
        for (const auto& ex : e.expectations) {
            GalleryCheck c;
            c.id = e.id;
            c.theorem = ex.theorem;
            c.expected = ex.holds;
            Verdict v = e.is_shift() ? evaluate_shift(ShiftSystem::from_json(e.config), ex.theorem, p)
                        : e.backend == "float" ? run_verdict<double>(e, ex.theorem, p)
                                               : run_verdict<Rational>(e, ex.theorem, p);
            c.status = v.status;
            c.numeric_status = v.numeric_status;
            const bool positive = v.numeric_status == Status::satisfied || v.numeric_status == Status::satisfied_up_to_horizon;
            c.consistent = ex.holds ? v.numeric_status != Status::violated : !positive;
            c.note = c.consistent ? v.note : "verdict contradicts the registered expectation (" + ex.anchor + ")";
            r.checks.push_back(std::move(c));
        }
    }
    return r;
}

}  // namespace odolab

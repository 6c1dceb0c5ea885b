#include "CLI11.hpp"
#include "odolab/config.hpp"
#include "odolab/criteria.hpp"
#include "odolab/function_space.hpp"
#include "odolab/gallery.hpp"
#include "odolab/report.hpp"
#include "odolab/symbol_maps.hpp"
#include "odolab/verdicts.hpp"
#include "odolab/witness.hpp"

#include <iostream>
#include <optional>

using namespace odolab;

namespace {

struct Flags {
    std::optional<int> horizon;
    int depth = 4;
    std::string epsilon = "1/10";
    std::string kappa = "1/5";
    std::uint64_t seed = 20240611;
    std::uint64_t trials = 1000000;
    std::uint64_t cap = kDefaultCap;
    std::string backend;  // empty: the gallery default, else rational
    std::string out;
    std::uint64_t k = 0;  // mixing witness shift
    std::vector<std::string> only;
};

struct Target {
    json config;
    std::string name;
    const GalleryEntry* entry = nullptr;
};

Target resolve(const std::string& what) {
    Target t;
    for (const auto& e : gallery())
        if (e.id == what) {
            t.config = e.config;
            t.name = e.id;
            t.entry = &e;
            return t;
        }
    t.config = load_config(what);
    t.name = t.config.value("name", std::string("system"));
    return t;
}

std::string safe_name(std::string s) {
    for (auto& c : s)
        if (c == '/' || c == ' ') c = '_';
    return s;
}

void emit(const Flags& f, const std::string& file, const std::string& text, bool to_stdout = true) {
    if (to_stdout) std::cout << text;
    if (!f.out.empty()) std::cerr << "wrote " << write_report(f.out, file, text) << "\n";
}

bool use_float(const Flags& f, const Target& t) {
    if (!f.backend.empty()) return f.backend == "float";
    return t.entry && t.entry->backend == "float";
}

int horizon_or(const Flags& f, const Target& t, int fallback) {
    if (f.horizon) return *f.horizon;
    return t.entry ? t.entry->horizon : fallback;
}

// ---- commands ----

template <class S>
int classify(const Flags& f, const Target& t) {
    auto spec = SystemSpec<S>::from_json(t.config);
    VerdictParams p = t.entry ? t.entry->verdict_params() : VerdictParams{};
    p.horizon = horizon_or(f, t, 100);
    p.kappa = parse_rational(f.kappa);
    BoundOptions bo;
    if (t.entry)
        for (const auto& e : t.entry->expectations)
            if (e.theorem == "bounded") bo.closed_form = e.holds;
    auto br = boundedness(spec, std::min(p.horizon, 200), bo);
    std::vector<Verdict> vs;
    for (const auto& id : theorem_ids(spec.kind())) vs.push_back(evaluate(spec, id, p));
    json doc = verdicts_json(t.name, vs);
    std::string bv = to_string(br.verdict);
    if (br.verdict == BoundVerdict::unbounded_witness) bv += "(" + std::to_string(br.witness_level) + ")";
    doc["boundedness"] = json{{"verdict", bv}, {"horizon", br.horizon}, {"note", br.note}};
    emit(f, safe_name(t.name) + ".classify.json", json_text(doc));
    bool contradiction = false;
    for (const auto& v : vs) contradiction = contradiction || v.note == "numeric evidence contradicts the registered closed form";
    return br.verdict == BoundVerdict::unbounded_witness || contradiction ? 1 : 0;
}

int classify_shift(const Flags& f, const Target& t) {
    auto sys = ShiftSystem::from_json(t.config);
    VerdictParams p;
    p.horizon = horizon_or(f, t, 100);
    std::vector<Verdict> vs;
    for (const auto& id : shift_theorem_ids()) vs.push_back(evaluate_shift(sys, id, p));
    emit(f, safe_name(t.name) + ".classify.json", json_text(verdicts_json(t.name, vs)));
    return 0;
}

template <class S>
int sequences(const Flags& f, const Target& t) {
    auto spec = SystemSpec<S>::from_json(t.config);
    TableOptions o;
    o.horizon = horizon_or(f, t, 50);
    o.kappa = parse_rational(f.kappa);
    o.gamma_horizon = 48;
    auto table = criteria_table(spec, o);
    emit(f, safe_name(t.name) + ".sequences.tsv", table.to_tsv());
    return 0;
}

template <class S>
WitnessReport run_witness(const std::string& name, const Flags& f, const Target& t) {
    auto spec = SystemSpec<S>::from_json(t.config);
    WitnessOptions o;
    o.seed = f.seed;
    o.trials = f.trials;
    o.cap = f.cap;
    if (f.horizon) o.horizon = *f.horizon;
    const Rational eps = parse_rational(f.epsilon), kap = parse_rational(f.kappa);
    if (name == "transitivity") return transitivity_witness(spec, eps, IndexStrategy{}, o);
    if (name == "mixing") return mixing_witness(spec, eps, f.k ? f.k : 479001600, o);
    if (name == "fhc") return fhc_witness(spec, eps, kap, o);
    if (name == "ufhc") return ufhc_count(spec, eps, kap, o);
    if (name == "src") return src_search(spec, eps, f.depth, f.horizon.value_or(400), o);
    if (name == "hcsum") return hcsum_witness(spec, eps, o);
    if (name == "hoeffbis") return hoeffbis_witness(spec, eps, o);
    if (name == "fhcsum") return fhcsum_witness(spec, eps, kap, o);
    if (name == "ufhcsum") return ufhcsum_witness(spec, eps, Rational(1, 4), nullptr, o);
    if (name == "rigidity") {
        // the registered series delta_j m_{j-1} = 2^-j has tail 2^-(depth+1) past the computed coordinates
        double tail = t.entry && t.entry->id == "trans-rigid" ? std::ldexp(1.0, -(f.depth + 1)) : 0.0;
        return rigidity_probe(spec, 8, f.depth, tail, o);
    }
    throw SpecError("unknown witness '" + name + "'");
}

int witness(const std::string& name, const Flags& f, const Target& t) {
    WitnessReport r;
    if (name == "shift-fhc") {
        ShiftFhcParams p;
        p.kappa = parse_rational(f.kappa);
        if (f.horizon) p.window = *f.horizon;
        r = shift_fhc_witness(ShiftSystem::from_json(t.config), p);
    } else {
        r = use_float(f, t) ? run_witness<double>(name, f, t) : run_witness<Rational>(name, f, t);
    }
    emit(f, safe_name(t.name) + "." + name + ".witness.json", json_text(r.to_json()));
    return r.pass ? 0 : 1;
}

template <class S>
int orbit(const Flags& f, const Target& t) {
    auto spec = SystemSpec<S>::from_json(t.config);
    auto space = build_truncation(spec, f.depth, f.cap);
    Digits zero(static_cast<std::size_t>(f.depth), 0), one = zero;
    one[0] = 1;
    auto fn = SimpleFunction<S>::indicator(DepthSet::cylinder(space.radices, zero), f.cap);
    auto gn = SimpleFunction<S>::indicator(DepthSet::cylinder(space.radices, one), f.cap);
    auto tr = orbit_trace(spec.kind(), space, fn, gn, ScalarOps<S>::from(parse_rational(f.epsilon)), 1, horizon_or(f, t, 200));
    emit(f, safe_name(t.name) + ".orbit.tsv", tr.to_tsv());
    return 0;
}

template <class S>
int norms(const Flags& f, const Target& t) {
    auto spec = SystemSpec<S>::from_json(t.config);
    const int H = horizon_or(f, t, 50);
    BoundOptions bo;
    if (t.entry)
        for (const auto& e : t.entry->expectations)
            if (e.theorem == "bounded") bo.closed_form = e.holds;
    auto br = boundedness(spec, std::min(H, 200), bo);
    emit(f, safe_name(t.name) + ".bound.tsv", bound_report_tsv(br));
    std::cout << "# verdict\t" << to_string(br.verdict);
    if (br.verdict == BoundVerdict::unbounded_witness) std::cout << "(" << br.witness_level << ")";
    std::cout << "\n";
    if (spec.kind() == MapKind::translation) emit(f, safe_name(t.name) + ".kakutani.tsv", kakutani_tsv(kakutani_check(spec, H)));
    if (br.verdict != BoundVerdict::unbounded_witness)
        emit(f, safe_name(t.name) + ".norms.tsv", norm_probes_tsv(norm_probes(spec, f.depth, std::min(H, 100), f.cap)));
    return br.verdict == BoundVerdict::unbounded_witness ? 1 : 0;
}

int norms_shift(const Flags& f, const Target& t) {
    auto sys = ShiftSystem::from_json(t.config);
    const int H = horizon_or(f, t, 50);
    auto b = shift_bound(sys, H);
    auto s = salas_check(sys, 0, 0, H);
    json prods = json::array();
    for (const auto& q : s.products) prods.push_back(rational_string(q));
    json doc{{"window_sup", rational_string(b.window_sup)}, {"closed_form", rational_string(b.closed_form)}, {"window", b.window},
             {"salas", {{"products", prods}, {"monotone", s.monotone}, {"tends_to_zero", s.tends_to_zero}}}};
    emit(f, safe_name(t.name) + ".norms.json", json_text(doc));
    return 0;
}

int gallery_list(const Flags& f) {
    std::string tsv = "id\tkind\tbackend\thorizon\texpectations\ttitle\n";
    json all = json::array();
    for (const auto& e : gallery()) {
        tsv += e.id + "\t" + to_string(e.kind()) + "\t" + e.backend + "\t" + std::to_string(e.horizon) + "\t" +
               std::to_string(e.expectations.size()) + "\t" + e.title + "\n";
        all.push_back(e.to_json());
    }
    std::cout << tsv;
    if (!f.out.empty()) std::cerr << "wrote " << write_report(f.out, "gallery.json", json_text(all)) << "\n";
    return 0;
}

int verify(const Flags& f) {
    GalleryVerifyOptions o;
    o.horizon = f.horizon;
    o.seed = f.seed;
    o.only = f.only;
    auto r = verify_gallery(o);
    for (const auto& c : r.checks)
        std::cout << (c.consistent ? "ok" : "CONTRADICTION") << '\t' << c.id << '\t' << c.theorem << '\t'
                  << (c.expected ? "expected-holds" : "expected-fails") << '\t' << to_string(c.status) << '\n';
    for (const auto& id : r.roundtrip_failures) std::cout << "ROUNDTRIP\t" << id << '\n';
    json doc = r.to_json();
    doc["seed"] = f.seed;
    if (!f.out.empty()) std::cerr << "wrote " << write_report(f.out, "verify-gallery.json", json_text(doc)) << "\n";
    std::cout << (r.pass() ? "PASS" : "FAIL") << '\n';
    return r.pass() ? 0 : 1;
}

bool usage_error(const Error& e) {
    const auto& k = e.kind();
    return k == "SpecError" || k == "KindMismatch" || k == "UnknownTheorem" || k == "BackendUnsupported";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"odolab: composition operators on odometers, translations and weighted shifts"};
    app.require_subcommand(1);
    Flags f;
    std::string target, wname;
    int horizon = 0;

    // positive rational, "p/q" or decimal
    const CLI::Validator positive_rational(
        [](std::string& s) -> std::string {
            try {
                if (parse_rational(s) <= 0) return "must be positive";
            } catch (const Error& e) {
                return e.what();
            }
            return {};
        },
        "RATIONAL");
    auto common = [&](CLI::App* c) {
        c->add_option("--horizon", horizon, "index horizon")->check(CLI::PositiveNumber);
        c->add_option("--depth", f.depth, "truncation depth")->check(CLI::Range(1, 24));
        c->add_option("--epsilon", f.epsilon, "epsilon as p/q or decimal")->check(positive_rational);
        c->add_option("--kappa", f.kappa, "kappa as p/q or decimal")->check(positive_rational);
        c->add_option("--seed", f.seed, "base seed");
        c->add_option("--trials", f.trials, "sample budget");
        c->add_option("--cap", f.cap, "cell cap");
        c->add_option("--backend", f.backend, "rational or float")->check(CLI::IsMember({"rational", "float"}));
        c->add_option("--out", f.out, "report directory");
    };
    auto* classify_cmd = app.add_subcommand("classify", "boundedness and every applicable verdict");
    auto* seq_cmd = app.add_subcommand("sequences", "criteria table as TSV");
    auto* wit_cmd = app.add_subcommand("witness", "run a named witness construction");
    auto* orbit_cmd = app.add_subcommand("orbit", "orbit trace of a cylinder indicator");
    auto* norms_cmd = app.add_subcommand("norms", "boundedness and norm probes");
    auto* list_cmd = app.add_subcommand("gallery-list", "list gallery entries");
    auto* verify_cmd = app.add_subcommand("verify-gallery", "check every registered expectation");
    for (auto* c : {classify_cmd, seq_cmd, orbit_cmd, norms_cmd}) c->add_option("target", target, "gallery id, config file or inline JSON")->required();
    wit_cmd->add_option("name", wname, "transitivity|mixing|fhc|ufhc|src|hcsum|hoeffbis|fhcsum|ufhcsum|shift-fhc|rigidity")->required();
    wit_cmd->add_option("target", target, "gallery id, config file or inline JSON")->required();
    wit_cmd->add_option("--k", f.k, "mixing shift k");
    verify_cmd->add_option("--only", f.only, "restrict to these gallery ids");
    for (auto* c : {classify_cmd, seq_cmd, wit_cmd, orbit_cmd, norms_cmd, list_cmd, verify_cmd}) common(c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (horizon > 0) f.horizon = horizon;

    try {
        if (*list_cmd) return gallery_list(f);
        if (*verify_cmd) return verify(f);
        Target t = resolve(target);
        const bool shift = t.config.value("kind", std::string()) == "weighted-shift";
        const bool fl = use_float(f, t);
        if (*classify_cmd) return shift ? classify_shift(f, t) : fl ? classify<double>(f, t) : classify<Rational>(f, t);
        if (*seq_cmd) {
            if (shift) throw KindMismatch("sequences needs an odometer or translation");
            return fl ? sequences<double>(f, t) : sequences<Rational>(f, t);
        }
        if (*wit_cmd) return witness(wname, f, t);
        if (*orbit_cmd) {
            if (shift) throw KindMismatch("orbit needs an odometer or translation");
            return fl ? orbit<double>(f, t) : orbit<Rational>(f, t);
        }
        if (*norms_cmd) return shift ? norms_shift(f, t) : fl ? norms<double>(f, t) : norms<Rational>(f, t);
    } catch (const Error& e) {
        std::cerr << "odolab: " << e.what() << "\n";
        return usage_error(e) ? 2 : 1;
    } catch (const json::exception& e) {
        std::cerr << "odolab: config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "odolab: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

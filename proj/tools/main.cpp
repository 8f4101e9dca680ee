// bellops: batch CLI for Bell-bound certification, EPR coincidence
// simulation, polarizer chains, toy Schroedinger evolution, and the
// phase-operator report. Angles are degrees at this boundary, radians inside.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bellops/bell_bounds.hpp"
#include "bellops/epr_sim.hpp"
#include "bellops/evolution.hpp"
#include "bellops/phase_space.hpp"
#include "bellops/rng.hpp"

namespace {

constexpr const char* VERSION = "1.0.0";
constexpr double DEG = M_PI / 180.0;

constexpr int EXIT_USAGE = 1;
constexpr int EXIT_RUNTIME = 2;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> parse_angle_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        double v = std::stod(item, &pos);
        if (pos != item.size()) {
            throw CLI::ValidationError("--angles", "malformed number: " + item);
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw CLI::ValidationError("--angles", "angle list must be nonempty");
    }
    return out;
}

// Config-file support: one JSON object whose keys mirror the long flag names
// of the chosen subcommand. Flags given on the command line win.
class ConfigMerger {
  public:
    void bind(CLI::Option* opt, std::function<void(const nlohmann::json&)> setter) {
        std::string name = opt->get_name();  // "--restarts"
        entries_[name.substr(2)] = {opt, std::move(setter)};
    }

    void apply(const std::string& path) const {
        std::ifstream in(path);
        if (!in) {
            throw CLI::ValidationError("--config", "cannot open " + path);
        }
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw CLI::ValidationError("--config", std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object()) {
            throw CLI::ValidationError("--config", "config must be a JSON object");
        }
        for (auto it = j.begin(); it != j.end(); ++it) {
            auto entry = entries_.find(it.key());
            if (entry == entries_.end()) {
                throw CLI::ValidationError("--config", "unknown key: " + it.key());
            }
            if (entry->second.opt->count() == 0) {
                entry->second.set(it.value());
            }
        }
    }

  private:
    struct Entry {
        CLI::Option* opt;
        std::function<void(const nlohmann::json&)> set;
    };
    std::map<std::string, Entry> entries_;
};

template <typename T>
std::function<void(const nlohmann::json&)> setter_for(T* target) {
    return [target](const nlohmann::json& v) { *target = v.get<T>(); };
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << contents;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const nlohmann::json& params, std::uint64_t seed, double wall_seconds) {
    nlohmann::json m;
    m["command"] = command;
    m["parameters"] = params;
    m["seed"] = seed;
    m["version"] = VERSION;
    m["wall_time_s"] = wall_seconds;
    m["output"] = out_path;
    write_file(out_path + ".manifest.json", m.dump(2) + "\n");
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// ---- bounds ----------------------------------------------------------------

struct BoundsArgs {
    std::string regime = "classical";
    int restarts = 0;  // 0: per-regime default
    int dim = 0;       // 0: dim-4 search with dim-8 fallback
    int samples = 0;
    std::uint64_t seed = 0;
    std::string out = "bounds.json";
    std::string config;
};

int run_bounds(const BoundsArgs& a) {
    using namespace bellops;
    Timer timer;
    CommutationRegime regime = regime_from_name(a.regime);
    BoundCertificate cert;
    switch (regime) {
        case CommutationRegime::Classical:
            cert = classical_max();
            break;
        case CommutationRegime::LocalQuantum:
            cert = maximize_local_quantum(a.restarts > 0 ? a.restarts : 20, a.seed);
            break;
        case CommutationRegime::Nonlocal: {
            int restarts = a.restarts > 0 ? a.restarts : 200;
            cert = (a.dim == 0) ? certify_nonlocal(restarts, a.seed)
                                : maximize_nonlocal(a.dim, restarts, a.seed);
            break;
        }
    }
    nlohmann::json j = certificate_to_json(cert);
    if (a.samples > 0) {
        std::vector<double> sweep = regime_sample_sweep(regime, a.samples, a.seed);
        double lo = sweep[0], hi = sweep[0];
        for (double v : sweep) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        j["sweep"] = {{"samples", a.samples}, {"min", lo}, {"max", hi}};
    }
    write_file(a.out, j.dump(2) + "\n");

    nlohmann::json params = {{"regime", a.regime}, {"restarts", a.restarts},
                             {"dim", a.dim},       {"samples", a.samples},
                             {"format", "json"}};
    write_manifest(a.out, "bounds", params, a.seed, timer.seconds());
    return 0;
}

// ---- epr-scan --------------------------------------------------------------

struct EprScanArgs {
    double a1 = 0.0, a2 = 45.0, b1 = 22.5, b2 = -22.5;  // degrees
    std::uint64_t n = 1000000;
    std::string model = "quantum";
    std::uint64_t seed = 0;
    int threads = 1;
    std::string format = "csv";
    std::string out = "epr_scan.csv";
    std::string config;
};

int run_epr_scan(const EprScanArgs& a) {
    using namespace bellops;
    Timer timer;
    if (a.n < 1) throw CLI::ValidationError("--n", "pair count must be >= 1");

    const double settings[4][2] = {{a.a1, a.b1}, {a.a2, a.b1}, {a.a1, a.b2}, {a.a2, a.b2}};
    ModelRegistry registry = ModelRegistry::builtin();
    std::array<CoincidenceCounts, 4> counts;
    for (int i = 0; i < 4; ++i) {
        double alpha = settings[i][0] * DEG;
        double beta = settings[i][1] * DEG;
        std::uint64_t sub = derive_substream(a.seed, i);
        counts[i] = (a.model == "quantum")
                        ? run_coincidence_quantum(alpha, beta, a.n, sub, a.threads)
                        : run_coincidence(registry.get(a.model), alpha, beta, a.n, sub,
                                          a.threads);
    }
    ChshEstimate s = estimate_chsh(counts);

    std::ostringstream body;
    if (a.format == "csv") {
        body << "alpha_deg,beta_deg,n_pp,n_pa,n_ap,n_aa,E,stderr,S,S_stderr\n";
        for (int i = 0; i < 4; ++i) {
            CorrelationEstimate e = correlation_from_counts(counts[i]);
            body << fmt(settings[i][0]) << "," << fmt(settings[i][1]) << "," << counts[i].n_pp
                 << "," << counts[i].n_pa << "," << counts[i].n_ap << "," << counts[i].n_aa
                 << "," << fmt(e.value) << "," << fmt(e.std_error) << "," << fmt(s.value) << ","
                 << fmt(s.std_error) << "\n";
        }
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < 4; ++i) {
            CorrelationEstimate e = correlation_from_counts(counts[i]);
            rows.push_back({{"alpha_deg", settings[i][0]},
                            {"beta_deg", settings[i][1]},
                            {"n_pp", counts[i].n_pp},
                            {"n_pa", counts[i].n_pa},
                            {"n_ap", counts[i].n_ap},
                            {"n_aa", counts[i].n_aa},
                            {"E", e.value},
                            {"stderr", e.std_error}});
        }
        nlohmann::json j = {{"rows", rows}, {"S", s.value}, {"S_stderr", s.std_error}};
        body << j.dump(2) << "\n";
    }
    write_file(a.out, body.str());

    nlohmann::json params = {{"a1", a.a1}, {"a2", a.a2},       {"b1", a.b1},
                             {"b2", a.b2}, {"n", a.n},         {"model", a.model},
                             {"threads", a.threads}, {"format", a.format}};
    write_manifest(a.out, "epr-scan", params, a.seed, timer.seconds());
    return 0;
}

// ---- lhv-run ---------------------------------------------------------------

struct LhvRunArgs {
    std::string model = "sign";
    double a1 = 0.0, a2 = 45.0, b1 = 22.5, b2 = -22.5;
    std::uint64_t n = 100000;
    int seeds = 20;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string format = "csv";
    std::string out = "lhv_run.csv";
    std::string config;
};

int run_lhv(const LhvRunArgs& a) {
    using namespace bellops;
    Timer timer;
    if (a.seeds < 1) throw CLI::ValidationError("--seeds", "seed count must be >= 1");
    ModelRegistry registry = ModelRegistry::builtin();
    const ResponseModel& model = registry.get(a.model);

    std::ostringstream body;
    nlohmann::json rows = nlohmann::json::array();
    if (a.format == "csv") body << "seed_index,model,S,S_stderr\n";
    for (int k = 0; k < a.seeds; ++k) {
        std::uint64_t run_seed = derive_substream(a.seed, 1000 + k);
        const double settings[4][2] = {{a.a1, a.b1}, {a.a2, a.b1}, {a.a1, a.b2}, {a.a2, a.b2}};
        std::array<CoincidenceCounts, 4> counts;
        for (int i = 0; i < 4; ++i) {
            counts[i] = run_coincidence(model, settings[i][0] * DEG, settings[i][1] * DEG, a.n,
                                        derive_substream(run_seed, i), a.threads);
        }
        ChshEstimate s = estimate_chsh(counts);
        if (a.format == "csv") {
            body << k << "," << a.model << "," << fmt(s.value) << "," << fmt(s.std_error)
                 << "\n";
        } else {
            rows.push_back({{"seed_index", k}, {"model", a.model}, {"S", s.value},
                            {"S_stderr", s.std_error}});
        }
    }
    if (a.format != "csv") body << rows.dump(2) << "\n";
    write_file(a.out, body.str());

    nlohmann::json params = {{"model", a.model}, {"a1", a.a1},   {"a2", a.a2},
                             {"b1", a.b1},       {"b2", a.b2},   {"n", a.n},
                             {"seeds", a.seeds}, {"threads", a.threads}, {"format", a.format}};
    write_manifest(a.out, "lhv-run", params, a.seed, timer.seconds());
    return 0;
}

// ---- chain -----------------------------------------------------------------

struct ChainArgs {
    std::string angles = "0,45,90";
    std::string model = "malus-threshold";
    std::uint64_t n = 100000;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string format = "csv";
    std::string out = "chain.csv";
    std::string config;
};

int run_chain(const ChainArgs& a) {
    using namespace bellops;
    Timer timer;
    std::vector<double> degs = parse_angle_list(a.angles);
    std::vector<double> rads;
    rads.reserve(degs.size());
    for (double d : degs) rads.push_back(d * DEG);

    ModelRegistry registry = ModelRegistry::builtin();
    std::vector<double> analytic = chain_analytic(rads);
    std::vector<double> mc = chain_transmission(registry.get(a.model), rads, a.n, a.seed,
                                                a.threads);

    std::ostringstream body;
    if (a.format == "csv") {
        body << "stage,angle_deg,pass_fraction,analytic_reference\n";
        for (std::size_t s = 0; s < degs.size(); ++s) {
            body << (s + 1) << "," << fmt(degs[s]) << "," << fmt(mc[s]) << ","
                 << fmt(analytic[s]) << "\n";
        }
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t s = 0; s < degs.size(); ++s) {
            rows.push_back({{"stage", s + 1}, {"angle_deg", degs[s]},
                            {"pass_fraction", mc[s]}, {"analytic_reference", analytic[s]}});
        }
        body << rows.dump(2) << "\n";
    }
    write_file(a.out, body.str());

    nlohmann::json params = {{"angles", a.angles}, {"model", a.model}, {"n", a.n},
                             {"threads", a.threads}, {"format", a.format}};
    write_manifest(a.out, "chain", params, a.seed, timer.seconds());
    return 0;
}

// ---- evolve ----------------------------------------------------------------

struct EvolveArgs {
    std::string mode = "compare";  // compare | shift
    double tmax = 2 * M_PI;
    double dt = 0.1;
    int n = 8;      // shift-model half width
    int site = -1;  // initial lattice site (shift mode)
    std::uint64_t seed = 0;
    std::string format = "csv";
    std::string out = "evolve.csv";
    std::string config;
};

int run_evolve(const EvolveArgs& a) {
    using namespace bellops;
    Timer timer;
    std::ostringstream body;
    body << "t,observable_name,pure_value,mixed_value,p_minus_norm,p_plus_norm\n";

    if (a.mode == "compare") {
        // two-level witness: H = sigma_z, c = (1,1)/sqrt(2), observable sigma_x
        Eigen::VectorXcd c(2);
        c << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
        SuperpositionSpec spec = make_superposition(ComplexOperator::pauli_z(), c);
        if (a.dt <= 0 || a.tmax <= 0) {
            throw CLI::ValidationError("--dt", "time grid must be positive");
        }
        for (double t = 0.0; t <= a.tmax + 1e-12; t += a.dt) {
            PureMixedComparison cmp = compare_pure_vs_mixed(spec, ComplexOperator::pauli_x(), t);
            body << fmt(t) << ",sigma_x," << fmt(cmp.pure) << "," << fmt(cmp.mixed) << ",,\n";
        }
    } else if (a.mode == "shift") {
        ShiftModel model = build_shift_model(a.n);
        if (a.site < -model.n || a.site > -1) {
            throw CLI::ValidationError("--site", "initial site must lie in the incoming half");
        }
        StateVector psi = model.basis_state(a.site);
        ComplexOperator pm = model.subspaces.projector_minus();
        ComplexOperator pp = model.subspaces.projector_plus();
        for (int step = 0; step <= model.horizon; ++step) {
            body << step << ",pplus_occupancy," << fmt(expectation(psi, pp)) << ",,"
                 << fmt(expectation(psi, pm)) << "," << fmt(expectation(psi, pp)) << "\n";
            psi = model.step.matrix() * psi;
        }
    } else {
        throw CLI::ValidationError("--mode", "must be compare or shift");
    }
    write_file(a.out, body.str());

    nlohmann::json params = {{"mode", a.mode}, {"tmax", a.tmax}, {"dt", a.dt},
                             {"n", a.n},       {"site", a.site}, {"format", a.format}};
    write_manifest(a.out, "evolve", params, a.seed, timer.seconds());
    return 0;
}

// ---- phase -----------------------------------------------------------------

struct PhaseArgs {
    int nmax = 8;
    std::uint64_t seed = 0;
    std::string out = "phase.json";
    std::string config;
};

int run_phase(const PhaseArgs& a) {
    using namespace bellops;
    Timer timer;
    if (a.nmax < 1) throw CLI::ValidationError("--nmax", "must be >= 1");
    write_file(a.out, phase_report(a.nmax).dump(2) + "\n");
    nlohmann::json params = {{"nmax", a.nmax}, {"format", "json"}};
    write_manifest(a.out, "phase", params, a.seed, timer.seconds());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bell-bound certification and EPR simulation toolkit"};
    app.require_subcommand(1);

    BoundsArgs bounds_args;
    EprScanArgs epr_args;
    LhvRunArgs lhv_args;
    ChainArgs chain_args;
    EvolveArgs evolve_args;
    PhaseArgs phase_args;

    ConfigMerger bounds_cfg, epr_cfg, lhv_cfg, chain_cfg, evolve_cfg, phase_cfg;

    auto* bounds = app.add_subcommand("bounds", "certify a Bell-operator limit");
    bounds_cfg.bind(bounds->add_option("--regime", bounds_args.regime,
                                       "classical | local | nonlocal"),
                    setter_for(&bounds_args.regime));
    bounds_cfg.bind(bounds->add_option("--restarts", bounds_args.restarts, "optimizer restarts"),
                    setter_for(&bounds_args.restarts));
    bounds_cfg.bind(bounds->add_option("--dim", bounds_args.dim,
                                       "nonlocal search dimension (4 or 8)"),
                    setter_for(&bounds_args.dim));
    bounds_cfg.bind(bounds->add_option("--samples", bounds_args.samples,
                                       "also sweep this many random scenarios"),
                    setter_for(&bounds_args.samples));
    bounds_cfg.bind(bounds->add_option("--seed", bounds_args.seed, "master seed"),
                    setter_for(&bounds_args.seed));
    bounds_cfg.bind(bounds->add_option("--out", bounds_args.out, "output path"),
                    setter_for(&bounds_args.out));
    bounds->add_option("--config", bounds_args.config, "JSON config file");

    auto* epr = app.add_subcommand("epr-scan", "CHSH coincidence scan at four setting pairs");
    epr_cfg.bind(epr->add_option("--a1", epr_args.a1, "first a-side angle (deg)"),
                 setter_for(&epr_args.a1));
    epr_cfg.bind(epr->add_option("--a2", epr_args.a2, "second a-side angle (deg)"),
                 setter_for(&epr_args.a2));
    epr_cfg.bind(epr->add_option("--b1", epr_args.b1, "first b-side angle (deg)"),
                 setter_for(&epr_args.b1));
    epr_cfg.bind(epr->add_option("--b2", epr_args.b2, "second b-side angle (deg)"),
                 setter_for(&epr_args.b2));
    epr_cfg.bind(epr->add_option("--n", epr_args.n, "pairs per setting"),
                 setter_for(&epr_args.n));
    epr_cfg.bind(epr->add_option("--model", epr_args.model, "quantum or a response model"),
                 setter_for(&epr_args.model));
    epr_cfg.bind(epr->add_option("--seed", epr_args.seed, "master seed"),
                 setter_for(&epr_args.seed));
    epr_cfg.bind(epr->add_option("--threads", epr_args.threads, "worker threads"),
                 setter_for(&epr_args.threads));
    epr_cfg.bind(epr->add_option("--format", epr_args.format, "csv | json"),
                 setter_for(&epr_args.format));
    epr_cfg.bind(epr->add_option("--out", epr_args.out, "output path"),
                 setter_for(&epr_args.out));
    epr->add_option("--config", epr_args.config, "JSON config file");

    auto* lhv = app.add_subcommand("lhv-run", "CHSH runs of one response model over many seeds");
    lhv_cfg.bind(lhv->add_option("--model", lhv_args.model, "response model name"),
                 setter_for(&lhv_args.model));
    lhv_cfg.bind(lhv->add_option("--a1", lhv_args.a1, "first a-side angle (deg)"),
                 setter_for(&lhv_args.a1));
    lhv_cfg.bind(lhv->add_option("--a2", lhv_args.a2, "second a-side angle (deg)"),
                 setter_for(&lhv_args.a2));
    lhv_cfg.bind(lhv->add_option("--b1", lhv_args.b1, "first b-side angle (deg)"),
                 setter_for(&lhv_args.b1));
    lhv_cfg.bind(lhv->add_option("--b2", lhv_args.b2, "second b-side angle (deg)"),
                 setter_for(&lhv_args.b2));
    lhv_cfg.bind(lhv->add_option("--n", lhv_args.n, "pairs per setting"),
                 setter_for(&lhv_args.n));
    lhv_cfg.bind(lhv->add_option("--seeds", lhv_args.seeds, "independent runs"),
                 setter_for(&lhv_args.seeds));
    lhv_cfg.bind(lhv->add_option("--seed", lhv_args.seed, "master seed"),
                 setter_for(&lhv_args.seed));
    lhv_cfg.bind(lhv->add_option("--threads", lhv_args.threads, "worker threads"),
                 setter_for(&lhv_args.threads));
    lhv_cfg.bind(lhv->add_option("--format", lhv_args.format, "csv | json"),
                 setter_for(&lhv_args.format));
    lhv_cfg.bind(lhv->add_option("--out", lhv_args.out, "output path"),
                 setter_for(&lhv_args.out));
    lhv->add_option("--config", lhv_args.config, "JSON config file");

    auto* chain = app.add_subcommand("chain", "transmission through a polarizer chain");
    chain_cfg.bind(chain->add_option("--angles", chain_args.angles,
                                     "comma-separated polarizer angles (deg)"),
                   setter_for(&chain_args.angles));
    chain_cfg.bind(chain->add_option("--model", chain_args.model, "response model name"),
                   setter_for(&chain_args.model));
    chain_cfg.bind(chain->add_option("--n", chain_args.n, "photons"),
                   setter_for(&chain_args.n));
    chain_cfg.bind(chain->add_option("--seed", chain_args.seed, "master seed"),
                   setter_for(&chain_args.seed));
    chain_cfg.bind(chain->add_option("--threads", chain_args.threads, "worker threads"),
                   setter_for(&chain_args.threads));
    chain_cfg.bind(chain->add_option("--format", chain_args.format, "csv | json"),
                   setter_for(&chain_args.format));
    chain_cfg.bind(chain->add_option("--out", chain_args.out, "output path"),
                   setter_for(&chain_args.out));
    chain->add_option("--config", chain_args.config, "JSON config file");

    auto* evolve = app.add_subcommand("evolve", "time series for the toy evolution models");
    evolve_cfg.bind(evolve->add_option("--mode", evolve_args.mode, "compare | shift"),
                    setter_for(&evolve_args.mode));
    evolve_cfg.bind(evolve->add_option("--tmax", evolve_args.tmax, "end time (compare mode)"),
                    setter_for(&evolve_args.tmax));
    evolve_cfg.bind(evolve->add_option("--dt", evolve_args.dt, "time step (compare mode)"),
                    setter_for(&evolve_args.dt));
    evolve_cfg.bind(evolve->add_option("--n", evolve_args.n, "lattice half width (shift mode)"),
                    setter_for(&evolve_args.n));
    evolve_cfg.bind(evolve->add_option("--site", evolve_args.site,
                                       "initial site in the incoming half (shift mode)"),
                    setter_for(&evolve_args.site));
    evolve_cfg.bind(evolve->add_option("--seed", evolve_args.seed, "master seed"),
                    setter_for(&evolve_args.seed));
    evolve_cfg.bind(evolve->add_option("--format", evolve_args.format, "csv | json"),
                    setter_for(&evolve_args.format));
    evolve_cfg.bind(evolve->add_option("--out", evolve_args.out, "output path"),
                    setter_for(&evolve_args.out));
    evolve->add_option("--config", evolve_args.config, "JSON config file");

    auto* phase = app.add_subcommand("phase", "phase-operator unitarity-defect report");
    phase_cfg.bind(phase->add_option("--nmax", phase_args.nmax, "number-basis truncation"),
                   setter_for(&phase_args.nmax));
    phase_cfg.bind(phase->add_option("--seed", phase_args.seed, "master seed"),
                   setter_for(&phase_args.seed));
    phase_cfg.bind(phase->add_option("--out", phase_args.out, "output path"),
                   setter_for(&phase_args.out));
    phase->add_option("--config", phase_args.config, "JSON config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return EXIT_USAGE;
    }

    try {
        if (bounds->parsed()) {
            if (!bounds_args.config.empty()) bounds_cfg.apply(bounds_args.config);
            return run_bounds(bounds_args);
        }
        if (epr->parsed()) {
            if (!epr_args.config.empty()) epr_cfg.apply(epr_args.config);
            return run_epr_scan(epr_args);
        }
        if (lhv->parsed()) {
            if (!lhv_args.config.empty()) lhv_cfg.apply(lhv_args.config);
            return run_lhv(lhv_args);
        }
        if (chain->parsed()) {
            if (!chain_args.config.empty()) chain_cfg.apply(chain_args.config);
            return run_chain(chain_args);
        }
        if (evolve->parsed()) {
            if (!evolve_args.config.empty()) evolve_cfg.apply(evolve_args.config);
            return run_evolve(evolve_args);
        }
        if (phase->parsed()) {
            if (!phase_args.config.empty()) phase_cfg.apply(phase_args.config);
            return run_phase(phase_args);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_RUNTIME;
    }
    return EXIT_USAGE;
}

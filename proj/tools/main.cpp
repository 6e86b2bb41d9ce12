#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "solenoid/io.hpp"
#include "solenoid/pathspace.hpp"

namespace {

using namespace solenoid;

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    double tol = 1e-10;
};

std::string out_path(const Options& opt, const std::string& name) {
    std::filesystem::create_directories(opt.out_dir);
    return (std::filesystem::path(opt.out_dir) / name).string();
}

// m0 from either an inline filter or an inline step function on `sys`.
StepFunction load_m0(const SystemSpec& sys, const Json& cfg, int resolution) {
    if (cfg.contains("filter")) {
        StepFunction m0 = filter_step(filter_from_json(cfg.at("filter")), resolution);
        if (sys != m0.system())
            throw InvalidSpec("filter does not live on the configured system");
        return m0;
    }
    if (cfg.contains("m0")) return step_from_json(sys, cfg.at("m0"));
    throw InvalidSpec("config needs \"filter\" or \"m0\"");
}

StepFunction load_weight(const SystemSpec& sys, const Json& cfg, int resolution) {
    if (cfg.contains("weight")) return step_from_json(sys, cfg.at("weight"));
    return weight_from_filter(load_m0(sys, cfg, resolution));
}

StepFunction load_h(const SystemSpec& sys, const Json& cfg, const BasisPtr& basis) {
    if (cfg.contains("h")) return step_from_json(sys, cfg.at("h"));
    return const_step(basis, Complex(1.0, 0.0));
}

// Lexicographically smallest admissible word of the given length.
SymbolWord smallest_word(const SystemSpec& sys, int len) {
    SymbolWord w;
    const int K = sys.alphabet_size();
    std::function<bool(int)> extend = [&](int remaining) {
        if (remaining == 0) return true;
        for (int s = 0; s < K; ++s) {
            if (!w.empty()) {
                const auto& succ = sys.successors(w.back());
                if (!std::binary_search(succ.begin(), succ.end(), s)) continue;
            }
            w.push_back(s);
            if (extend(remaining - 1)) return true;
            w.pop_back();
        }
        return false;
    };
    if (!extend(len)) throw InvalidSpec("no admissible word of the requested length");
    return w;
}

PointCode default_point(const SystemSpec& sys, int resolution) {
    if (sys.is_circle()) return CellIndex{resolution, 0};
    if (sys.is_ifs()) return SymbolWord(resolution, sys.ifs_spec().digits.front());
    return smallest_word(sys, resolution);
}

int cmd_perron(const Options& opt) {
    const Json cfg = load_json_file(opt.config_path);
    const SystemSpec sys = system_from_json(cfg.at("system"));
    const int resolution = cfg.at("resolution").get<int>();
    const StepFunction W = load_weight(sys, cfg, resolution);
    const PerronData pd = solve_perron(W, opt.tol);

    Json j;
    j["lambda0"] = pd.lambda0;
    Json h = Json::array();
    for (const Complex& v : pd.h.values) h.push_back(complex_to_json(v));
    j["h"] = std::move(h);
    j["nu"] = pd.nu.mass;
    j["iterations"] = pd.iterations;
    j["residual"] = pd.residual;
    write_text_file(out_path(opt, "perron.json"), dump_json(j));
    return 0;
}

int cmd_check(const Options& opt) {
    const Json cfg = load_json_file(opt.config_path);
    const SystemSpec sys = system_from_json(cfg.at("system"));
    const int resolution = cfg.at("resolution").get<int>();
    const BasisPtr basis = make_basis(sys, resolution);
    const StepFunction m0 = load_m0(sys, cfg, resolution);
    const StepFunction h = load_h(sys, cfg, basis);
    const MeasureVector mu = canonical_measure(basis);
    const int depth = cfg.value("depth", 3);
    const int word_depth = cfg.value("word_depth", 4);

    // Deterministic complex test function for the omega-side residuals.
    SplitMix64 rng(opt.seed);
    StepFunction f = const_step(basis, Complex(0.0, 0.0));
    for (Complex& v : f.values) {
        const double re = rng.next_double(-1.0, 1.0);
        v = Complex(re, rng.next_double(-1.0, 1.0));
    }

    const OmegaFamily fam = make_omega_family(m0, h, mu);
    const PointCode x = cfg.contains("x") ? point_from_json(sys, cfg.at("x"))
                                          : default_point(sys, resolution);
    const PathMeasure P = make_path_measure(weight_from_filter(m0), h, x);
    double consistency = 0.0;
    std::function<void(BranchWord&, int)> walk = [&](BranchWord& w, int remaining) {
        consistency = std::max(consistency, consistency_residual(P, w));
        if (remaining == 0) return;
        PointCode z = x;
        for (int k : w) z = branch(sys, k, z);
        for (int k = 0; k < branch_count(sys, z); ++k) {
            w.push_back(k);
            walk(w, remaining - 1);
            w.pop_back();
        }
    };
    BranchWord w;
    walk(w, word_depth - 1);

    struct Row {
        const char* name;
        double value;
    };
    const Row rows[] = {
        {"strong_invariance", strong_invariance_residual(mu)},
        {"prf", prf_residual(m0, h)},
        {"omega_compatibility", omega_compat_residual(fam, f, depth)},
        {"radon_nikodym", radon_nikodym_residual(fam, f, depth)},
        {"path_consistency", consistency},
    };
    Json checks = Json::array();
    bool pass = true;
    for (const Row& r : rows) {
        const bool ok = r.value <= opt.tol;
        pass = pass && ok;
        checks.push_back(
            {{"name", r.name}, {"value", r.value}, {"tolerance", opt.tol}, {"pass", ok}});
    }
    Json j;
    j["checks"] = std::move(checks);
    j["pass"] = pass;
    write_text_file(out_path(opt, "check.json"), dump_json(j));
    return pass ? 0 : 2;
}

int cmd_cascade(const Options& opt) {
    const Json cfg = load_json_file(opt.config_path);
    const FilterSpec m0 = filter_from_json(cfg.at("filter"));
    const int K = cfg.at("K").get<int>();
    const FreqGrid grid = make_grid(cfg.at("T").get<double>(), cfg.at("M").get<std::int64_t>());
    const ScalingApprox s = cascade_product(m0, K, grid);

    write_text_file(out_path(opt, "cascade.csv"), scaling_to_csv(s));
    Json j;
    j["K"] = K;
    j["T"] = grid.T;
    j["M"] = grid.M;
    j["scaling_residual"] = scaling_residual(s, m0);
    write_text_file(out_path(opt, "cascade.json"), dump_json(j));
    return 0;
}

int cmd_pathsim(const Options& opt) {
    const Json cfg = load_json_file(opt.config_path);
    const SystemSpec sys = system_from_json(cfg.at("system"));
    const int resolution = cfg.at("resolution").get<int>();
    const StepFunction W = load_weight(sys, cfg, resolution);
    const StepFunction h = load_h(sys, cfg, W.basis);
    const PointCode x = cfg.contains("x") ? point_from_json(sys, cfg.at("x"))
                                          : default_point(sys, resolution);
    const int n = cfg.at("n").get<int>();
    const long long samples = cfg.at("samples").get<long long>();
    if (samples < 1) throw InvalidSpec("need samples >= 1");
    const PathMeasure P = make_path_measure(W, h, x);

    std::string csv = "path,word,endpoint\n";
    double mean = 0.0, m2 = 0.0;
    for (long long i = 0; i < samples; ++i) {
        SplitMix64 rng = SplitMix64::substream(opt.seed, static_cast<std::uint64_t>(i));
        const PathSample s = sample_path(P, n, rng);
        const double endpoint = P.W.basis->cell_coordinate(s.cells.back());
        csv += std::to_string(i);
        csv += ',';
        for (std::size_t k = 0; k < s.word.size(); ++k) {
            if (k) csv += '-';
            csv += std::to_string(s.word[k]);
        }
        csv += ',';
        csv += format_double(endpoint);
        csv += '\n';
        const double delta = endpoint - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (endpoint - mean);
    }
    write_text_file(out_path(opt, "paths.csv"), csv);

    Json j;
    j["n"] = n;
    j["samples"] = samples;
    j["mean"] = mean;
    j["stderr"] = samples > 1 ? std::sqrt(m2 / (static_cast<double>(samples - 1) *
                                                static_cast<double>(samples)))
                              : 0.0;
    write_text_file(out_path(opt, "summary.json"), dump_json(j));
    return 0;
}

int cmd_multiplicity(const Options& opt) {
    const Json cfg = load_json_file(opt.config_path);
    const SystemSpec sys = system_from_json(cfg.at("system"));
    const MultFn m = mult_from_json(sys, cfg.at("m"));
    const MultFn induced = induced_multiplicity(m);
    const MultFn detail = detail_multiplicity(m);

    Json j;
    j["induced"] = mult_to_json(induced);
    j["detail"] = mult_to_json(detail);
    write_text_file(out_path(opt, "multiplicity.json"), dump_json(j));
    write_text_file(out_path(opt, "induced.csv"), mult_to_csv(induced));
    write_text_file(out_path(opt, "detail.csv"), mult_to_csv(detail));
    return 0;
}

int cmd_solenoid(const Options& opt) {
    const Json cfg = load_json_file(opt.config_path);
    const SystemSpec sys = system_from_json(cfg.at("system"));
    const int resolution = cfg.at("resolution").get<int>();
    const BasisPtr basis = make_basis(sys, resolution);
    const StepFunction m0 = load_m0(sys, cfg, resolution);
    const StepFunction h = load_h(sys, cfg, basis);
    const StepFunction xi = step_from_json(sys, cfg.at("xi"));
    const int n = cfg.value("n", 0);
    const int K = cfg.at("K").get<int>();

    const OmegaFamily fam = make_omega_family(m0, h, canonical_measure(basis));
    const MartingaleFn m = lift_to_martingale(fam, xi, n, K);
    const std::vector<double> norms = norm_sequence(m);

    std::string csv = "level,norm\n";
    for (std::size_t lvl = 0; lvl < norms.size(); ++lvl) {
        csv += std::to_string(lvl);
        csv += ',';
        csv += format_double(norms[lvl]);
        csv += '\n';
    }
    write_text_file(out_path(opt, "norms.csv"), csv);
    const std::string m0_ref = cfg.contains("filter") ? "inline:filter" : "inline:m0";
    const std::string h_ref = cfg.contains("h") ? "inline:h" : "const:1";
    write_text_file(out_path(opt, "martingale.json"),
                    dump_json(martingale_to_json(m, m0_ref, h_ref)));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transfer-operator and martingale toolkit for N-to-1 dynamics"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--config", opt.config_path, "experiment config (JSON)")->required();
    app.add_option("--out", opt.out_dir, "output directory (default .)");
    app.add_option("--seed", opt.seed, "RNG seed (default 0)");
    app.add_option("--tol", opt.tol, "convergence / check tolerance (default 1e-10)");

    app.add_subcommand("perron", "Perron eigendata of the configured transfer operator");
    app.add_subcommand("check", "residual suite for a (system, m0, h) bundle");
    app.add_subcommand("cascade", "scaling-function cascade on a frequency grid");
    app.add_subcommand("pathsim", "sample inverse-orbit paths from the configured point");
    app.add_subcommand("multiplicity", "induced and detail multiplicity counts");
    app.add_subcommand("solenoid", "lift a step function to a martingale and report norms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        const std::string sub = app.get_subcommands().front()->get_name();
        if (sub == "perron") return cmd_perron(opt);
        if (sub == "check") return cmd_check(opt);
        if (sub == "cascade") return cmd_cascade(opt);
        if (sub == "pathsim") return cmd_pathsim(opt);
        if (sub == "multiplicity") return cmd_multiplicity(opt);
        return cmd_solenoid(opt);
    } catch (const solenoid::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == solenoid::Error::Kind::Config ? 1 : 2;
    } catch (const solenoid::Json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

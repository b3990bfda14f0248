#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dail/analysis.hpp"
#include "dail/experiments.hpp"
#include "dail/latin.hpp"
#include "dail/oracle.hpp"
#include "dail/sim.hpp"

namespace {

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) seeds.push_back(std::stoull(tok));
    }
    return seeds;
}

std::filesystem::path default_out_dir() {
    if (const char* env = std::getenv("DAIL_OUT_DIR")) return env;
    return ".";
}

void apply_config_file(dail::sim::NetworkConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("config", "cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            auto end = s.find_last_not_of(" \t\r");
            s.erase(end == std::string::npos ? 0 : end + 1);
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (key == "sensors_per_wban") cfg.sensors_per_wban = std::stoi(val);
        else if (key == "channels") cfg.channels = std::stoi(val);
        else if (key == "slots_per_sensor") cfg.slots_per_sensor = std::stoi(val);
        else if (key == "omega") cfg.omega = std::stod(val);
        else if (key == "superframes") cfg.superframes = std::stoi(val);
        else if (key == "area_side") cfg.area_side = std::stod(val);
        else if (key == "body_radius") cfg.body_radius = std::stod(val);
        else if (key == "interference_radius") cfg.interference_radius = std::stod(val);
        else if (key == "e_tx_mw") cfg.energy.e_tx_mw = std::stod(val);
        else if (key == "retry_limit") cfg.energy.retry_limit = std::stoi(val);
        else if (key == "assignment") {
            if (val == "coordinated")
                cfg.assignment = dail::sim::AssignmentMode::kCoordinatedDistinct;
            else if (val == "random")
                cfg.assignment = dail::sim::AssignmentMode::kIidRandom;
            else
                throw CLI::ValidationError("assignment",
                                           "expected coordinated or random");
        } else {
            throw CLI::ValidationError("config", "unknown key: " + key);
        }
    }
}

int cmd_run(const std::string& preset_id, const std::string& seeds_spec,
            std::string out_path, const std::string& config_path,
            int superframes, double omega, const std::string& runs_dir) {
    auto preset = dail::exp::make_preset(preset_id);
    if (!config_path.empty()) apply_config_file(preset.base, config_path);
    if (superframes > 0) preset.base.superframes = superframes;
    if (omega >= 0.0) preset.base.omega = omega;

    std::vector<std::uint64_t> seeds = parse_seeds(seeds_spec);
    if (seeds.empty())
        for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);

    auto result = dail::exp::run_experiment(preset, seeds);

    if (out_path.empty())
        out_path = (default_out_dir() / (preset_id + "_summary.csv")).string();
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 2;
    }
    dail::exp::write_summary_csv(out, result);
    std::cout << "wrote " << out_path << "\n";

    if (!runs_dir.empty()) {
        std::filesystem::create_directories(runs_dir);
        for (int value : preset.sweep_values) {
            for (auto scheme :
                 {dail::sim::Scheme::kDail, dail::sim::Scheme::kSms}) {
                for (auto seed : seeds) {
                    dail::sim::NetworkConfig cfg = preset.base;
                    cfg.seed = seed;
                    if (preset.sweep_var == "n_wbans")
                        cfg.n_wbans = value;
                    else
                        cfg.frame_length = value;
                    auto rep = dail::exp::run_single(cfg, scheme);
                    std::string name =
                        std::string(dail::sim::scheme_name(scheme)) + "_" +
                        std::to_string(value) + "_" + std::to_string(seed) +
                        ".csv";
                    std::ofstream rout(std::filesystem::path(runs_dir) / name);
                    dail::sim::write_run_csv(rout, rep);
                }
            }
        }
        std::cout << "per-run CSVs in " << runs_dir << "\n";
    }

    if (!result.bounds_ok) {
        std::cerr << "collision bound violations detected:\n";
        for (const auto& v : result.bound_violations)
            std::cerr << "  " << v << "\n";
        return 1;
    }
    return 0;
}

int cmd_analyze(int Q, int M, int K, double omega, int family_size,
                long long trials, std::uint64_t seed) {
    dail::AnalyticalParams p{Q, M, K, omega, family_size};
    try {
        p.validate();
    } catch (const std::exception& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 1;
    }

    auto [lo, hi] = dail::collision_bounds(Q, K);
    auto consistent =
        dail::success_probability(p, dail::LambdaVariant::kConsistent);
    auto strict = dail::success_probability(p, dail::LambdaVariant::kStrict);
    auto normalized =
        dail::success_probability(p, dail::LambdaVariant::kNormalized);
    double exact = dail::oracle::exact_lambda(p);
    dail::oracle::OracleConfig ocfg{trials, seed, p};
    auto mc = dail::oracle::monte_carlo_lambda(ocfg);

    std::printf("Q=%d M=%d K=%d omega=%.4g m=%d Z=%lld\n", Q, M, K, omega,
                family_size, p.Z());
    std::printf("collision bounds per superframe: (%d, %d)\n", lo, hi);
    std::printf("%-28s %s\n", "lambda variant", "value");
    std::printf("%-28s %.6f%s\n", "expanded-sum coefficients",
                consistent.lambda, consistent.clamped ? " (clamped)" : "");
    std::printf("%-28s %.6f%s\n", "literal eq. coefficients", strict.lambda,
                strict.model_inconsistent ? " (terms exceeded [0,1])" : "");
    std::printf("%-28s %.6f\n", "normalized binomial", normalized.lambda);
    std::printf("%-28s %.6f\n", "exact pattern model", exact);
    std::printf("%-28s %.6f +/- %.6f (%lld trials)%s\n", "monte carlo",
                mc.estimate, mc.std_error, mc.trials,
                mc.low_precision ? " [low precision]" : "");
    return 0;
}

int cmd_verify(int max_prime) {
    bool ok = true;
    for (int q = 2; q <= max_prime; ++q) {
        if (!dail::is_prime(q)) continue;
        auto family = dail::generate_mols(q);
        auto report = dail::oracle::exhaustive_theorem_check(family, q, q);
        std::printf("q=%-3d squares=%-3zu pairs=%-8lld %s\n", q, family.size(),
                    report.pairs_checked, report.ok() ? "ok" : "VIOLATION");
        if (!report.ok()) {
            ok = false;
            std::cerr << "  " << report.violations.front().describe() << "\n";
        }
    }
    if (max_prime >= 17) {
        auto family = dail::generate_mols(17);
        auto report = dail::oracle::exhaustive_theorem_check(family, 16, 12);
        std::printf("q=17 cut 16x12 pairs=%-8lld %s\n", report.pairs_checked,
                    report.ok() ? "ok" : "VIOLATION");
        if (!report.ok()) {
            ok = false;
            std::cerr << "  " << report.violations.front().describe() << "\n";
        }
    }
    return ok ? 0 : 1;
}

int cmd_rects(int q, int rows, int cols, const std::string& out_path) {
    auto family = dail::generate_mols(q);
    if (rows <= 0) rows = q;
    if (cols <= 0) cols = q;
    if (out_path.empty()) {
        dail::write_family_rectangles(std::cout, family, rows, cols);
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 2;
        }
        dail::write_family_rectangles(out, family, rows, cols);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DAIL channel/time-slot hopping: experiments, analysis, "
                 "verification"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run an experiment preset sweep");
    std::string preset = "exp1", seeds, out, config, runs_dir;
    int superframes = 0;
    double omega = -1.0;
    run->add_option("--preset", preset, "exp1, exp2 or exp3")
        ->check(CLI::IsMember({"exp1", "exp2", "exp3"}));
    run->add_option("--seeds", seeds, "comma-separated seed list");
    run->add_option("--out", out, "summary CSV path");
    run->add_option("--config", config, "key=value override file");
    run->add_option("--superframes", superframes, "superframes per run");
    run->add_option("--omega", omega, "sensor use factor");
    run->add_option("--runs-out", runs_dir, "directory for per-run CSVs");

    auto* analyze = app.add_subcommand("analyze",
                                       "closed-form collision model");
    int Q = 0, M = 16, K = 12, family_size = 16;
    double aomega = 0.5;
    long long trials = 1'000'000;
    std::uint64_t seed = 1;
    analyze->add_option("--q", Q, "interfering neighbor sensors")->required();
    analyze->add_option("--m", M, "channel count");
    analyze->add_option("--k", K, "slots per superframe");
    analyze->add_option("--omega", aomega, "use factor");
    analyze->add_option("--family-size", family_size, "orthogonal family size");
    analyze->add_option("--trials", trials, "monte carlo trials");
    analyze->add_option("--seed", seed, "monte carlo seed");

    auto* verify = app.add_subcommand("verify",
                                      "exhaustive overlap checks");
    int max_prime = 17;
    verify->add_option("--max-prime", max_prime, "largest prime order");

    auto* rects = app.add_subcommand("rects", "emit family rectangles");
    int rq = 17, rrows = 0, rcols = 0;
    std::string rout;
    rects->add_option("--q", rq, "prime order")->required();
    rects->add_option("--rows", rrows, "channels (default q)");
    rects->add_option("--cols", rcols, "slots (default q)");
    rects->add_option("--out", rout, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(preset, seeds, out, config, superframes, omega,
                           runs_dir);
        if (analyze->parsed())
            return cmd_analyze(Q, M, K, aomega, family_size, trials, seed);
        if (verify->parsed()) return cmd_verify(max_prime);
        if (rects->parsed()) return cmd_rects(rq, rrows, rcols, rout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

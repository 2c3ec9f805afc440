// Command-line front end for the D2D underlay simulator: analytic sweeps,
// Monte Carlo experiments and analytic-vs-simulated comparisons, all
// emitting CSV.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "d2d/analysis.hpp"
#include "d2d/cli.hpp"
#include "d2d/config.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> drops;
    std::optional<int> threads;
    std::string out_path;
    bool dump = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "config file (key = value)");
    cmd->add_option("--seed", o.seed, "override the root seed");
    cmd->add_option("--drops", o.drops, "override the number of drops");
    cmd->add_option("--threads", o.threads, "worker threads for the drop loop");
    cmd->add_option("--out", o.out_path, "output CSV path (default: stdout)");
    cmd->add_flag("--dump-config", o.dump, "print the effective config and exit");
}

d2d::RunConfig make_config(const CommonOpts& o) {
    d2d::RunConfig cfg =
        o.config_path.empty() ? d2d::parse_config("") : d2d::load_config_file(o.config_path);
    if (o.seed) cfg.spec.seed = *o.seed;
    if (o.drops) cfg.spec.n_drops = *o.drops;
    if (o.threads) cfg.spec.threads = *o.threads;
    if (!o.out_path.empty()) cfg.out_path = o.out_path;
    return cfg;
}

// output stream bound to the configured path, or stdout
class OutStream {
  public:
    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw d2d::ConfigError("cannot open output file: " + path);
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-cell D2D underlay power-control simulator"};
    app.require_subcommand(1);

    CommonOpts analyze_opts, simulate_opts, compare_opts, sweep_opts;
    auto* analyze = app.add_subcommand("analyze", "evaluate the analytic curves");
    add_common(analyze, analyze_opts);
    auto* simulate = app.add_subcommand("simulate", "run the Monte Carlo experiment");
    add_common(simulate, simulate_opts);
    auto* compare = app.add_subcommand("compare", "simulate and check against the analysis");
    add_common(compare, compare_opts);
    auto* sweep = app.add_subcommand("sweep", "repeat analyze/simulate over one key");
    add_common(sweep, sweep_opts);
    std::string sweep_key, sweep_mode = "analyze";
    std::vector<std::string> sweep_values;
    sweep->add_option("--key", sweep_key, "config key to sweep")->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")
        ->required()
        ->delimiter(',');
    sweep->add_option("--mode", sweep_mode, "analyze or simulate");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            const d2d::RunConfig cfg = make_config(analyze_opts);
            if (analyze_opts.dump) {
                std::cout << d2d::dump_config(cfg);
                return 0;
            }
            OutStream out(cfg.out_path);
            d2d::cli::cmd_analyze(cfg, out.get());
        } else if (simulate->parsed()) {
            const d2d::RunConfig cfg = make_config(simulate_opts);
            if (simulate_opts.dump) {
                std::cout << d2d::dump_config(cfg);
                return 0;
            }
            OutStream out(cfg.out_path);
            d2d::cli::cmd_simulate(cfg, out.get());
        } else if (compare->parsed()) {
            const d2d::RunConfig cfg = make_config(compare_opts);
            if (compare_opts.dump) {
                std::cout << d2d::dump_config(cfg);
                return 0;
            }
            OutStream out(cfg.out_path);
            const double containment = d2d::cli::cmd_compare(cfg, out.get(), std::cout);
            if (containment < 0.9) return 4;
        } else if (sweep->parsed()) {
            const d2d::RunConfig cfg = make_config(sweep_opts);
            if (sweep_opts.dump) {
                std::cout << d2d::dump_config(cfg);
                return 0;
            }
            OutStream out(cfg.out_path);
            d2d::cli::cmd_sweep(cfg, sweep_key, sweep_values, sweep_mode, out.get());
        }
    } catch (const d2d::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const d2d::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

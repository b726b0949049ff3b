// Command-line front end: one subcommand per experiment kind plus `plotdata`
// for re-rendering CSV artifacts.  Exit codes: 0 success, 2 configuration or
// usage error, 3 numerical failure, 4 capacity exceeded.
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "zk/csv.hpp"
#include "zk/errors.hpp"
#include "zk/experiment.hpp"

namespace {

struct RunArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::vector<std::string> overrides;
    double s = 0.0;
    double cutoff = 0.0;
    double delta = 0.0;
    double auto_cutoff_T = 0.0;
    bool has_s = false, has_cutoff = false, has_delta = false, has_auto = false;
};

int run_kind(const std::string& kind, const RunArgs& a) {
    zk::ExperimentSpec spec;
    spec.kind = kind;
    spec.seed = a.seed;
    spec.out_dir = a.out_dir.empty() ? "runs/" + kind : a.out_dir;
    if (!a.config_path.empty()) spec.config = zk::Config::from_file(a.config_path);
    for (const auto& ov : a.overrides) {
        auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw zk::ConfigError("override must look like key=value: " + ov);
        std::string key = ov.substr(0, eq);
        std::string val = ov.substr(eq + 1);
        if (key.empty()) throw zk::ConfigError("override with empty key: " + ov);
        spec.config.set(key, val);
    }
    if (a.has_s) spec.config.set("s", zk::format_double(a.s));
    if (a.has_delta) spec.config.set("delta", zk::format_double(a.delta));
    if (a.has_cutoff) spec.config.set("cutoff", zk::format_double(a.cutoff));
    if (a.has_auto) {
        spec.config.set("cutoff", "0");
        spec.config.set("T", zk::format_double(a.auto_cutoff_T));
    }

    zk::ExperimentResult res = zk::run_experiment(spec);
    std::cout << "kind: " << kind << "\nout: " << spec.out_dir << "\n";
    for (const auto& name : res.artifacts) std::cout << "artifact: " << name << "\n";
    std::cout << res.summary;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudospectral toolkit for the coupled Schrodinger-wave system"};
    app.require_subcommand(1);

    RunArgs args;
    std::vector<CLI::App*> kind_cmds;
    for (const auto& kind : zk::experiment_kinds()) {
        CLI::App* cmd = app.add_subcommand(kind, "run the " + kind + " experiment");
        cmd->add_option("--config", args.config_path, "key = value configuration file");
        cmd->add_option("--seed", args.seed, "random seed (default 0)");
        cmd->add_option("--out", args.out_dir, "output directory (default runs/<kind>)");
        cmd->add_option("--set", args.overrides, "config override key=value (repeatable)");
        cmd->add_option("--s", args.s, "override regularity s")->each([&](const std::string&) {
            args.has_s = true;
        });
        cmd->add_option("--delta", args.delta, "override step-rule delta")
            ->each([&](const std::string&) { args.has_delta = true; });
        cmd->add_option("--cutoff", args.cutoff, "override frequency cutoff N")
            ->each([&](const std::string&) { args.has_cutoff = true; });
        cmd->add_option("--auto-cutoff", args.auto_cutoff_T,
                        "select the cutoff from this time horizon")
            ->each([&](const std::string&) { args.has_auto = true; });
        kind_cmds.push_back(cmd);
    }

    std::string plot_csv, plot_out, plot_columns;
    bool plot_log10 = false;
    CLI::App* plot = app.add_subcommand("plotdata", "render CSV columns as plot data");
    plot->add_option("--csv", plot_csv, "input CSV artifact")->required();
    plot->add_option("--out", plot_out, "output file")->required();
    plot->add_option("--columns", plot_columns, "comma-separated column names (default all)");
    plot->add_flag("--log10", plot_log10, "emit log10 of every value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (plot->parsed()) {
            std::vector<std::string> cols;
            if (!plot_columns.empty()) {
                std::string cur;
                std::stringstream ss(plot_columns);
                while (std::getline(ss, cur, ',')) cols.push_back(cur);
            }
            zk::emit_plotdata(plot_csv, plot_out, cols, plot_log10);
            std::cout << "wrote " << plot_out << "\n";
            return 0;
        }
        for (size_t i = 0; i < kind_cmds.size(); ++i)
            if (kind_cmds[i]->parsed()) return run_kind(zk::experiment_kinds()[i], args);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const zk::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const zk::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 4;
    } catch (const zk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

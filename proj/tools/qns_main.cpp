#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qns/experiment_config.hpp"
#include "qns/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"norm laboratory for critical spaces and mild Navier-Stokes solutions"};
    app.require_subcommand(0, 1);

    std::string config_path, out_dir, check_manifest, gen_spec, alpha_list;
    long long seed_override = -1;
    int resolution_override = 0;
    int threads = 0;

    app.add_option("--check", check_manifest, "re-verify a prior run's manifest");
    app.add_option("--threads", threads, "worker thread count (0 = library default)");

    std::vector<CLI::App*> subs;
    for (const auto& name : qns::known_subcommands()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "experiment config file");
        sub->add_option("--out", out_dir, "output root directory (default $QNS_OUT)");
        sub->add_option("--seed", seed_override, "override the config seed");
        sub->add_option("--resolution", resolution_override, "override the grid resolution");
        sub->add_option("--alpha", alpha_list, "override the alpha sweep, comma separated");
        sub->add_option("--threads", threads, "worker thread count");
        if (name == "gen") sub->add_option("--spec", gen_spec, "field spec string to emit");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    if (!check_manifest.empty()) return qns::run_check(check_manifest);

    CLI::App* active = nullptr;
    for (auto* sub : subs)
        if (sub->parsed()) active = sub;
    if (!active) {
        std::cerr << app.help() << '\n';
        return qns::kExitConfigError;
    }

    qns::ExperimentConfig cfg;
    try {
        if (!config_path.empty()) {
            cfg = qns::ExperimentConfig::load(config_path);
        } else {
            cfg = qns::ExperimentConfig::parse("[corpus]\nseed = 1\n");
        }
        if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
        if (resolution_override > 0) cfg.resolution = resolution_override;
        if (!alpha_list.empty()) {
            cfg.alphas.clear();
            std::stringstream ss(alpha_list);
            std::string item;
            while (std::getline(ss, item, ',')) cfg.alphas.push_back(std::stod(item));
        }
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return qns::kExitConfigError;
    }

    qns::RunFlags flags;
    flags.out_root = out_dir;
    flags.gen_spec = gen_spec;
    return qns::run(active->get_name(), cfg, flags);
}

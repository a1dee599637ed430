#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "m1gmg/errors.hpp"
#include "m1gmg/runner.hpp"

namespace {

constexpr const char* kKeys[] = {
    "problem",  "solver",     "nx",        "ny",       "cfl",      "l_max",
    "nu0",      "nul",        "nu_coarse", "pseudo_m",  "dtau_im0", "eps_outer", "eps_jacobi",
    "eps_i",    "eps_d",      "max_cycles", "max_iters", "bc",       "output_dir",
    "c",        "a_r",        "threads",   "t_final",  "safety"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gray M1 radiative transfer solver"};
    app.set_version_flag("--version", "m1gmg 1.0.0");
    bool defaults = false;
    app.add_flag("--list-defaults", defaults, "print every config key with its default value");

    CLI::App* run_cmd = app.add_subcommand("run", "execute one configured solve");
    std::string config_path;
    run_cmd->add_option("config", config_path, "flat key = value config file")->required();
    std::vector<m1gmg::KeyValue> overrides;
    for (const char* key : kKeys)
        run_cmd->add_option_function<std::string>(
            std::string("--") + key,
            [key, &overrides](const std::string& v) { overrides.emplace_back(key, v); },
            "override config key " + std::string(key));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (defaults) {
        std::fputs(m1gmg::list_defaults().c_str(), stdout);
        return 0;
    }
    if (!run_cmd->parsed()) {
        std::fputs(app.help().c_str(), stdout);
        return 2;
    }

    try {
        const m1gmg::RunConfig cfg = m1gmg::parse_config_file(config_path, overrides);
        const m1gmg::RunReport rep = m1gmg::run(cfg);
        std::fputs(rep.to_text().c_str(), stdout);
        return rep.tolerances_met ? 0 : 1;
    } catch (const m1gmg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const m1gmg::AdmissibilityError& e) {
        std::cerr << "admissibility error: " << e.what() << "\n";
        return 3;
    }
}

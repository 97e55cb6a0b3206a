#include "paramosc/commands.hpp"
#include "paramosc/error.hpp"
#include "paramosc/simd/kernels.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

namespace {

void set_if(paramosc::Config& cfg, const std::string& key, const std::optional<std::string>& v)
{
    if (v) {
        cfg.set(key, *v);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Near-threshold dynamics of a parametrically driven oscillator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", PARAMOSC_VERSION);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string format = "csv";
    app.add_option("--config", config_path, "INI config file")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "print the kernel ISA in use");

    std::map<std::string, CLI::App*> subs;
    subs["bifurcation"] = app.add_subcommand("bifurcation", "bifurcation lines, traced and closed form");
    subs["distribution"] = app.add_subcommand("distribution", "stationary distributions over a drive sweep");
    subs["rates"] = app.add_subcommand("rates", "activation-energy surfaces");
    subs["fpe"] = app.add_subcommand("fpe", "Fokker-Planck decrements and scaled nu_1 curves");
    subs["simulate"] = app.add_subcommand("simulate", "Langevin trajectories, ACF and MFPT estimates");
    subs["validate"] = app.add_subcommand("validate", "cross-check of rates, FPE and Langevin");
    for (auto& [name, sub] : subs) {
        sub->fallthrough();
    }

    std::optional<std::string> grid_n, q_max_rule, reference_d, k_eigs;
    subs["fpe"]->add_option("--grid-n", grid_n, "grid points (odd, >= 201)");
    subs["fpe"]->add_option("--q-max-rule", q_max_rule, "support:<threshold in units of D>");
    subs["fpe"]->add_option("--reference-D", reference_d, "noise used for the scaled curves");
    subs["fpe"]->add_option("--k-eigs", k_eigs, "nonzero decrements in the spectrum table");

    std::map<std::string, std::optional<std::string>> sim;
    for (const char* sec : {"simulate", "validate"}) {
        for (const char* key : {"dt", "steps", "ensemble", "decimation", "events"}) {
            subs[sec]->add_option(std::string("--") + key, sim[std::string(sec) + "." + key]);
        }
    }
    std::optional<std::string> channel, passage;
    subs["simulate"]->add_option("--channel", channel, "bistable, tristable_escape or tristable_entry");
    subs["simulate"]->add_option("--passage", passage, "commitment or saddle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string command;
    for (auto& [name, sub] : subs) {
        if (sub->parsed()) {
            command = name;
        }
    }

    try {
        paramosc::Config cfg =
            config_path.empty() ? paramosc::Config{} : paramosc::Config::from_file(config_path);
        set_if(cfg, "fpe.grid_n", grid_n);
        set_if(cfg, "fpe.q_max_rule", q_max_rule);
        set_if(cfg, "fpe.reference_D", reference_d);
        set_if(cfg, "fpe.k_eigs", k_eigs);
        for (const auto& [key, value] : sim) {
            if (key.compare(0, command.size() + 1, command + ".") == 0) {
                set_if(cfg, key, value);
            }
        }
        set_if(cfg, "simulate.channel", channel);
        set_if(cfg, "simulate.passage", passage);

        paramosc::RunOptions opts;
        opts.out = out_dir;
        opts.seed = seed;
        opts.threads = threads;
        opts.format = paramosc::parse_format(format);
        if (verbose) {
            std::cerr << "kernels: " << paramosc::simd::isa_name(paramosc::simd::kernels().isa) << "\n";
        }

        const paramosc::CommandResult res = paramosc::run_command(command, cfg, opts);
        for (const auto& line : res.report) {
            std::cout << line << "\n";
        }
        for (const auto& f : res.files) {
            std::cout << "wrote " << f.string() << "\n";
        }
        if (!res.passed) {
            std::cerr << "validation failed\n";
        }
        return paramosc::exit_code(res);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return paramosc::exit_code(e);
    }
}

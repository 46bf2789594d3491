#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "taghort/errors.hpp"
#include "taghort/pipeline.hpp"

namespace {

int env_threads() {
    if (const char* value = std::getenv("TAGHORT_THREADS")) {
        const int threads = std::atoi(value);
        if (threads > 0) return threads;
    }
    return 1;
}

struct CommonFlags {
    std::string manifest_path;
    std::optional<int> k;
    std::optional<int> folds;
    std::optional<std::uint64_t> seed;
    std::optional<double> time_limit;
    std::optional<std::string> mode;
    std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--manifest", flags.manifest_path, "JSON run manifest")->required();
    cmd->add_option("--k", flags.k, "cohort count override");
    cmd->add_option("--folds", flags.folds, "cross-validation fold count override");
    cmd->add_option("--seed", flags.seed, "random seed override");
    cmd->add_option("--time-limit", flags.time_limit, "solver time limit in seconds");
    cmd->add_option("--mode", flags.mode, "solver mode: exact|heuristic|auto")
        ->check(CLI::IsMember({"exact", "heuristic", "auto"}));
    cmd->add_option("--out", flags.out, "output directory override");
}

taghort::RunManifest load_with_overrides(const CommonFlags& flags) {
    taghort::RunManifest manifest = taghort::parse_manifest(flags.manifest_path);
    if (manifest.threads <= 0) manifest.threads = env_threads();
    if (flags.k) manifest.k = *flags.k;
    if (flags.folds) manifest.folds = *flags.folds;
    if (flags.seed) {
        manifest.seed = *flags.seed;
        manifest.solver.rng_seed = *flags.seed;
    }
    if (flags.time_limit) manifest.solver.time_limit = *flags.time_limit;
    if (flags.mode) {
        if (*flags.mode == "exact") manifest.solver.mode = taghort::SolveMode::Exact;
        else if (*flags.mode == "heuristic") manifest.solver.mode = taghort::SolveMode::Heuristic;
        else manifest.solver.mode = taghort::SolveMode::Auto;
    }
    if (flags.out) manifest.out_dir = *flags.out;
    return manifest;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tag-described cohort explanations over local feature importances"};
    app.require_subcommand(1);

    CommonFlags explain_flags;
    CommonFlags sweep_flags;
    CommonFlags baseline_flags;
    auto* explain = app.add_subcommand("explain", "fit cohorts at a fixed k");
    add_common(explain, explain_flags);
    auto* sweep = app.add_subcommand("sweep", "cross-validated k selection, then a final fit");
    add_common(sweep, sweep_flags);
    auto* baseline =
        app.add_subcommand("baseline", "decision-tree cohort baseline and head-to-head errors");
    add_common(baseline, baseline_flags);

    auto* synth = app.add_subcommand("synth", "generate the two-region ground-truth fixture");
    std::size_t n_per_region = 100;
    double noise = 0.0;
    std::uint64_t synth_seed = 0;
    std::string synth_out = ".";
    synth->add_option("--n-per-region", n_per_region, "samples per region");
    synth->add_option("--noise", noise, "importance noise stddev");
    synth->add_option("--seed", synth_seed, "random seed");
    synth->add_option("--out", synth_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (explain->parsed())
            return taghort::run_explain(load_with_overrides(explain_flags), std::cout);
        if (sweep->parsed())
            return taghort::run_sweep(load_with_overrides(sweep_flags), std::cout);
        if (baseline->parsed())
            return taghort::run_baseline(load_with_overrides(baseline_flags), std::cout);
        if (synth->parsed()) {
            taghort::SynthOptions options;
            options.spec.n_per_region = n_per_region;
            options.spec.noise_level = noise;
            options.spec.rng_seed = synth_seed;
            options.out_dir = synth_out;
            return taghort::run_synth(options, std::cout);
        }
    } catch (const taghort::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return taghort::kExitInputError;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return taghort::kExitInputError;
    }
    return taghort::kExitOk;
}

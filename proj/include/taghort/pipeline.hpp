#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "taghort/model_selection.hpp"
#include "taghort/preprocess.hpp"
#include "taghort/solver.hpp"
#include "taghort/synthetic.hpp"

namespace taghort {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitTimeoutNoResult = 2;

// Everything a run needs, loadable from a JSON manifest with CLI overrides
// applied on top. Reruns with the same manifest reproduce outputs byte for
// byte; timestamps live in their own report field.
struct RunManifest {
    std::filesystem::path importance_csv;
    std::filesystem::path features_csv;
    std::filesystem::path out_dir = ".";
    TagDerivationConfig tags;
    SolverOptions solver;
    int k = 2;
    std::vector<int> sweep_k_values = {1, 2, 3, 4};
    int folds = 5;
    std::uint64_t seed = 0;
    int threads = 0; // 0 = unset; the CLI falls back to TAGHORT_THREADS, then 1
    bool with_baseline = false;
};

RunManifest parse_manifest(const std::filesystem::path& path);

// Batch pipeline entry points; each writes its artifacts under out_dir and
// returns a process exit code. Diagnostics go to `log`.
int run_explain(const RunManifest& manifest, std::ostream& log);
int run_sweep(const RunManifest& manifest, std::ostream& log);
int run_baseline(const RunManifest& manifest, std::ostream& log);

struct SynthOptions {
    TwoRegionSpec spec = TwoRegionSpec::defaults();
    std::filesystem::path out_dir = ".";
};

// Writes the fixture as importance/feature CSVs plus ground-truth labels and
// a ready-to-run manifest.
int run_synth(const SynthOptions& options, std::ostream& log);

} // namespace taghort

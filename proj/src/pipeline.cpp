#include "taghort/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "taghort/errors.hpp"
#include "taghort/io.hpp"
#include "taghort/metrics.hpp"
#include "taghort/repid.hpp"

namespace taghort {

using json = nlohmann::ordered_json;

namespace {

std::string current_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json number(double v) {
    const double rounded = round_sig12(v);
    // Keep integral values integral in the output.
    if (rounded == static_cast<double>(static_cast<long long>(rounded)) &&
        std::abs(rounded) < 1e15)
        return static_cast<long long>(rounded);
    return rounded;
}

void write_json(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write \"" + path.string() + "\"");
    out << doc.dump(2) << "\n";
}

SolveMode parse_mode(const std::string& text) {
    if (text == "exact") return SolveMode::Exact;
    if (text == "heuristic") return SolveMode::Heuristic;
    if (text == "auto") return SolveMode::Auto;
    throw ParseError("manifest: unknown solver mode \"" + text + "\"");
}

struct LoadedData {
    std::vector<std::string> sample_ids;
    ImportanceMatrix W;
    TagMatrix D;
};

LoadedData load_inputs(const RunManifest& manifest) {
    ImportanceCsv imp = read_importance_csv(manifest.importance_csv);
    const FeatureTable features =
        read_features_csv(manifest.features_csv, manifest.tags, imp.sample_ids);
    TagMatrix D = derive_tags(features, manifest.tags);
    validate_inputs(imp.importances, D);
    return LoadedData{std::move(imp.sample_ids), std::move(imp.importances), std::move(D)};
}

void write_assignments(const std::filesystem::path& path,
                       const std::vector<std::string>& ids, const Partition& partition) {
    CsvTable table;
    table.header = {"sample_id", "cohort"};
    for (std::size_t i = 0; i < ids.size(); ++i)
        table.rows.push_back({ids[i], std::to_string(partition.cohort_of(i))});
    write_csv(path, table);
}

json cohorts_document(const CohortModel& model, const EvaluationEntry& entry,
                      const TagMatrix& D, const std::vector<std::string>& feature_names) {
    json doc;
    doc["k"] = model.k();
    doc["descriptiveness"] = model.descriptiveness;
    doc["compactness"] = number(model.compactness);
    doc["cohorts"] = json::array();
    for (int t = 0; t < model.k(); ++t) {
        const auto ti = static_cast<std::size_t>(t);
        json cohort;
        cohort["cohort"] = t + 1;
        cohort["size"] = model.cohort_sizes[ti];
        cohort["tags"] = json::array();
        for (int p : model.tag_sets[ti])
            cohort["tags"].push_back(D.dictionary[static_cast<std::size_t>(p)]);
        json mean;
        json relative;
        for (std::size_t j = 0; j < feature_names.size(); ++j) {
            mean[feature_names[j]] = number(model.cohort_means(ti, j));
            relative[feature_names[j]] = number(entry.mean_differences(ti, j));
        }
        cohort["mean_importance"] = std::move(mean);
        cohort["relative_importance"] = std::move(relative);
        doc["cohorts"].push_back(std::move(cohort));
    }
    return doc;
}

json solver_block(const SolveResult& result) {
    json block;
    block["proven_optimal"] = result.proven_optimal;
    block["timed_out"] = result.timed_out;
    block["phase1_descriptiveness"] = result.phase1_descriptiveness;
    block["nodes_explored"] = result.nodes_explored;
    block["wall_time_seconds"] = number(result.wall_time);
    return block;
}

json sweep_summary_block(const SweepReport& report) {
    json per_k = json::array();
    for (const auto& summary : report.per_k) {
        json row;
        row["k"] = summary.k;
        row["mean_val_error"] = number(summary.mean_val_error);
        row["std_val_error"] = number(summary.std_val_error);
        row["mean_train_compactness"] = number(summary.mean_train_compactness);
        row["mean_train_descriptiveness"] = number(summary.mean_train_descriptiveness);
        row["mean_fallback_rate"] = number(summary.mean_fallback_rate);
        row["all_proven_optimal"] = summary.all_proven_optimal;
        per_k.push_back(std::move(row));
    }
    return per_k;
}

void write_sweep_csv(const std::filesystem::path& path, const SweepReport& report) {
    CsvTable table;
    table.header = {"k",
                    "fold",
                    "train_compactness",
                    "train_descriptiveness",
                    "val_error_sum",
                    "val_error_mean",
                    "fallback_rate",
                    "proven_optimal"};
    for (const auto& cell : report.cells)
        table.rows.push_back({std::to_string(cell.k), std::to_string(cell.fold),
                              format_sig12(cell.train_compactness),
                              std::to_string(cell.train_descriptiveness),
                              format_sig12(cell.val_error_sum),
                              format_sig12(cell.val_error_mean),
                              format_sig12(cell.fallback_rate),
                              cell.proven_optimal ? "true" : "false"});
    write_csv(path, table);
}

} // namespace

RunManifest parse_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open manifest \"" + path.string() + "\"");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& err) {
        throw ParseError("manifest \"" + path.string() + "\": " + err.what());
    }

    RunManifest manifest;
    const auto base = path.parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() || base.empty() ? fp : base / fp;
    };

    try {
        manifest.importance_csv = resolve(doc.at("importance_csv").get<std::string>());
        manifest.features_csv = resolve(doc.at("features_csv").get<std::string>());
        if (doc.contains("out_dir"))
            manifest.out_dir = resolve(doc["out_dir"].get<std::string>());
        for (const auto& rule : doc.at("descriptors")) {
            const auto column = rule.at("column").get<std::string>();
            const auto kind = rule.at("rule").get<std::string>();
            if (kind == "quantile")
                manifest.tags.add_quantile(column, rule.at("q").get<int>());
            else if (kind == "onehot")
                manifest.tags.add_onehot(column);
            else if (kind == "passthrough")
                manifest.tags.add_passthrough(column);
            else
                throw ParseError("manifest: unknown descriptor rule \"" + kind + "\"");
        }
        if (doc.contains("k")) manifest.k = doc["k"].get<int>();
        if (doc.contains("seed")) manifest.seed = doc["seed"].get<std::uint64_t>();
        if (doc.contains("threads")) manifest.threads = doc["threads"].get<int>();
        if (doc.contains("baseline")) manifest.with_baseline = doc["baseline"].get<bool>();
        if (doc.contains("sweep")) {
            const auto& sweep = doc["sweep"];
            if (sweep.contains("k_values"))
                manifest.sweep_k_values = sweep["k_values"].get<std::vector<int>>();
            if (sweep.contains("folds")) manifest.folds = sweep["folds"].get<int>();
        }
        if (doc.contains("solver")) {
            const auto& solver = doc["solver"];
            if (solver.contains("mode"))
                manifest.solver.mode = parse_mode(solver["mode"].get<std::string>());
            if (solver.contains("time_limit") && !solver["time_limit"].is_null())
                manifest.solver.time_limit = solver["time_limit"].get<double>();
            if (solver.contains("exact_sample_limit"))
                manifest.solver.exact_sample_limit = solver["exact_sample_limit"].get<int>();
            if (solver.contains("restarts"))
                manifest.solver.restarts = solver["restarts"].get<int>();
            if (solver.contains("compactness_tolerance"))
                manifest.solver.compactness_tolerance =
                    solver["compactness_tolerance"].get<double>();
        }
    } catch (const json::exception& err) {
        throw ParseError("manifest \"" + path.string() + "\": " + err.what());
    }
    manifest.solver.rng_seed = manifest.seed;
    return manifest;
}

int run_explain(const RunManifest& manifest, std::ostream& log) {
    try {
        const LoadedData data = load_inputs(manifest);
        std::filesystem::create_directories(manifest.out_dir);

        SolverOptions opts = manifest.solver;
        opts.rng_seed = manifest.seed;
        const SolveResult result = solve(data.W, data.D, manifest.k, opts);
        const EvaluationEntry entry = evaluate_model(result.model, data.W, data.D);

        write_assignments(manifest.out_dir / "assignments.csv", data.sample_ids,
                          result.model.partition);
        write_json(manifest.out_dir / "cohorts.json",
                   cohorts_document(result.model, entry, data.D, data.W.feature_names));

        json report;
        report["tool_version"] = kToolVersion;
        report["command"] = "explain";
        report["k"] = manifest.k;
        report["descriptiveness"] = result.model.descriptiveness;
        report["compactness"] = number(result.model.compactness);
        report["solver"] = solver_block(result);
        report["prediction_error_sum"] = number(entry.prediction_error_sum);
        report["prediction_error_mean"] = number(entry.prediction_error_mean);
        report["coverage"] = {{"fallback_rate", number(entry.fallback_rate)}};
        if (manifest.with_baseline) {
            const TreeCohortModel tree = fit_tree(data.W, data.D, manifest.k);
            const PredictionErrorStats tree_err = tree_prediction_error(tree, data.W, data.D);
            report["repid"] = {{"leaves", tree.k()},
                               {"early_stop", tree.early_stop},
                               {"train_error_mean", number(tree_err.mean)}};
            report["taghort_train_error_mean"] = number(entry.prediction_error_mean);
        }
        json warnings = json::array();
        if (result.timed_out)
            warnings.push_back("time limit reached; result is best-effort, not proven optimal");
        report["warnings"] = std::move(warnings);
        report["timestamp"] = current_timestamp();
        write_json(manifest.out_dir / "report.json", report);

        log << "explain: k=" << manifest.k << " descriptiveness=" << result.model.descriptiveness
            << " compactness=" << format_sig12(result.model.compactness)
            << (result.proven_optimal ? " (proven optimal)" : "") << "\n";
        return kExitOk;
    } catch (const Error& err) {
        log << "error: " << err.what() << "\n";
        return kExitInputError;
    }
}

int run_sweep(const RunManifest& manifest, std::ostream& log) {
    try {
        const LoadedData data = load_inputs(manifest);
        std::filesystem::create_directories(manifest.out_dir);

        SweepConfig config;
        config.k_values = manifest.sweep_k_values;
        config.folds = manifest.folds;
        config.rng_seed = manifest.seed;
        config.solver = manifest.solver;
        config.threads = manifest.threads;
        const SweepReport report = sweep(data.W, data.D, config);

        write_sweep_csv(manifest.out_dir / "sweep.csv", report);

        // Final fit at the selected k on the full dataset.
        SolverOptions opts = manifest.solver;
        opts.rng_seed = manifest.seed;
        const SolveResult result = solve(data.W, data.D, report.selected_k, opts);
        const EvaluationEntry entry = evaluate_model(result.model, data.W, data.D);
        write_assignments(manifest.out_dir / "assignments.csv", data.sample_ids,
                          result.model.partition);
        write_json(manifest.out_dir / "cohorts.json",
                   cohorts_document(result.model, entry, data.D, data.W.feature_names));

        json doc;
        doc["tool_version"] = kToolVersion;
        doc["command"] = "sweep";
        doc["selected_k"] = report.selected_k;
        doc["folds"] = manifest.folds;
        doc["per_k"] = sweep_summary_block(report);
        doc["final_model"] = {{"k", report.selected_k},
                              {"descriptiveness", result.model.descriptiveness},
                              {"compactness", number(result.model.compactness)}};
        doc["solver"] = solver_block(result);
        doc["coverage"] = {{"fallback_rate", number(entry.fallback_rate)}};
        json warnings = json::array();
        if (result.timed_out)
            warnings.push_back("time limit reached; result is best-effort, not proven optimal");
        doc["warnings"] = std::move(warnings);
        doc["timestamp"] = current_timestamp();
        write_json(manifest.out_dir / "report.json", doc);

        log << "sweep: selected k=" << report.selected_k << "\n";
        return kExitOk;
    } catch (const Error& err) {
        log << "error: " << err.what() << "\n";
        return kExitInputError;
    }
}

int run_baseline(const RunManifest& manifest, std::ostream& log) {
    try {
        const LoadedData data = load_inputs(manifest);
        std::filesystem::create_directories(manifest.out_dir);

        const TreeCohortModel tree = fit_tree(data.W, data.D, manifest.k);

        // Cross-validated head-to-head on the same folds: the tree baseline
        // against the tag-cohort solver at the same k.
        const auto folds = make_folds(data.W.samples(), manifest.folds, manifest.seed);
        double tree_cv = 0.0;
        double tag_cv = 0.0;
        for (std::size_t f = 0; f < folds.size(); ++f) {
            std::vector<std::size_t> train;
            std::size_t cursor = 0;
            for (std::size_t i = 0; i < data.W.samples(); ++i) {
                if (cursor < folds[f].size() && folds[f][cursor] == i) {
                    ++cursor;
                    continue;
                }
                train.push_back(i);
            }
            Matrix wtr(train.size(), data.W.features());
            std::vector<std::uint8_t> dtr(train.size() * data.D.tags);
            for (std::size_t row = 0; row < train.size(); ++row) {
                for (std::size_t j = 0; j < data.W.features(); ++j)
                    wtr(row, j) = data.W.values(train[row], j);
                for (std::size_t p = 0; p < data.D.tags; ++p)
                    dtr[row * data.D.tags + p] = data.D.at(train[row], p);
            }
            Matrix wva(folds[f].size(), data.W.features());
            std::vector<std::uint8_t> dva(folds[f].size() * data.D.tags);
            for (std::size_t row = 0; row < folds[f].size(); ++row) {
                for (std::size_t j = 0; j < data.W.features(); ++j)
                    wva(row, j) = data.W.values(folds[f][row], j);
                for (std::size_t p = 0; p < data.D.tags; ++p)
                    dva[row * data.D.tags + p] = data.D.at(folds[f][row], p);
            }
            const ImportanceMatrix W_train(std::move(wtr), data.W.feature_names);
            const TagMatrix D_train(train.size(), data.D.tags, std::move(dtr), data.D.dictionary);
            const ImportanceMatrix W_val(std::move(wva), data.W.feature_names);
            const TagMatrix D_val(folds[f].size(), data.D.tags, std::move(dva), data.D.dictionary);

            const TreeCohortModel fold_tree = fit_tree(W_train, D_train, manifest.k);
            tree_cv += tree_prediction_error(fold_tree, W_val, D_val).mean;

            SolverOptions opts = manifest.solver;
            opts.rng_seed = manifest.seed + f;
            const SolveResult fit = solve(W_train, D_train, manifest.k, opts);
            tag_cv += importance_prediction_error_stats(fit.model, W_val, D_val).mean;
        }
        tree_cv /= static_cast<double>(folds.size());
        tag_cv /= static_cast<double>(folds.size());

        const std::vector<double> global = [&] {
            std::vector<double> mean(data.W.features(), 0.0);
            for (std::size_t i = 0; i < data.W.samples(); ++i)
                for (std::size_t j = 0; j < data.W.features(); ++j)
                    mean[j] += data.W.values(i, j);
            for (auto& v : mean) v /= static_cast<double>(data.W.samples());
            return mean;
        }();

        json doc;
        doc["tool_version"] = kToolVersion;
        doc["command"] = "baseline";
        doc["k"] = manifest.k;
        doc["leaves"] = json::array();
        for (int t = 0; t < tree.k(); ++t) {
            const auto& leaf = tree.leaves[static_cast<std::size_t>(t)];
            json entry;
            entry["cohort"] = t + 1;
            entry["size"] = leaf.samples.size();
            json conditions = json::array();
            for (const auto& [tag, present] : leaf.path) {
                const auto& label = data.D.dictionary[static_cast<std::size_t>(tag)];
                conditions.push_back(present ? label : "not(" + label + ")");
            }
            entry["conditions"] = std::move(conditions);
            json mean;
            json relative;
            for (std::size_t j = 0; j < data.W.features(); ++j) {
                mean[data.W.feature_names[j]] = number(leaf.mean[j]);
                relative[data.W.feature_names[j]] = number(leaf.mean[j] - global[j]);
            }
            entry["mean_importance"] = std::move(mean);
            entry["relative_importance"] = std::move(relative);
            doc["leaves"].push_back(std::move(entry));
        }
        doc["early_stop"] = tree.early_stop;
        doc["comparison"] = {{"folds", manifest.folds},
                             {"repid_cv_error_mean", number(tree_cv)},
                             {"taghort_cv_error_mean", number(tag_cv)}};
        doc["timestamp"] = current_timestamp();
        write_json(manifest.out_dir / "baseline.json", doc);

        json report;
        report["tool_version"] = kToolVersion;
        report["command"] = "baseline";
        report["k"] = manifest.k;
        report["repid"] = {{"cv_error_mean", number(tree_cv)},
                           {"leaves", tree.k()},
                           {"early_stop", tree.early_stop}};
        report["taghort"] = {{"cv_error_mean", number(tag_cv)}};
        report["timestamp"] = current_timestamp();
        write_json(manifest.out_dir / "report.json", report);

        log << "baseline: repid cv error " << format_sig12(tree_cv) << ", taghort cv error "
            << format_sig12(tag_cv) << "\n";
        return kExitOk;
    } catch (const Error& err) {
        log << "error: " << err.what() << "\n";
        return kExitInputError;
    }
}

int run_synth(const SynthOptions& options, std::ostream& log) {
    try {
        const TwoRegionData data = generate(options.spec);
        std::filesystem::create_directories(options.out_dir);

        const std::size_t n = data.importances.samples();
        std::size_t width = 1;
        for (std::size_t v = n; v >= 10; v /= 10) ++width;
        std::vector<std::string> ids;
        ids.reserve(n);
        for (std::size_t i = 1; i <= n; ++i) {
            std::string digits = std::to_string(i);
            ids.push_back("s" + std::string(width - digits.size(), '0') + digits);
        }

        write_importance_csv(options.out_dir / "importance.csv", ids, data.importances);
        write_features_csv(options.out_dir / "features.csv", ids, data.features);

        CsvTable labels;
        labels.header = {"sample_id", "region"};
        for (std::size_t i = 0; i < n; ++i)
            labels.rows.push_back({ids[i], std::to_string(data.region_labels[i])});
        write_csv(options.out_dir / "labels.csv", labels);

        json manifest;
        manifest["importance_csv"] = "importance.csv";
        manifest["features_csv"] = "features.csv";
        manifest["out_dir"] = ".";
        manifest["descriptors"] = json::array(
            {{{"column", options.spec.axis_names[0]}, {"rule", "quantile"}, {"q", 2}},
             {{"column", options.spec.axis_names[1]}, {"rule", "quantile"}, {"q", 2}}});
        manifest["k"] = 2;
        manifest["sweep"] = {{"k_values", {1, 2, 3, 4}}, {"folds", 5}};
        manifest["solver"] = {{"mode", "auto"}};
        manifest["seed"] = options.spec.rng_seed;
        write_json(options.out_dir / "manifest.json", manifest);

        log << "synth: wrote " << n << " samples to " << options.out_dir.string() << "\n";
        return kExitOk;
    } catch (const Error& err) {
        log << "error: " << err.what() << "\n";
        return kExitInputError;
    }
}

} // namespace taghort

// Command-line front end: resample / optimize / fuse / stats / run
// subcommands over the library. Kept header-only so tests can drive the CLI
// in-process.

#pragma once

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "sdp/pipeline.hpp"

namespace sdp {

namespace detail {

// Rows-by-methods value matrix for the stats subcommand. A non-numeric
// first line is a header; a non-numeric first cell in a data row is a row
// label and is dropped.
inline Matrix load_value_matrix(const std::filesystem::path& path,
                                std::vector<std::string>& column_names) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::vector<std::vector<std::string>> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        lines.push_back(split_csv_line(line));
    }
    if (lines.empty()) throw std::runtime_error(path.string() + ": empty file");

    auto numeric = [](const std::string& cell) {
        double v;
        return parse_double(cell, v);
    };
    bool header = false;
    for (const auto& cell : lines.front())
        if (!numeric(cell)) header = true;
    std::size_t first_data = header ? 1 : 0;
    if (first_data >= lines.size()) throw std::runtime_error(path.string() + ": no data rows");

    const bool row_labels = !numeric(lines[first_data].front());
    if (header) {
        column_names.assign(lines.front().begin() + (row_labels ? 1 : 0), lines.front().end());
    }

    Matrix values;
    for (std::size_t r = first_data; r < lines.size(); ++r) {
        const auto& cells = lines[r];
        std::vector<double> row;
        for (std::size_t c = row_labels ? 1 : 0; c < cells.size(); ++c) {
            double v;
            if (!parse_double(cells[c], v))
                throw std::runtime_error(path.string() + ": non-numeric cell '" + cells[c] + "'");
            row.push_back(v);
        }
        values.append_row(row);
    }
    if (column_names.empty())
        for (std::size_t c = 0; c < values.cols(); ++c)
            column_names.push_back("col" + std::to_string(c));
    return values;
}

// Reads every pareto_*.csv under dir back into front member lists.
inline std::vector<std::vector<Individual>> load_fronts(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (name.rfind("pareto_", 0) == 0 && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("no pareto_*.csv files under '" + dir.string() + "'");

    std::vector<std::vector<Individual>> fronts;
    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) throw std::runtime_error("cannot open '" + file.string() + "'");
        std::string line;
        if (!std::getline(in, line)) throw std::runtime_error(file.string() + ": empty file");
        std::vector<Individual> front;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (trim(line).empty()) continue;
            const auto cells = split_csv_line(line);
            if (cells.size() != 3)
                throw std::runtime_error(file.string() + ": expected bitstring,n_features,auc");
            Individual ind;
            ind.genes = genes_from_bitstring(cells[0]);
            if (!parse_double(cells[2], ind.f_auc))
                throw std::runtime_error(file.string() + ": bad auc '" + cells[2] + "'");
            ind.f_removed = static_cast<double>(ind.genes.size() - popcount(ind.genes));
            front.push_back(std::move(ind));
        }
        fronts.push_back(std::move(front));
    }
    return fronts;
}

} // namespace detail

inline int cli_main(int argc, const char* const* argv) {
    CLI::App app{"defect-prediction experiment toolkit"};
    app.require_subcommand(1);

    std::string dataset, format = "csv", label = "defective", method = "bs", out;
    std::uint64_t seed = 1;
    std::size_t m_neighbors = 5, k_neighbors = 5;

    auto* cmd_resample = app.add_subcommand("resample", "rebalance a dataset and write it as CSV");
    cmd_resample->add_option("--dataset", dataset, "input dataset path")->required();
    cmd_resample->add_option("--format", format, "csv or arff");
    cmd_resample->add_option("--label", label, "label column name");
    cmd_resample->add_option("--method", method, "bs, st, or none");
    cmd_resample->add_option("--seed", seed, "random seed");
    cmd_resample->add_option("--m", m_neighbors, "danger neighborhood size");
    cmd_resample->add_option("--k", k_neighbors, "synthesis neighborhood size");
    cmd_resample->add_option("--out", out, "output CSV path")->required();

    std::string algo = "all", sampler = "bs";
    MooConfig moo;
    auto* cmd_optimize = app.add_subcommand("optimize", "run feature-selection searches");
    cmd_optimize->add_option("--dataset", dataset, "input dataset path")->required();
    cmd_optimize->add_option("--format", format, "csv or arff");
    cmd_optimize->add_option("--label", label, "label column name");
    cmd_optimize->add_option("--sampler", sampler, "bs, st, or none");
    cmd_optimize->add_option("--algo", algo, "nsga2, mopso, mode, or all");
    cmd_optimize->add_option("--pop", moo.pop_size, "population size");
    cmd_optimize->add_option("--iters", moo.iterations, "iteration count");
    cmd_optimize->add_option("--seed", seed, "master seed");
    cmd_optimize->add_option("--out", out, "output directory")->required();

    std::string fuse_mode = "vote", fronts_dir;
    auto* cmd_fuse = app.add_subcommand("fuse", "fuse optimizer fronts into a feature ranking");
    cmd_fuse->add_option("--fronts", fronts_dir, "directory holding pareto_*.csv")->required();
    cmd_fuse->add_option("--mode", fuse_mode, "vote or weight");
    cmd_fuse->add_option("--dataset", dataset,
                         "dataset for the prefix AUC curve (same file the fronts came from)")
        ->required();
    cmd_fuse->add_option("--format", format, "csv or arff");
    cmd_fuse->add_option("--label", label, "label column name");
    cmd_fuse->add_option("--sampler", sampler, "bs, st, or none (match the optimize run)");
    cmd_fuse->add_option("--seed", seed, "seed (match the optimize run)");
    cmd_fuse->add_option("--out", out, "output directory")->required();

    std::string test_name = "friedman", stats_input;
    auto* cmd_stats = app.add_subcommand("stats", "nonparametric comparisons on a value matrix");
    cmd_stats->add_option("--input", stats_input, "CSV, rows = datasets, columns = methods")
        ->required();
    cmd_stats->add_option("--test", test_name, "wilcoxon, friedman, or nemenyi");
    cmd_stats->add_option("--out", out, "output path")->required();

    std::string config_path, profile;
    auto* cmd_run = app.add_subcommand("run", "full experiment from a config file");
    cmd_run->add_option("--config", config_path, "key = value config file")->required();
    cmd_run->add_option("--profile", profile, "desk or full (overrides the config)");

    try {
        app.parse(argc, argv);

        if (*cmd_resample) {
            const auto fmt = format == "arff" ? FileFormat::arff : FileFormat::csv;
            const Dataset ds = load_dataset(dataset, fmt, label);
            const auto [res, rep] =
                resample(ds, parse_sampling_method(method), m_neighbors, k_neighbors, seed);
            detail::write_text(out, to_csv(res, label));
            std::cout << to_string(rep.method) << ": " << rep.before_majority << '/'
                      << rep.before_minority << " -> " << rep.after_majority << '/'
                      << rep.after_minority << " (synthetic " << rep.synthetic_created
                      << ", link pairs removed " << rep.tomek_pairs_removed << ")\n";
            return 0;
        }

        if (*cmd_optimize) {
            const auto fmt = format == "arff" ? FileFormat::arff : FileFormat::csv;
            const Dataset ds = load_dataset(dataset, fmt, label);
            const Dataset norm = normalize(ds, fit_normalizer(ds));
            const auto [res, rep] = resample(norm, parse_sampling_method(sampler), 5, 5,
                                             fold_resample_seed(seed, 0));
            const auto split = stratified_holdout(res, 0.2, fold_split_seed(seed, 0));
            std::vector<Optimizer> algos;
            if (algo == "all")
                algos = {Optimizer::nsga2, Optimizer::mopso, Optimizer::mode};
            else
                algos = {parse_optimizer(algo)};
            std::filesystem::create_directories(out);
            for (Optimizer o : algos) {
                SvmEvaluator eval(split.train, split.valid);
                const auto front = run_optimizer(o, eval, moo, optimizer_seed(seed, 0, o));
                detail::write_text(std::filesystem::path(out) / ("pareto_" + to_string(o) + ".csv"),
                                   detail::front_csv(front));
                std::cout << to_string(o) << ": " << front.size() << " front members, best auc "
                          << detail::fmt(front.empty() ? 0.0 : front.front().f_auc) << '\n';
            }
            return 0;
        }

        if (*cmd_fuse) {
            const auto fronts = detail::load_fronts(fronts_dir);
            const auto fused = fuse_fronts(fronts);
            const auto fmt = format == "arff" ? FileFormat::arff : FileFormat::csv;
            const Dataset ds = load_dataset(dataset, fmt, label);
            const Dataset norm = normalize(ds, fit_normalizer(ds));
            const auto [res, rep] = resample(norm, parse_sampling_method(sampler), 5, 5,
                                             fold_resample_seed(seed, 0));
            const auto split = stratified_holdout(res, 0.2, fold_split_seed(seed, 0));
            SvmEvaluator eval(split.train, split.valid);
            const auto sweep =
                prefix_sweep(fused, eval, parse_fusion_mode(fuse_mode) == FusionMode::weight);
            std::filesystem::create_directories(out);
            detail::write_text(std::filesystem::path(out) / "fused_ranking.csv",
                               detail::ranking_csv(fused));
            detail::write_text(std::filesystem::path(out) / "prefix_curve.csv",
                               detail::curve_csv(sweep));
            std::cout << "fused " << fused.entries.size() << " features, best prefix "
                      << sweep.best_length << " (auc " << detail::fmt(sweep.best_auc) << ")\n";
            return 0;
        }

        if (*cmd_stats) {
            std::vector<std::string> names;
            const Matrix values = detail::load_value_matrix(stats_input, names);
            std::string s;
            if (test_name == "wilcoxon") {
                if (values.cols() != 2)
                    throw std::runtime_error("wilcoxon needs exactly 2 value columns");
                std::vector<double> x(values.rows()), y(values.rows());
                for (std::size_t r = 0; r < values.rows(); ++r) {
                    x[r] = values(r, 0);
                    y[r] = values(r, 1);
                }
                const auto w = wilcoxon_signed_rank(x, y);
                s += "statistic," + detail::fmt(w.statistic) + '\n';
                s += "p_value," + detail::fmt(w.p_value) + '\n';
                s += std::string("significant,") + (w.significant ? "1" : "0") + '\n';
                s += std::string("method,") +
                     (w.method == PValueMethod::exact ? "exact" : "normal_approx") + '\n';
                std::cout << "statistic " << detail::fmt(w.statistic) << "  p "
                          << detail::fmt(w.p_value) << "  significant "
                          << (w.significant ? "yes" : "no") << '\n';
            } else if (test_name == "friedman" || test_name == "nemenyi") {
                const auto fr = friedman(values);
                s += "statistic," + detail::fmt(fr.statistic) + '\n';
                s += "p_value," + detail::fmt(fr.p_value) + '\n';
                s += std::string("significant,") + (fr.significant ? "1" : "0") + '\n';
                for (std::size_t c = 0; c < values.cols(); ++c)
                    s += "mean_rank_" + names[c] + ',' + detail::fmt(fr.mean_ranks[c]) + '\n';
                std::cout << "statistic " << detail::fmt(fr.statistic) << "  p "
                          << detail::fmt(fr.p_value) << "  significant "
                          << (fr.significant ? "yes" : "no") << '\n';
                if (test_name == "nemenyi") {
                    const auto nm = nemenyi(values);
                    s += "critical_difference," + detail::fmt(nm.cd) + '\n';
                    for (std::size_t a = 0; a < values.cols(); ++a)
                        for (std::size_t b = a + 1; b < values.cols(); ++b)
                            s += "significant_" + names[a] + "_vs_" + names[b] + ',' +
                                 (nm.significant[a][b] ? "1" : "0") + '\n';
                    std::cout << "critical difference " << detail::fmt(nm.cd) << '\n';
                }
            } else {
                throw std::runtime_error("unknown test '" + test_name + "'");
            }
            detail::write_text(out, s);
            return 0;
        }

        if (*cmd_run) {
            ExperimentConfig cfg = parse_config_file(config_path);
            if (profile == "desk")
                apply_desk_profile(cfg);
            else if (!profile.empty() && profile != "full")
                throw std::runtime_error("profile must be desk or full");
            const auto report = run_experiment(cfg);
            std::cout << "completed " << report.sampling.size() << " folds, "
                      << report.errors.size() << " errors, outputs in " << cfg.out_dir.string()
                      << '\n';
            for (const auto& e : report.errors) std::cerr << "error: " << e << '\n';
            return report.errors.empty() ? 0 : 1;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace sdp

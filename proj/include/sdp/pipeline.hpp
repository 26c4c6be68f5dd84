// Experiment orchestration: config file handling, outer stratified k-fold
// cross-validation, per-fold resampling, concurrent optimizer tasks gated by
// a completion latch, front fusion with prefix selection, held-out scoring,
// the cross-optimizer statistics, and report emission.
//
// Everything written under the run directory is a pure function of the
// config and the dataset bytes; wall-clock timing appears only in
// manifest.txt so the CSV tables stay byte-reproducible.

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <latch>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sdp/dataset.hpp"
#include "sdp/evaluator.hpp"
#include "sdp/fusion.hpp"
#include "sdp/metrics.hpp"
#include "sdp/optimizers.hpp"
#include "sdp/resample.hpp"
#include "sdp/stats.hpp"
#include "sdp/svm.hpp"

namespace sdp {

struct ExperimentConfig {
    std::filesystem::path dataset_path;
    FileFormat format = FileFormat::csv;
    std::string label_column = "defective";

    SamplingMethod sampler = SamplingMethod::borderline_smote;
    std::size_t smote_m = 5;
    std::size_t smote_k = 5;

    std::vector<Optimizer> optimizers = {Optimizer::nsga2, Optimizer::mopso, Optimizer::mode};
    MooConfig moo;

    std::vector<FusionMode> fusion_modes = {FusionMode::vote, FusionMode::weight};
    bool baseline_pearson = false;
    bool baseline_fisher = false;
    bool baseline_greedy = false;

    int k_folds = 10;
    double valid_frac = 0.2;
    bool global_normalization = false;
    std::uint64_t master_seed = 1;
    std::size_t workers = 0; // 0: SDP_WORKERS env var, else one per task
    std::filesystem::path out_dir;
};

// Desk-scale profile: bounds a full run to minutes on one machine.
inline void apply_desk_profile(ExperimentConfig& cfg) {
    cfg.moo.pop_size = 20;
    cfg.moo.iterations = 10;
    cfg.k_folds = 5;
}

inline void validate(const ExperimentConfig& cfg) {
    if (cfg.dataset_path.empty()) throw std::invalid_argument("config: dataset path is required");
    if (cfg.out_dir.empty()) throw std::invalid_argument("config: output directory is required");
    if (cfg.k_folds < 2) throw std::invalid_argument("config: folds must be >= 2");
    if (!cfg.fusion_modes.empty() && cfg.optimizers.empty())
        throw std::invalid_argument("config: fusion requested without optimizers");
    if (cfg.valid_frac <= 0.0 || cfg.valid_frac >= 1.0)
        throw std::invalid_argument("config: valid_frac must be in (0,1)");
    validate(cfg.moo);
}

namespace detail {

template <typename T>
std::vector<T> parse_list(const std::string& value, T (*parse_one)(std::string_view)) {
    std::vector<T> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= value.size(); ++i) {
        if (i == value.size() || value[i] == ',') {
            auto item = trim(std::string_view(value).substr(start, i - start));
            if (!item.empty()) out.push_back(parse_one(item));
            start = i + 1;
        }
    }
    return out;
}

inline std::uint64_t parse_u64(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const auto v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: key '" + key + "' needs a non-negative integer, got '" +
                                 s + "'");
    }
}

inline double parse_real(const std::string& s, const std::string& key) {
    double v = 0.0;
    if (!parse_double(s, v))
        throw std::runtime_error("config: key '" + key + "' needs a number, got '" + s + "'");
    return v;
}

} // namespace detail

// Flat key = value file; blank lines and lines starting with '#' are
// skipped; later keys override earlier ones, and 'profile = desk' applies
// the desk values at the point it appears.
inline ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = detail::trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        const auto eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw std::runtime_error("config: line " + std::to_string(line_no) +
                                     " is not 'key = value'");
        const std::string key{detail::trim(sv.substr(0, eq))};
        const std::string value{detail::trim(sv.substr(eq + 1))};

        if (key == "dataset") cfg.dataset_path = value;
        else if (key == "format") {
            if (value == "csv") cfg.format = FileFormat::csv;
            else if (value == "arff") cfg.format = FileFormat::arff;
            else throw std::runtime_error("config: format must be csv or arff");
        } else if (key == "label") cfg.label_column = value;
        else if (key == "sampler") cfg.sampler = parse_sampling_method(value);
        else if (key == "smote_m") cfg.smote_m = detail::parse_u64(value, key);
        else if (key == "smote_k") cfg.smote_k = detail::parse_u64(value, key);
        else if (key == "optimizers") cfg.optimizers = detail::parse_list(value, parse_optimizer);
        else if (key == "pop") cfg.moo.pop_size = detail::parse_u64(value, key);
        else if (key == "iters") cfg.moo.iterations = detail::parse_u64(value, key);
        else if (key == "crossover_prob") cfg.moo.crossover_prob = detail::parse_real(value, key);
        else if (key == "mutation_prob") cfg.moo.mutation_prob = detail::parse_real(value, key);
        else if (key == "inertia") cfg.moo.inertia = detail::parse_real(value, key);
        else if (key == "c1") cfg.moo.c1 = detail::parse_real(value, key);
        else if (key == "c2") cfg.moo.c2 = detail::parse_real(value, key);
        else if (key == "archive") cfg.moo.archive_size = detail::parse_u64(value, key);
        else if (key == "grid") cfg.moo.grid_divisions = detail::parse_u64(value, key);
        else if (key == "de_weight") cfg.moo.de_weight = detail::parse_real(value, key);
        else if (key == "de_crossover_prob")
            cfg.moo.de_crossover_prob = detail::parse_real(value, key);
        else if (key == "fusion") cfg.fusion_modes = detail::parse_list(value, parse_fusion_mode);
        else if (key == "baselines") {
            cfg.baseline_pearson = cfg.baseline_fisher = cfg.baseline_greedy = false;
            for (const auto& b : detail::parse_list<std::string>(
                     value, +[](std::string_view s) { return std::string(s); })) {
                if (b == "pearson") cfg.baseline_pearson = true;
                else if (b == "fisher") cfg.baseline_fisher = true;
                else if (b == "greedy") cfg.baseline_greedy = true;
                else throw std::runtime_error("config: unknown baseline '" + b + "'");
            }
        } else if (key == "folds") cfg.k_folds = static_cast<int>(detail::parse_u64(value, key));
        else if (key == "valid_frac") cfg.valid_frac = detail::parse_real(value, key);
        else if (key == "normalization") {
            if (value == "fold") cfg.global_normalization = false;
            else if (value == "global") cfg.global_normalization = true;
            else throw std::runtime_error("config: normalization must be fold or global");
        } else if (key == "seed") cfg.master_seed = detail::parse_u64(value, key);
        else if (key == "workers") cfg.workers = detail::parse_u64(value, key);
        else if (key == "out") cfg.out_dir = value;
        else if (key == "profile") {
            if (value == "desk") apply_desk_profile(cfg);
            else if (value != "full")
                throw std::runtime_error("config: profile must be desk or full");
        } else throw std::runtime_error("config: unknown key '" + key + "'");
    }
    return cfg;
}

inline ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
    return parse_config(in);
}

// Seed streams: every random component of a run draws from a documented
// derivation of the master seed, so concurrency cannot reorder randomness.
inline std::uint64_t fold_resample_seed(std::uint64_t master, std::size_t fold) {
    return derive_seed(master, 0x100 + fold);
}
inline std::uint64_t fold_split_seed(std::uint64_t master, std::size_t fold) {
    return derive_seed(master, 0x200 + fold);
}
inline std::uint64_t optimizer_seed(std::uint64_t master, std::size_t fold, Optimizer algo) {
    return derive_seed(master, 0x300 + fold * 8 + static_cast<std::size_t>(algo));
}

struct MethodResult {
    std::string method;
    std::vector<std::size_t> folds;
    std::vector<Metrics> fold_metrics;
    double mean_auc = 0.0, mean_acc = 0.0, mean_f = 0.0;
};

struct ExperimentReport {
    std::vector<SamplingReport> sampling;                     // per completed fold
    std::vector<std::size_t> sampled_folds;
    std::vector<std::vector<std::vector<Individual>>> fronts; // [fold][optimizer]
    std::vector<MethodResult> methods;
    std::vector<std::string> errors;
    std::vector<std::string> notes;

    // Cross-optimizer statistics over per-fold test AUC.
    bool stats_run = false;
    FriedmanResult friedman_result;
    double cd = 0.0;
    std::vector<std::pair<std::string, std::string>> wilcoxon_pairs;
    std::vector<WilcoxonResult> wilcoxon_results;

    double wall_seconds = 0.0;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline void write_text(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
    out << content;
}

inline std::string front_csv(const std::vector<Individual>& front) {
    std::string s = "bitstring,n_features,auc\n";
    for (const auto& ind : front) {
        s += bitstring(ind.genes);
        s += ',' + std::to_string(popcount(ind.genes));
        s += ',' + fmt(ind.f_auc) + '\n';
    }
    return s;
}

inline std::string ranking_csv(const FusedRanking& ranking) {
    std::string s = "feature,votes,weight,rank\n";
    std::size_t rank = 1;
    for (const auto& e : ranking.entries) {
        s += std::to_string(e.feature) + ',' + std::to_string(e.votes) + ',' + fmt(e.weight) +
             ',' + std::to_string(rank++) + '\n';
    }
    return s;
}

inline std::string curve_csv(const PrefixSweep& sweep) {
    std::string s = "length,auc\n";
    for (const auto& pt : sweep.curve)
        s += std::to_string(pt.length) + ',' + fmt(pt.auc) + '\n';
    return s;
}

// One fold's held-out scoring of a trained scale vector.
inline Metrics test_fold_metrics(const Dataset& train, const Dataset& test,
                                 const std::vector<double>& scale) {
    RbfSvm model(train.features, train.labels, scale);
    std::vector<int> predictions(test.n_rows());
    std::vector<double> scores(test.n_rows());
    for (std::size_t i = 0; i < test.n_rows(); ++i) {
        scores[i] = model.decision_value(test.features.row(i));
        predictions[i] = scores[i] >= 0.0 ? 1 : 0;
    }
    return compute_metrics(test.labels, predictions, scores);
}

inline std::size_t resolve_workers(const ExperimentConfig& cfg, std::size_t n_tasks) {
    std::size_t w = cfg.workers;
    if (w == 0) {
        if (const char* env = std::getenv("SDP_WORKERS")) {
            char* end = nullptr;
            const auto v = std::strtoul(env, &end, 10);
            if (end && *end == '\0' && v > 0) w = v;
        }
    }
    if (w == 0) w = n_tasks;
    return std::min(std::max<std::size_t>(w, 1), std::max<std::size_t>(n_tasks, 1));
}

} // namespace detail

// Runs the full experiment and writes every artifact under cfg.out_dir.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(cfg.out_dir);

    const Dataset ds = load_dataset(cfg.dataset_path, cfg.format, cfg.label_column);
    const auto plan = stratified_kfold(ds, cfg.k_folds, cfg.master_seed);

    ExperimentReport report;
    report.fronts.resize(plan.folds.size());
    std::map<std::string, MethodResult> methods;
    auto add_metrics = [&](const std::string& name, std::size_t fold, const Metrics& m) {
        auto& slot = methods[name];
        slot.method = name;
        slot.folds.push_back(fold);
        slot.fold_metrics.push_back(m);
    };

    // Per-fold test AUC per optimizer, rows appended only for folds where
    // every optimizer produced a front (the statistics need complete rows).
    Matrix optimizer_auc(0, cfg.optimizers.size());
    std::vector<std::size_t> auc_rows_folds;

    std::optional<NormalizationParams> global_params;
    if (cfg.global_normalization) global_params = fit_normalizer(ds);

    for (std::size_t fold = 0; fold < plan.folds.size(); ++fold) {
        try {
            const Dataset train_raw = ds.subset(plan.folds[fold].train);
            const Dataset test_raw = ds.subset(plan.folds[fold].test);
            const NormalizationParams norm_params =
                cfg.global_normalization ? *global_params : fit_normalizer(train_raw);
            const Dataset train_n = normalize(train_raw, norm_params);
            const Dataset test_n = normalize(test_raw, norm_params);

            auto [resampled, sampling] =
                resample(train_n, cfg.sampler, cfg.smote_m, cfg.smote_k,
                         fold_resample_seed(cfg.master_seed, fold));
            report.sampling.push_back(sampling);
            report.sampled_folds.push_back(fold);

            const auto split =
                stratified_holdout(resampled, cfg.valid_frac, fold_split_seed(cfg.master_seed, fold));

            // Concurrent optimizer tasks; the coordinator may not aggregate
            // until the latch confirms every launched task finished.
            const std::size_t n_tasks = cfg.optimizers.size();
            auto& fronts = report.fronts[fold];
            fronts.resize(n_tasks);
            std::vector<std::string> task_errors(n_tasks);
            std::latch done(static_cast<std::ptrdiff_t>(n_tasks));
            std::atomic<std::size_t> next{0};
            auto run_task = [&](std::size_t t) {
                try {
                    SvmEvaluator eval(split.train, split.valid);
                    fronts[t] = run_optimizer(cfg.optimizers[t], eval, cfg.moo,
                                              optimizer_seed(cfg.master_seed, fold,
                                                             cfg.optimizers[t]));
                } catch (const std::exception& e) {
                    task_errors[t] = e.what();
                }
                done.count_down();
            };
            {
                std::vector<std::jthread> pool;
                const std::size_t n_workers = detail::resolve_workers(cfg, n_tasks);
                pool.reserve(n_workers);
                for (std::size_t w = 0; w < n_workers; ++w)
                    pool.emplace_back([&] {
                        for (std::size_t t = next.fetch_add(1); t < n_tasks;
                             t = next.fetch_add(1))
                            run_task(t);
                    });
                done.wait();
            }

            bool all_fronts = true;
            for (std::size_t t = 0; t < n_tasks; ++t) {
                if (!task_errors[t].empty()) {
                    all_fronts = false;
                    report.errors.push_back("fold " + std::to_string(fold) + ' ' +
                                            to_string(cfg.optimizers[t]) + ": " + task_errors[t]);
                }
            }

            // Per-optimizer held-out scoring with the best validation-AUC
            // front member, and the front CSVs.
            std::vector<double> fold_auc_row(n_tasks, 0.0);
            for (std::size_t t = 0; t < n_tasks; ++t) {
                if (fronts[t].empty()) continue;
                detail::write_text(cfg.out_dir / ("pareto_f" + std::to_string(fold) + '_' +
                                                  to_string(cfg.optimizers[t]) + ".csv"),
                                   detail::front_csv(fronts[t]));
                const Metrics m = detail::test_fold_metrics(resampled, test_n,
                                                            genes_to_scale(fronts[t][0].genes));
                add_metrics(to_string(cfg.optimizers[t]), fold, m);
                fold_auc_row[t] = m.auc;
            }
            if (all_fronts && n_tasks > 0) {
                optimizer_auc.append_row(fold_auc_row);
                auc_rows_folds.push_back(fold);
            }

            SvmEvaluator fold_eval(split.train, split.valid);

            if (!cfg.fusion_modes.empty() && all_fronts && n_tasks > 0) {
                const auto fused = fuse_fronts(fronts);
                for (FusionMode mode : cfg.fusion_modes) {
                    const bool weighted = mode == FusionMode::weight;
                    const auto sweep = prefix_sweep(fused, fold_eval, weighted);
                    detail::write_text(cfg.out_dir / ("fused_f" + std::to_string(fold) + '_' +
                                                      to_string(mode) + ".csv"),
                                       detail::ranking_csv(fused));
                    detail::write_text(cfg.out_dir / ("prefix_f" + std::to_string(fold) + '_' +
                                                      to_string(mode) + ".csv"),
                                       detail::curve_csv(sweep));
                    std::vector<double> scale(ds.n_features(), 0.0);
                    for (std::size_t i = 0; i < sweep.best_length; ++i) {
                        const auto& e = fused.entries[i];
                        scale[e.feature] = weighted ? e.weight : 1.0;
                    }
                    add_metrics("fused_" + to_string(mode), fold,
                                detail::test_fold_metrics(resampled, test_n, scale));
                }
            }

            auto run_baseline = [&](const std::string& name,
                                    const std::vector<std::size_t>& order) {
                const auto sweep = prefix_sweep(order, fold_eval);
                detail::write_text(cfg.out_dir / ("prefix_f" + std::to_string(fold) + '_' + name +
                                                  ".csv"),
                                   detail::curve_csv(sweep));
                std::vector<double> scale(ds.n_features(), 0.0);
                for (std::size_t j : sweep.best_subset) scale[j] = 1.0;
                add_metrics(name, fold, detail::test_fold_metrics(resampled, test_n, scale));
            };
            if (cfg.baseline_pearson) run_baseline("pearson", rank_by_score(pearson_scores(resampled)));
            if (cfg.baseline_fisher) run_baseline("fisher", rank_by_score(fisher_scores(resampled)));
            if (cfg.baseline_greedy) run_baseline("greedy", greedy_forward_select(fold_eval));
        } catch (const std::exception& e) {
            report.errors.push_back("fold " + std::to_string(fold) + ": " + e.what());
        }
    }

    for (auto& [name, slot] : methods) {
        double sa = 0.0, sc = 0.0, sf = 0.0;
        for (const auto& m : slot.fold_metrics) {
            sa += m.auc;
            sc += m.acc;
            sf += m.f_score;
        }
        const auto n = static_cast<double>(slot.fold_metrics.size());
        slot.mean_auc = sa / n;
        slot.mean_acc = sc / n;
        slot.mean_f = sf / n;
        report.methods.push_back(slot);
    }

    // Cross-optimizer statistics over the complete per-fold AUC rows.
    if (cfg.optimizers.size() >= 2 && optimizer_auc.rows() >= 2) {
        report.friedman_result = friedman(optimizer_auc);
        report.cd = nemenyi_cd(cfg.optimizers.size(), optimizer_auc.rows());
        report.stats_run = true;
        for (std::size_t a = 0; a < cfg.optimizers.size(); ++a) {
            for (std::size_t b = a + 1; b < cfg.optimizers.size(); ++b) {
                std::vector<double> x(optimizer_auc.rows()), y(optimizer_auc.rows());
                for (std::size_t r = 0; r < optimizer_auc.rows(); ++r) {
                    x[r] = optimizer_auc(r, a);
                    y[r] = optimizer_auc(r, b);
                }
                try {
                    report.wilcoxon_results.push_back(wilcoxon_signed_rank(x, y));
                    report.wilcoxon_pairs.emplace_back(to_string(cfg.optimizers[a]),
                                                       to_string(cfg.optimizers[b]));
                } catch (const std::exception& e) {
                    report.notes.push_back("wilcoxon " + to_string(cfg.optimizers[a]) + " vs " +
                                           to_string(cfg.optimizers[b]) + ": " + e.what());
                }
            }
        }
    }

    // Flat CSV tables.
    {
        std::string s =
            "fold,method,before_majority,before_minority,after_majority,after_minority,"
            "synthetic_created,tomek_pairs_removed,danger_fallback\n";
        for (std::size_t i = 0; i < report.sampling.size(); ++i) {
            const auto& r = report.sampling[i];
            s += std::to_string(report.sampled_folds[i]) + ',' + to_string(r.method) + ',' +
                 std::to_string(r.before_majority) + ',' + std::to_string(r.before_minority) +
                 ',' + std::to_string(r.after_majority) + ',' + std::to_string(r.after_minority) +
                 ',' + std::to_string(r.synthetic_created) + ',' +
                 std::to_string(r.tomek_pairs_removed) + ',' +
                 (r.danger_fallback ? "1" : "0") + '\n';
        }
        detail::write_text(cfg.out_dir / "sampling.csv", s);
    }
    {
        std::string s = "method,fold,tp,fp,fn,tn,accuracy,f_score,auc\n";
        for (const auto& slot : report.methods) {
            for (std::size_t i = 0; i < slot.fold_metrics.size(); ++i) {
                const auto& m = slot.fold_metrics[i];
                s += slot.method + ',' + std::to_string(slot.folds[i]) + ',' +
                     std::to_string(m.tp) + ',' + std::to_string(m.fp) + ',' +
                     std::to_string(m.fn) + ',' + std::to_string(m.tn) + ',' +
                     detail::fmt(m.acc) + ',' + detail::fmt(m.f_score) + ',' + detail::fmt(m.auc) +
                     '\n';
            }
            s += slot.method + ",mean,,,,," + detail::fmt(slot.mean_acc) + ',' +
                 detail::fmt(slot.mean_f) + ',' + detail::fmt(slot.mean_auc) + '\n';
        }
        detail::write_text(cfg.out_dir / "metrics.csv", s);
    }
    {
        std::string s = "fold";
        for (Optimizer o : cfg.optimizers) s += ',' + to_string(o);
        s += '\n';
        for (std::size_t r = 0; r < optimizer_auc.rows(); ++r) {
            s += std::to_string(auc_rows_folds[r]);
            for (std::size_t c = 0; c < optimizer_auc.cols(); ++c)
                s += ',' + detail::fmt(optimizer_auc(r, c));
            s += '\n';
        }
        detail::write_text(cfg.out_dir / "optimizer_auc.csv", s);
    }
    if (report.stats_run) {
        std::string s;
        s += "friedman_statistic," + detail::fmt(report.friedman_result.statistic) + '\n';
        s += "friedman_p," + detail::fmt(report.friedman_result.p_value) + '\n';
        s += "critical_difference," + detail::fmt(report.cd) + '\n';
        for (std::size_t c = 0; c < cfg.optimizers.size(); ++c)
            s += "mean_rank_" + to_string(cfg.optimizers[c]) + ',' +
                 detail::fmt(report.friedman_result.mean_ranks[c]) + '\n';
        for (std::size_t i = 0; i < report.wilcoxon_results.size(); ++i) {
            const auto& w = report.wilcoxon_results[i];
            s += "wilcoxon_" + report.wilcoxon_pairs[i].first + "_vs_" +
                 report.wilcoxon_pairs[i].second + ',' + detail::fmt(w.statistic) + ',' +
                 detail::fmt(w.p_value) + '\n';
        }
        detail::write_text(cfg.out_dir / "stats_summary.csv", s);
    }

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    {
        std::ostringstream m;
        m << "dataset " << cfg.dataset_path.string() << '\n';
        m << "label_column " << cfg.label_column << '\n';
        m << "sampler " << to_string(cfg.sampler) << '\n';
        m << "optimizers";
        for (Optimizer o : cfg.optimizers) m << ' ' << to_string(o);
        m << '\n';
        m << "pop " << cfg.moo.pop_size << '\n';
        m << "iters " << cfg.moo.iterations << '\n';
        m << "folds " << cfg.k_folds << '\n';
        m << "seed " << cfg.master_seed << '\n';
        m << "normalization " << (cfg.global_normalization ? "global" : "fold") << '\n';
        m << "format_version 1\n";
        for (std::size_t fold = 0; fold < plan.folds.size(); ++fold) {
            m << "fold " << fold << " seeds resample=" << fold_resample_seed(cfg.master_seed, fold)
              << " split=" << fold_split_seed(cfg.master_seed, fold);
            for (Optimizer o : cfg.optimizers)
                m << ' ' << to_string(o) << '=' << optimizer_seed(cfg.master_seed, fold, o);
            m << '\n';
        }
        m << "wall_seconds " << report.wall_seconds << '\n';
        for (const auto& e : report.errors) m << "error " << e << '\n';
        for (const auto& n : report.notes) m << "note " << n << '\n';
        detail::write_text(cfg.out_dir / "manifest.txt", m.str());
    }
    return report;
}

} // namespace sdp

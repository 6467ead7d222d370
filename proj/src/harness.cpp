#include "scanfdr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <utility>

#include "scanfdr/confusion.hpp"

namespace scanfdr {

void ExperimentConfig::validate() const {
    if (replications < 1) throw std::invalid_argument("replications must be at least 1");
    if (n_grid.empty()) throw std::invalid_argument("n grid must not be empty");
    for (const std::size_t n : n_grid) {
        if (n < 1) throw std::invalid_argument("every n in the grid must be at least 1");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (methods.empty()) throw std::invalid_argument("at least one method is required");
}

bool RepRecord::operator==(const RepRecord& o) const {
    return std::tie(n, rep, method, U, V, T, S, sigma, tau, fdp, fnp) ==
           std::tie(o.n, o.rep, o.method, o.U, o.V, o.T, o.S, o.sigma, o.tau, o.fdp, o.fnp);
}

namespace {

std::vector<RepRecord> run_cell(const ExperimentConfig& cfg, std::size_t n, std::size_t rep) {
    const LabeledSample data = sample_labeled(cfg.model, n, derive_seed(cfg.master_seed, n, rep));
    std::vector<RepRecord> out;
    out.reserve(cfg.methods.size());
    for (const Method m : cfg.methods) {
        const auto start = std::chrono::steady_clock::now();
        const RejectionOutcome outcome = run_procedure(m, data.sample, cfg.alpha);
        const auto stop = std::chrono::steady_clock::now();
        const ConfusionTable table = confusion(outcome, data.sample);

        RepRecord r;
        r.n = n;
        r.rep = rep;
        r.method = m;
        r.U = table.U;
        r.V = table.V;
        r.T = table.T;
        r.S = table.S;
        r.sigma = outcome.sigma;
        r.tau = outcome.tau;
        r.fdp = fdp(table);
        r.fnp = table.n1() == 0 ? 0.0 : fnp(table);
        if (cfg.capture_timing) {
            r.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace

std::vector<RepRecord> run_experiment(const ExperimentConfig& config) {
    config.validate();

    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (const std::size_t n : config.n_grid) {
        for (std::size_t rep = 0; rep < config.replications; ++rep) cells.emplace_back(n, rep);
    }

    std::vector<std::vector<RepRecord>> results(cells.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::optional<std::pair<std::size_t, std::string>> first_error;  // lowest failing cell wins

    const auto worker = [&] {
        for (std::size_t c = next++; c < cells.size(); c = next++) {
            const auto [n, rep] = cells[c];
            try {
                results[c] = run_cell(config, n, rep);
            } catch (const std::exception& e) {
                std::lock_guard lock(error_mutex);
                if (!first_error || c < first_error->first) {
                    first_error.emplace(c, "n=" + std::to_string(n) + ", rep=" + std::to_string(rep) +
                                               ": " + e.what());
                }
            }
        }
    };

    std::size_t workers = config.workers;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, cells.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    if (first_error) throw std::runtime_error("experiment failed at " + first_error->second);

    std::vector<RepRecord> records;
    records.reserve(cells.size() * config.methods.size());
    for (auto& cell : results) records.insert(records.end(), cell.begin(), cell.end());
    return records;
}

std::vector<SummaryRow> summarize(const std::vector<RepRecord>& records) {
    if (records.empty()) throw std::invalid_argument("cannot summarise an empty record list");

    struct Acc {
        std::vector<double> fdp;
        std::vector<double> fnp;
    };
    std::map<std::pair<std::size_t, Method>, Acc> groups;
    for (const RepRecord& r : records) {
        Acc& g = groups[{r.n, r.method}];
        g.fdp.push_back(r.fdp);
        g.fnp.push_back(r.fnp);
    }

    const auto mean_se = [](const std::vector<double>& xs) {
        const double k = static_cast<double>(xs.size());
        double mean = 0.0;
        for (const double x : xs) mean += x;
        mean /= k;
        if (xs.size() < 2) return std::pair{mean, 0.0};
        double ss = 0.0;
        for (const double x : xs) ss += (x - mean) * (x - mean);
        return std::pair{mean, std::sqrt(ss / (k - 1.0)) / std::sqrt(k)};
    };

    std::vector<SummaryRow> rows;
    rows.reserve(groups.size());
    for (const auto& [key, acc] : groups) {
        SummaryRow row;
        row.n = key.first;
        row.method = key.second;
        std::tie(row.mean_fdp, row.se_fdp) = mean_se(acc.fdp);
        std::tie(row.mean_fnp, row.se_fnp) = mean_se(acc.fnp);
        row.reps = acc.fdp.size();
        rows.push_back(row);
    }
    return rows;
}

std::vector<GCurvePoint> gcurve(const MixtureModel& model, double beta, std::size_t points) {
    if (points < 2) throw std::invalid_argument("gcurve needs at least 2 points");
    std::vector<GCurvePoint> rows(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = i + 1 == points ? 1.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        rows[i] = {t, alt_pvalue_cdf(model, t), beta * t};
    }
    return rows;
}

}  // namespace scanfdr

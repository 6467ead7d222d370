#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "scanfdr/mixture.hpp"
#include "scanfdr/procedures.hpp"

namespace scanfdr {

struct ExperimentConfig {
    MixtureModel model;
    std::vector<std::size_t> n_grid;
    std::size_t replications = 100;
    double alpha = 0.10;
    std::uint64_t master_seed = 0;
    std::vector<Method> methods{Method::bh, Method::scan};
    /// 0 means std::thread::hardware_concurrency().
    std::size_t workers = 0;
    /// When false, elapsed_ms is written as 0 so outputs are byte-reproducible.
    bool capture_timing = true;

    void validate() const;
};

/// One (n, replication, method) cell of an experiment.
struct RepRecord {
    std::size_t n = 0;
    std::size_t rep = 0;
    Method method = Method::bh;
    std::size_t U = 0;
    std::size_t V = 0;
    std::size_t T = 0;
    std::size_t S = 0;
    double sigma = 0.0;
    double tau = 0.0;
    double fdp = 0.0;
    /// 0 when the sample has no alternatives.
    double fnp = 0.0;
    double elapsed_ms = 0.0;

    /// Compares everything except elapsed_ms.
    bool operator==(const RepRecord& o) const;
    std::size_t rejections() const noexcept { return V + S; }
};

/// Samples every (n, rep) with seed derive_seed(master_seed, n, rep) and runs
/// each method on it. Records come back ordered by n (grid order), rep, then
/// method (config order), independent of the worker count.
std::vector<RepRecord> run_experiment(const ExperimentConfig& config);

struct SummaryRow {
    std::size_t n = 0;
    Method method = Method::bh;
    double mean_fdp = 0.0;
    double se_fdp = 0.0;
    double mean_fnp = 0.0;
    double se_fnp = 0.0;
    std::size_t reps = 0;

    bool operator==(const SummaryRow&) const = default;
};

/// Mean and standard error (sample sd / sqrt(reps)) per (n, method), sorted by
/// n then method. A single-replication group reports se = 0.
std::vector<SummaryRow> summarize(const std::vector<RepRecord>& records);

struct GCurvePoint {
    double t = 0.0;
    double G = 0.0;
    double beta_t = 0.0;
};

/// G and the line beta*t on `points` evenly spaced t in [0,1].
std::vector<GCurvePoint> gcurve(const MixtureModel& model, double beta, std::size_t points);

inline constexpr const char* kRecordsHeader = "n,rep,method,U,V,T,S,sigma,tau,fdp,fnp,elapsed_ms";
inline constexpr const char* kSummaryHeader = "n,method,mean_fdp,se_fdp,mean_fnp,se_fnp,reps";
inline constexpr const char* kGCurveHeader = "t,G,beta_t";

void write_records(const std::filesystem::path& path, const std::vector<RepRecord>& rows);
std::vector<RepRecord> read_records(const std::filesystem::path& path);

void write_summary(const std::filesystem::path& path, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary(const std::filesystem::path& path);

void write_gcurve(const std::filesystem::path& path, const std::vector<GCurvePoint>& rows);

// Stream forms used by the file wrappers above.
std::string format_records(const std::vector<RepRecord>& rows);
std::vector<RepRecord> parse_records(const std::string& text, const std::string& source = "<records>");
std::string format_summary(const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> parse_summary(const std::string& text, const std::string& source = "<summary>");
std::string format_gcurve(const std::vector<GCurvePoint>& rows);

}  // namespace scanfdr

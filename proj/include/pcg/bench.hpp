#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "pcg/level.hpp"
#include "pcg/run_io.hpp"

namespace pcg {

// Wall-clock sweep: time-to-N-playable-levels for re-running the GA per
// batch versus distilling once and querying the policy.
struct BenchPlan {
    std::string domain = "maze";
    std::vector<int> sizes = {10, 20, 30, 40, 50};        // maze side lengths
    std::vector<double> fractions = {0.5, 1.0};
    std::vector<int> levels_required = {10, 50, 100};
    std::vector<std::uint64_t> seeds;                     // default: 10 derived seeds
    bool include_distillation_cost = true;
    double air_bias = 0.80;

    void normalize(std::uint64_t root_seed);  // fills defaults, validates
};

struct BenchBreakdown {
    double ga_seconds = 0.0;
    double distill_seconds = 0.0;
    double generate_seconds = 0.0;
};

struct BenchRecord {
    std::string method;  // "GA" | "policy"
    std::string domain;
    int size = 0;
    double fraction = 1.0;
    int n_levels = 0;
    std::uint64_t seed = 0;
    double elapsed_seconds = 0.0;
    BenchBreakdown breakdown;
    bool degraded = false;  // policy failure rate exceeded 50% in this cell
};

struct BenchCell {
    std::string domain;
    int size = 10;
    double fraction = 1.0;
    int n_levels = 10;
    std::uint64_t seed = 0;
    bool include_distillation_cost = true;
    double air_bias = 0.80;
};

struct BenchCellResult {
    BenchRecord record;
    std::vector<Level> levels;  // the N collected levels, post-validated
};

// Runs the GA repeatedly, accumulating acceptable levels until n_levels are
// collected. Failed runs (no acceptable level) burn time and are retried on
// the next derived seed.
BenchCellResult bench_ga(const BenchCell& cell);

// One GA run plus dataset build (timed into the breakdown), then policy
// generation until n_levels successes. generate_seconds covers the index
// build and the query loop.
BenchCellResult bench_policy(const BenchCell& cell);

struct BenchSummaryRow {
    std::string method;
    std::string domain;
    int size = 0;
    double fraction = 1.0;
    int n_levels = 0;
    double mean_seconds = 0.0;
    double std_seconds = 0.0;  // sample standard deviation over seeds
};

struct BenchReport {
    std::vector<BenchRecord> records;
    std::vector<BenchSummaryRow> summary;
    bool any_degraded = false;
};

// Full sweep in deterministic cell order. Each record is handed to
// `on_record` as soon as it is measured so partial results survive an abort.
BenchReport run_plan(const BenchPlan& plan,
                     const std::function<void(const BenchRecord&)>& on_record = {});

// CSV schemas:
//   records: method,domain,size,fraction,n_levels,seed,elapsed_s,ga_s,distill_s,generate_s
//   summary: method,domain,size,fraction,n_levels,mean_s,std_s
std::string bench_records_csv_header();
std::string bench_record_csv_row(const BenchRecord& record);
void write_summary_csv(const std::vector<BenchSummaryRow>& summary,
                       const std::filesystem::path& path);
std::vector<BenchSummaryRow> parse_summary_csv(const std::filesystem::path& path);

// elapsed-vs-N and elapsed-vs-size SVG charts derived from summary rows.
void write_bench_plots(const std::vector<BenchSummaryRow>& summary,
                       const std::filesystem::path& dir);

}  // namespace pcg

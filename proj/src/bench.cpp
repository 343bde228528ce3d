#include "pcg/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string_view>
#include <tuple>

#include "pcg/distill.hpp"
#include "pcg/plot.hpp"
#include "pcg/policy.hpp"

namespace pcg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr int kMaxGaAttempts = 25;  // consecutive zero-yield runs before giving up

RunConfig cell_config(const BenchCell& cell) {
    RunConfig cfg;
    cfg.domain = cell.domain;
    cfg.size = cell.size;
    cfg.air_bias = cell.air_bias;
    apply_domain_defaults(cfg);
    cfg.ga.acceptable_fraction = cell.fraction;
    return cfg;
}

void post_validate(const std::vector<Level>& levels, const DomainPlugin& plugin,
                   double threshold) {
    for (const Level& level : levels) {
        if (plugin.fitness(level) < threshold) {
            throw std::runtime_error(
                "bench post-validation failed: collected level below threshold");
        }
    }
}

BenchRecord base_record(const BenchCell& cell, const char* method) {
    BenchRecord record;
    record.method = method;
    record.domain = cell.domain;
    record.size = cell.size;
    record.fraction = cell.fraction;
    record.n_levels = cell.n_levels;
    record.seed = cell.seed;
    return record;
}

}  // namespace

BenchCellResult bench_ga(const BenchCell& cell) {
    const RunConfig cfg = cell_config(cell);
    const auto plugin = make_plugin(cfg);

    BenchCellResult out;
    out.record = base_record(cell, "GA");

    const auto t0 = Clock::now();
    int run_index = 0;
    int consecutive_failures = 0;
    while (static_cast<int>(out.levels.size()) < cell.n_levels) {
        GaConfig ga = cfg.ga;
        ga.seed = derive_seed(cell.seed, "bench.ga",
                              {static_cast<std::uint64_t>(run_index++)});
        const GaRunResult result = run_ga(ga, *plugin);
        if (result.final_levels.empty()) {
            if (++consecutive_failures >= kMaxGaAttempts) {
                throw std::runtime_error("bench: GA produced no acceptable level in " +
                                         std::to_string(kMaxGaAttempts) + " runs");
            }
            continue;
        }
        consecutive_failures = 0;
        for (const Level& level : result.final_levels) {
            if (static_cast<int>(out.levels.size()) >= cell.n_levels) {
                break;
            }
            out.levels.push_back(level);
        }
    }
    out.record.breakdown.ga_seconds = seconds_since(t0);
    out.record.elapsed_seconds = out.record.breakdown.ga_seconds;

    post_validate(out.levels, *plugin, cfg.ga.fitness_threshold);
    return out;
}

BenchCellResult bench_policy(const BenchCell& cell) {
    const RunConfig cfg = cell_config(cell);
    const auto plugin = make_plugin(cfg);

    BenchCellResult out;
    out.record = base_record(cell, "policy");

    // Phase 1: one successful GA run (failures are retried and billed).
    const auto t_ga = Clock::now();
    GaRunResult ga_result;
    for (int attempt = 0;; ++attempt) {
        GaConfig ga = cfg.ga;
        ga.seed = derive_seed(cell.seed, "bench.ga",
                              {static_cast<std::uint64_t>(attempt)});
        ga_result = run_ga(ga, *plugin);
        if (!ga_result.final_levels.empty()) {
            break;
        }
        if (attempt + 1 >= kMaxGaAttempts) {
            throw std::runtime_error("bench: GA produced no acceptable level in " +
                                     std::to_string(kMaxGaAttempts) + " runs");
        }
    }
    out.record.breakdown.ga_seconds = seconds_since(t_ga);

    // Phase 2: distillation.
    const auto t_distill = Clock::now();
    PolicyDataset dataset = build_dataset(ga_result);
    out.record.breakdown.distill_seconds = seconds_since(t_distill);

    // Phase 3: generation, including the index build.
    const auto t_generate = Clock::now();
    const PolicyRuntime runtime(std::move(dataset));
    PolicyConfig policy = cfg.policy;
    int failures = 0;
    int call_index = 0;
    while (static_cast<int>(out.levels.size()) < cell.n_levels) {
        Rng rng(derive_seed(cell.seed, "bench.generate",
                            {static_cast<std::uint64_t>(call_index++)}));
        const GenerationResult result = runtime.generate_level(*plugin, policy, rng);
        if (result.success) {
            out.levels.push_back(*result.level);
        } else if (++failures > cell.n_levels) {
            out.record.degraded = true;  // failure rate above 50%, stop burning time
            break;
        }
    }
    out.record.breakdown.generate_seconds = seconds_since(t_generate);
    if (!out.record.degraded) {
        out.record.degraded =
            failures > static_cast<int>(out.levels.size());
    }

    out.record.elapsed_seconds = out.record.breakdown.generate_seconds;
    if (cell.include_distillation_cost) {
        out.record.elapsed_seconds += out.record.breakdown.ga_seconds +
                                      out.record.breakdown.distill_seconds;
    } else {
        // marginal-cost view: the record carries generation time only
        out.record.breakdown.ga_seconds = 0.0;
        out.record.breakdown.distill_seconds = 0.0;
    }

    post_validate(out.levels, *plugin, cfg.ga.fitness_threshold);
    return out;
}

void BenchPlan::normalize(std::uint64_t root_seed) {
    if (domain == "platformer") {
        sizes = {101};
        if (levels_required == std::vector<int>{10, 50, 100}) {
            levels_required = {5, 10, 20};
        }
    } else if (domain != "maze") {
        throw ConfigError("unknown bench domain '" + domain + "'");
    }
    if (seeds.empty()) {
        for (std::uint64_t i = 0; i < 10; ++i) {
            seeds.push_back(derive_seed(root_seed, "bench.seed", {i}));
        }
    }
    if (sizes.empty() || fractions.empty() || levels_required.empty()) {
        throw ConfigError("bench plan must sweep at least one cell");
    }
    for (const double f : fractions) {
        if (f <= 0.0 || f > 1.0) {
            throw ConfigError("bench fractions must be in (0, 1]");
        }
    }
    for (const int n : levels_required) {
        if (n < 1) {
            throw ConfigError("bench levels_required must be positive");
        }
    }
}

BenchReport run_plan(const BenchPlan& plan,
                     const std::function<void(const BenchRecord&)>& on_record) {
    BenchReport report;
    for (const int size : plan.sizes) {
        for (const double fraction : plan.fractions) {
            for (const int n_levels : plan.levels_required) {
                for (const std::uint64_t seed : plan.seeds) {
                    BenchCell cell;
                    cell.domain = plan.domain;
                    cell.size = size;
                    cell.fraction = fraction;
                    cell.n_levels = n_levels;
                    cell.seed = seed;
                    cell.include_distillation_cost = plan.include_distillation_cost;
                    cell.air_bias = plan.air_bias;
                    for (const char* method : {"GA", "policy"}) {
                        BenchCellResult result = std::string_view(method) == "GA"
                                                     ? bench_ga(cell)
                                                     : bench_policy(cell);
                        if (on_record) {
                            on_record(result.record);
                        }
                        report.any_degraded |= result.record.degraded;
                        report.records.push_back(std::move(result.record));
                    }
                }
            }
        }
    }

    // Per-cell summary over seeds.
    std::map<std::tuple<std::string, int, double, int>, std::vector<double>> groups;
    for (const BenchRecord& r : report.records) {
        groups[{r.method, r.size, r.fraction, r.n_levels}].push_back(r.elapsed_seconds);
    }
    for (const auto& [key, values] : groups) {
        BenchSummaryRow row;
        row.method = std::get<0>(key);
        row.domain = plan.domain;
        row.size = std::get<1>(key);
        row.fraction = std::get<2>(key);
        row.n_levels = std::get<3>(key);
        double sum = 0.0;
        for (const double v : values) {
            sum += v;
        }
        row.mean_seconds = sum / static_cast<double>(values.size());
        if (values.size() > 1) {
            double sq = 0.0;
            for (const double v : values) {
                sq += (v - row.mean_seconds) * (v - row.mean_seconds);
            }
            row.std_seconds = std::sqrt(sq / static_cast<double>(values.size() - 1));
        }
        report.summary.push_back(std::move(row));
    }
    return report;
}

namespace {

std::string fmt_seconds(double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << v;
    return s.str();
}

std::string fmt_fraction(double v) {
    std::ostringstream s;
    s << std::setprecision(6) << v;
    return s.str();
}

}  // namespace

std::string bench_records_csv_header() {
    return "method,domain,size,fraction,n_levels,seed,elapsed_s,ga_s,distill_s,generate_s";
}

std::string bench_record_csv_row(const BenchRecord& r) {
    std::ostringstream row;
    row << r.method << ',' << r.domain << ',' << r.size << ','
        << fmt_fraction(r.fraction) << ',' << r.n_levels << ',' << r.seed << ','
        << fmt_seconds(r.elapsed_seconds) << ','
        << fmt_seconds(r.breakdown.ga_seconds) << ','
        << fmt_seconds(r.breakdown.distill_seconds) << ','
        << fmt_seconds(r.breakdown.generate_seconds);
    return row.str();
}

void write_summary_csv(const std::vector<BenchSummaryRow>& summary,
                       const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write summary csv: " + path.string());
    }
    out << "method,domain,size,fraction,n_levels,mean_s,std_s\n";
    for (const BenchSummaryRow& row : summary) {
        out << row.method << ',' << row.domain << ',' << row.size << ','
            << fmt_fraction(row.fraction) << ',' << row.n_levels << ','
            << fmt_seconds(row.mean_seconds) << ',' << fmt_seconds(row.std_seconds)
            << '\n';
    }
}

std::vector<BenchSummaryRow> parse_summary_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open summary csv: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) ||
        line != "method,domain,size,fraction,n_levels,mean_s,std_s") {
        throw ParseError("bad summary csv header in " + path.string());
    }
    std::vector<BenchSummaryRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        BenchSummaryRow row;
        std::string token;
        try {
            std::getline(fields, row.method, ',');
            std::getline(fields, row.domain, ',');
            std::getline(fields, token, ',');
            row.size = std::stoi(token);
            std::getline(fields, token, ',');
            row.fraction = std::stod(token);
            std::getline(fields, token, ',');
            row.n_levels = std::stoi(token);
            std::getline(fields, token, ',');
            row.mean_seconds = std::stod(token);
            std::getline(fields, token, ',');
            row.std_seconds = std::stod(token);
        } catch (const std::exception&) {
            throw ParseError("bad summary csv row at line " + std::to_string(line_no));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_bench_plots(const std::vector<BenchSummaryRow>& summary,
                       const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);

    // elapsed vs N, one chart per (size, fraction)
    std::map<std::pair<int, double>, std::vector<const BenchSummaryRow*>> by_cell;
    for (const BenchSummaryRow& row : summary) {
        by_cell[{row.size, row.fraction}].push_back(&row);
    }
    for (const auto& [key, rows] : by_cell) {
        std::map<std::string, PlotSeries> series;
        for (const BenchSummaryRow* row : rows) {
            PlotSeries& s = series[row->method];
            s.label = row->method;
            s.points.emplace_back(row->n_levels, row->mean_seconds);
        }
        std::vector<PlotSeries> list;
        for (auto& [name, s] : series) {
            std::sort(s.points.begin(), s.points.end());
            list.push_back(std::move(s));
        }
        std::ostringstream name;
        name << "elapsed_vs_levels_size" << key.first << "_frac" << fmt_fraction(key.second)
             << ".svg";
        std::ostringstream title;
        title << "Time to N levels (size " << key.first << ", fraction "
              << fmt_fraction(key.second) << ")";
        write_line_chart(dir / name.str(), title.str(), "levels required",
                         "elapsed seconds", list);
    }

    // elapsed vs size, one chart per (fraction, N)
    std::map<std::pair<double, int>, std::vector<const BenchSummaryRow*>> by_n;
    for (const BenchSummaryRow& row : summary) {
        by_n[{row.fraction, row.n_levels}].push_back(&row);
    }
    for (const auto& [key, rows] : by_n) {
        std::map<std::string, PlotSeries> series;
        for (const BenchSummaryRow* row : rows) {
            PlotSeries& s = series[row->method];
            s.label = row->method;
            s.points.emplace_back(row->size, row->mean_seconds);
        }
        std::vector<PlotSeries> list;
        for (auto& [name, s] : series) {
            std::sort(s.points.begin(), s.points.end());
            if (s.points.size() < 2) {
                continue;  // single-size sweeps carry no size trend
            }
            list.push_back(std::move(s));
        }
        if (list.empty()) {
            continue;
        }
        std::ostringstream name;
        name << "elapsed_vs_size_frac" << fmt_fraction(key.first) << "_n" << key.second
             << ".svg";
        std::ostringstream title;
        title << "Time to " << key.second << " levels by size (fraction "
              << fmt_fraction(key.first) << ")";
        write_line_chart(dir / name.str(), title.str(), "level size",
                         "elapsed seconds", list);
    }
}

}  // namespace pcg

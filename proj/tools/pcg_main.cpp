// pcg: evolve tile levels with a GA, distil the run into a nearest-neighbour
// policy, generate new levels from it, and benchmark both against each other.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "pcg/bench.hpp"
#include "pcg/distill.hpp"
#include "pcg/evolution.hpp"
#include "pcg/maze.hpp"
#include "pcg/platformer.hpp"
#include "pcg/policy.hpp"
#include "pcg/run_io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitMethodFailure = 1;
constexpr int kExitUsage = 2;

struct CliOptions {
    pcg::RunConfig run;
    std::uint64_t seed = 0;
    std::string out;
    std::string run_dir;
    std::string policy_dir;
    std::string level_file;
    std::string summary_file;
    int levels = 10;
    bool overlay_path = false;
    // bench sweep
    std::vector<int> sizes;
    std::vector<double> fractions;
    std::vector<int> bench_levels;
    int bench_seeds = 10;
    std::string include_distill_cost = "on";
};

void add_domain_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--domain", opt.run.domain, "Domain: maze or platformer")
        ->check(CLI::IsMember({"maze", "platformer"}))
        ->capture_default_str();
    cmd->add_option("--size", opt.run.size, "Maze side length")
        ->check(CLI::Range(2, 1024))
        ->capture_default_str();
    cmd->add_option("--air-bias", opt.run.air_bias,
                    "Platformer air tile probability")
        ->capture_default_str();
}

void add_ga_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--fraction", opt.run.ga.acceptable_fraction,
                    "Fraction of the child list that must be acceptable")
        ->capture_default_str();
    cmd->add_option("--threshold", opt.run.ga.fitness_threshold,
                    "Fitness threshold (domain default when omitted)");
    cmd->add_option("--population", opt.run.ga.population_size,
                    "Population size (domain default when omitted)");
    cmd->add_option("--max-iterations", opt.run.ga.max_iterations,
                    "Generation cap")
        ->capture_default_str();
    cmd->add_option("--mutation-rate", opt.run.ga.mutation_rate, "Mutation rate")
        ->capture_default_str();
}

void add_policy_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--p", opt.run.policy.p,
                    "Extended-action fraction of a trajectory");
    cmd->add_option("--max-steps", opt.run.policy.max_steps,
                    "Policy queries per attempt")
        ->capture_default_str();
    cmd->add_option("--max-restarts", opt.run.policy.max_restarts,
                    "Random restarts before giving up")
        ->capture_default_str();
}

std::string format_fitness(double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << v;
    return s.str();
}

pcg::AlphabetRef sniff_alphabet(const std::string& text) {
    std::set<char> glyphs;
    bool past_header = false;
    for (char c : text) {
        if (!past_header) {
            past_header = (c == '\n');
            continue;
        }
        if (c != '\n') {
            glyphs.insert(c);
        }
    }
    const auto subset_of = [&](const pcg::AlphabetRef& alphabet) {
        for (char g : glyphs) {
            if (!alphabet->id_of(g)) {
                return false;
            }
        }
        return true;
    };
    if (subset_of(pcg::maze::alphabet())) {
        return pcg::maze::alphabet();
    }
    if (subset_of(pcg::platformer::alphabet())) {
        return pcg::platformer::alphabet();
    }
    throw pcg::ParseError("level glyphs match neither maze nor platformer");
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw pcg::ParseError("cannot open: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cmd_evolve(const CliOptions& opt) {
    const fs::path out_dir(opt.out);
    if (!out_dir.parent_path().empty() && !fs::is_directory(out_dir.parent_path())) {
        std::cerr << "error: parent directory does not exist: "
                  << out_dir.parent_path().string() << '\n';
        return kExitUsage;
    }
    const auto plugin = pcg::make_plugin(opt.run);
    const pcg::GaRunResult result = pcg::run_ga(opt.run.ga, *plugin);

    pcg::save_run(result, opt.run, out_dir);
    pcg::write_resolved_config(out_dir / "resolved.cfg", pcg::describe_config(opt.run));

    std::cout << "generations: " << result.generations_used << '\n'
              << "acceptable levels: " << result.final_levels.size() << '\n'
              << "terminated by threshold: "
              << (result.terminated_by_threshold ? "yes" : "no") << '\n'
              << "wall clock: " << format_fitness(result.wall_clock_seconds)
              << " s\n";
    if (result.failed()) {
        std::cerr << "error: no acceptable level after "
                  << result.generations_used << " generations\n";
        return kExitMethodFailure;
    }
    return kExitSuccess;
}

int cmd_distill(const CliOptions& opt) {
    const pcg::LoadedRun loaded = pcg::load_run(opt.run_dir);
    if (loaded.result.final_levels.empty()) {
        std::cerr << "error: run has no acceptable levels to distil\n";
        return kExitMethodFailure;
    }
    pcg::RunConfig cfg = loaded.config;
    cfg.policy.p = opt.run.policy.p > 0 ? opt.run.policy.p : cfg.policy.p;
    cfg.policy.max_steps = opt.run.policy.max_steps;
    cfg.policy.max_restarts = opt.run.policy.max_restarts;

    const pcg::PolicyDataset dataset = pcg::build_dataset(loaded.result);
    const fs::path out_dir(opt.out);
    pcg::save_policy_artifact(dataset, cfg, out_dir);
    pcg::write_resolved_config(out_dir / "resolved.cfg", pcg::describe_config(cfg));

    std::cout << "trajectories: " << dataset.trajectory_bounds.size() << '\n'
              << "state-action pairs: " << dataset.size() << '\n';
    return kExitSuccess;
}

int cmd_generate(const CliOptions& opt) {
    pcg::LoadedPolicy loaded = pcg::load_policy_artifact(opt.policy_dir);
    const auto plugin = pcg::make_plugin(loaded.config);
    const pcg::PolicyRuntime runtime(std::move(loaded.dataset));

    const fs::path out_dir(opt.out);
    fs::create_directories(out_dir);
    pcg::write_resolved_config(out_dir / "resolved.cfg",
                               pcg::describe_config(loaded.config));

    bool failed = false;
    for (int i = 0; i < opt.levels; ++i) {
        pcg::Rng rng(pcg::derive_seed(opt.seed, "generate",
                                      {static_cast<std::uint64_t>(i)}));
        const pcg::GenerationResult result =
            runtime.generate_level(*plugin, loaded.config.policy, rng);
        if (!result.success) {
            std::cerr << "level " << i << ": failed after " << result.attempts
                      << " attempts (best fitness "
                      << format_fitness(result.best_fitness_seen) << ")\n";
            failed = true;
            continue;
        }
        const double fitness = plugin->fitness(*result.level);
        std::ostringstream name;
        name << std::setw(3) << std::setfill('0') << i << ".lvl";
        pcg::save_level(*result.level, out_dir / name.str());
        std::cout << name.str() << ": attempts " << result.attempts
                  << ", queries " << result.policy_queries << ", fitness "
                  << format_fitness(fitness) << ", "
                  << format_fitness(result.wall_clock_seconds) << " s\n";
    }
    return failed ? kExitMethodFailure : kExitSuccess;
}

int cmd_render(const CliOptions& opt) {
    const std::string text = read_file(opt.level_file);
    const pcg::AlphabetRef alphabet = sniff_alphabet(text);
    const pcg::Level level = pcg::parse_level(text, alphabet);

    if (!opt.overlay_path) {
        std::cout << pcg::to_text(level);
        return kExitSuccess;
    }
    if (!(*alphabet == *pcg::maze::alphabet())) {
        std::cerr << "error: --path applies to maze levels only\n";
        return kExitUsage;
    }
    const auto path_cells = pcg::maze::shortest_path_cells(level);
    std::string rendered = pcg::to_text(level);
    if (!path_cells) {
        std::cout << rendered << "unsolvable\n";
        return kExitSuccess;
    }
    // Overlay onto the rendered grid; row y starts after the header line.
    const std::size_t header = rendered.find('\n') + 1;
    const std::size_t stride = static_cast<std::size_t>(level.width()) + 1;
    for (const auto& [x, y] : *path_cells) {
        rendered[header + static_cast<std::size_t>(y) * stride +
                 static_cast<std::size_t>(x)] = '*';
    }
    std::cout << rendered << "path cells: " << path_cells->size() << '\n';
    return kExitSuccess;
}

int cmd_validate(const CliOptions& opt) {
    const std::string text = read_file(opt.level_file);
    const pcg::AlphabetRef alphabet = sniff_alphabet(text);
    const pcg::Level level = pcg::parse_level(text, alphabet);

    if (*alphabet == *pcg::maze::alphabet()) {
        const auto breakdown = pcg::maze::maze_fitness(level);
        const double threshold = 1.0;
        std::cout << "domain: maze\n"
                  << "finishable: " << breakdown.finishable << '\n'
                  << "ratio_x: " << format_fitness(breakdown.ratio_x) << '\n'
                  << "ratio_y: " << format_fitness(breakdown.ratio_y) << '\n'
                  << "path_length: " << breakdown.path_length << '\n'
                  << "total: " << format_fitness(breakdown.total) << '\n';
        return breakdown.total >= threshold ? kExitSuccess : kExitMethodFailure;
    }
    const auto breakdown = pcg::platformer::platformer_fitness(level);
    const double threshold = 3.0;
    std::cout << "domain: platformer\n"
              << "win_value: " << format_fitness(breakdown.win_value) << '\n'
              << "completion: " << format_fitness(breakdown.completion) << '\n'
              << "mario_state: " << breakdown.mario_state << '\n'
              << "total: " << format_fitness(breakdown.total) << '\n';
    return breakdown.total >= threshold ? kExitSuccess : kExitMethodFailure;
}

int cmd_bench(const CliOptions& opt) {
    pcg::BenchPlan plan;
    plan.domain = opt.run.domain;
    if (!opt.sizes.empty()) {
        plan.sizes = opt.sizes;
    }
    if (!opt.fractions.empty()) {
        plan.fractions = opt.fractions;
    }
    if (!opt.bench_levels.empty()) {
        plan.levels_required = opt.bench_levels;
    }
    plan.include_distillation_cost = (opt.include_distill_cost != "off");
    plan.air_bias = opt.run.air_bias;
    for (int i = 0; i < opt.bench_seeds; ++i) {
        plan.seeds.push_back(pcg::derive_seed(opt.seed, "bench.seed",
                                              {static_cast<std::uint64_t>(i)}));
    }
    plan.normalize(opt.seed);

    const fs::path out_dir(opt.out);
    fs::create_directories(out_dir);
    std::ofstream records(out_dir / "records.csv", std::ios::binary);
    if (!records) {
        std::cerr << "error: cannot write records.csv\n";
        return kExitUsage;
    }
    records << pcg::bench_records_csv_header() << '\n';
    const auto report = pcg::run_plan(plan, [&](const pcg::BenchRecord& record) {
        records << pcg::bench_record_csv_row(record) << '\n';
        records.flush();
        std::cout << pcg::bench_record_csv_row(record) << '\n';
    });
    pcg::write_summary_csv(report.summary, out_dir / "summary.csv");
    pcg::write_bench_plots(report.summary, out_dir / "plots");

    std::vector<std::pair<std::string, std::string>> echo{
        {"domain", plan.domain},
        {"include-distill-cost", plan.include_distillation_cost ? "on" : "off"},
        {"seed", std::to_string(opt.seed)},
        {"seeds", std::to_string(plan.seeds.size())},
    };
    pcg::write_resolved_config(out_dir / "resolved.cfg", echo);

    if (report.any_degraded) {
        std::cerr << "error: at least one policy cell had a failure rate above 50%\n";
        return kExitMethodFailure;
    }
    return kExitSuccess;
}

int cmd_plot(const CliOptions& opt) {
    const auto summary = pcg::parse_summary_csv(opt.summary_file);
    pcg::write_bench_plots(summary, opt.out);
    std::cout << "plots written to " << opt.out << '\n';
    return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tile-level generation: GA evolution distilled into a "
                 "nearest-neighbour policy"};
    app.require_subcommand(1);
    CliOptions opt;

    CLI::App* evolve = app.add_subcommand("evolve", "Run the GA and persist the run");
    add_domain_flags(evolve, opt);
    add_ga_flags(evolve, opt);
    evolve->add_option("--seed", opt.seed, "Root seed")->capture_default_str();
    evolve->add_option("--out", opt.out, "Run output directory")->required();
    evolve->set_config("--config");

    CLI::App* distill = app.add_subcommand(
        "distill", "Build the policy dataset from a GA run directory");
    distill->add_option("--run", opt.run_dir, "GA run directory")->required();
    distill->add_option("--out", opt.out, "Policy artifact directory")->required();
    add_policy_flags(distill, opt);
    distill->set_config("--config");

    CLI::App* generate = app.add_subcommand(
        "generate", "Generate levels by querying a distilled policy");
    generate->add_option("--policy", opt.policy_dir, "Policy artifact directory")
        ->required();
    generate->add_option("--levels", opt.levels, "Number of levels to generate")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    generate->add_option("--seed", opt.seed, "Root seed")->capture_default_str();
    generate->add_option("--out", opt.out, "Output directory")->required();
    generate->set_config("--config");

    CLI::App* render = app.add_subcommand("render", "Print a level file as text");
    render->add_option("--level", opt.level_file, "Level file")->required();
    render->add_flag("--path", opt.overlay_path,
                     "Overlay the BFS shortest path (maze only)");

    CLI::App* validate = app.add_subcommand(
        "validate", "Recompute a level's fitness and check playability");
    validate->add_option("--level", opt.level_file, "Level file")->required();

    CLI::App* bench = app.add_subcommand(
        "bench", "Wall-clock sweep: GA per batch vs distilled policy");
    add_domain_flags(bench, opt);
    bench->add_option("--sizes", opt.sizes, "Maze sizes to sweep")->delimiter(',');
    bench->add_option("--fractions", opt.fractions, "Acceptable fractions to sweep")
        ->delimiter(',');
    bench->add_option("--levels", opt.bench_levels, "Level counts to sweep")
        ->delimiter(',');
    bench->add_option("--seeds", opt.bench_seeds, "Number of derived seeds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_option("--seed", opt.seed, "Root seed")->capture_default_str();
    bench->add_option("--include-distill-cost", opt.include_distill_cost,
                      "Bill GA+distillation time to the policy track (on/off)")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    bench->add_option("--out", opt.out, "Output directory")->required();
    bench->set_config("--config");

    CLI::App* plot = app.add_subcommand("plot", "Render SVG charts from a summary CSV");
    plot->add_option("--summary", opt.summary_file, "summary.csv path")->required();
    plot->add_option("--out", opt.out, "Plot output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        // Fill domain defaults for anything the user left unset.
        const CLI::App* active = app.get_subcommands().front();
        pcg::RunConfig defaults;
        defaults.domain = opt.run.domain;
        pcg::apply_domain_defaults(defaults);
        const auto unset = [&](const char* flag) {
            const CLI::Option* o = active->get_option_no_throw(flag);
            return o == nullptr || o->count() == 0;
        };
        if (unset("--threshold")) {
            opt.run.ga.fitness_threshold = defaults.ga.fitness_threshold;
            opt.run.policy.fitness_threshold = defaults.policy.fitness_threshold;
        } else {
            opt.run.policy.fitness_threshold = opt.run.ga.fitness_threshold;
        }
        if (unset("--population")) {
            opt.run.ga.population_size = defaults.ga.population_size;
        }
        opt.run.ga.crossover_points = defaults.ga.crossover_points;
        opt.run.ga.child_list_size = defaults.ga.child_list_size;
        opt.run.ga.elitism_count =
            std::max(1, opt.run.ga.population_size / 10);
        if (unset("--p")) {
            opt.run.policy.p = defaults.policy.p;
        }
        opt.run.ga.seed = opt.seed;

        if (evolve->parsed()) {
            return cmd_evolve(opt);
        }
        if (distill->parsed()) {
            return cmd_distill(opt);
        }
        if (generate->parsed()) {
            return cmd_generate(opt);
        }
        if (render->parsed()) {
            return cmd_render(opt);
        }
        if (validate->parsed()) {
            return cmd_validate(opt);
        }
        if (bench->parsed()) {
            return cmd_bench(opt);
        }
        if (plot->parsed()) {
            return cmd_plot(opt);
        }
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const pcg::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const pcg::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMethodFailure;
    }
}

#include "pcg/run_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "pcg/maze.hpp"
#include "pcg/platformer.hpp"

namespace pcg {

namespace fs = std::filesystem;
using nlohmann::json;

void apply_domain_defaults(RunConfig& cfg) {
    if (cfg.domain == "maze") {
        cfg.ga.population_size = 50;
        cfg.ga.crossover_points = 50;
        cfg.ga.elitism_count = 5;
        cfg.ga.fitness_threshold = 1.0;
        cfg.policy.p = 0.06;
        cfg.policy.fitness_threshold = 1.0;
    } else if (cfg.domain == "platformer") {
        cfg.ga.population_size = 100;
        cfg.ga.crossover_points = 101;
        cfg.ga.elitism_count = 10;
        cfg.ga.fitness_threshold = 3.0;
        cfg.policy.p = 0.05;
        cfg.policy.fitness_threshold = 3.0;
    } else {
        throw ConfigError("unknown domain '" + cfg.domain + "'");
    }
    cfg.ga.child_list_size = 20;
    cfg.ga.mutation_rate = 0.05;
    cfg.ga.max_iterations = 1000;
}

std::unique_ptr<DomainPlugin> make_plugin(const RunConfig& cfg) {
    if (cfg.domain == "maze") {
        return std::make_unique<maze::MazePlugin>(maze::MazeConfig::for_size(cfg.size));
    }
    if (cfg.domain == "platformer") {
        platformer::PlatformerConfig pc;
        pc.air_bias = cfg.air_bias;
        return std::make_unique<platformer::PlatformerPlugin>(pc);
    }
    throw ConfigError("unknown domain '" + cfg.domain + "'");
}

namespace {

std::string level_file_name(std::size_t index) {
    std::ostringstream name;
    name << std::setw(3) << std::setfill('0') << index << ".lvl";
    return name.str();
}

json config_to_json(const RunConfig& cfg) {
    return json{
        {"domain", cfg.domain},
        {"size", cfg.size},
        {"air_bias", cfg.air_bias},
        {"ga",
         {{"population_size", cfg.ga.population_size},
          {"child_list_size", cfg.ga.child_list_size},
          {"crossover_points", cfg.ga.crossover_points},
          {"mutation_rate", cfg.ga.mutation_rate},
          {"max_iterations", cfg.ga.max_iterations},
          {"fitness_threshold", cfg.ga.fitness_threshold},
          {"acceptable_fraction", cfg.ga.acceptable_fraction},
          {"elitism_count", cfg.ga.elitism_count},
          {"seed", cfg.ga.seed}}},
        {"policy",
         {{"p", cfg.policy.p},
          {"max_steps", cfg.policy.max_steps},
          {"max_restarts", cfg.policy.max_restarts},
          {"fitness_threshold", cfg.policy.fitness_threshold},
          {"proportional_extension", cfg.policy.proportional_extension}}}};
}

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    cfg.domain = j.at("domain").get<std::string>();
    cfg.size = j.at("size").get<int>();
    cfg.air_bias = j.at("air_bias").get<double>();
    const json& ga = j.at("ga");
    cfg.ga.population_size = ga.at("population_size").get<int>();
    cfg.ga.child_list_size = ga.at("child_list_size").get<int>();
    cfg.ga.crossover_points = ga.at("crossover_points").get<int>();
    cfg.ga.mutation_rate = ga.at("mutation_rate").get<double>();
    cfg.ga.max_iterations = ga.at("max_iterations").get<int>();
    cfg.ga.fitness_threshold = ga.at("fitness_threshold").get<double>();
    cfg.ga.acceptable_fraction = ga.at("acceptable_fraction").get<double>();
    cfg.ga.elitism_count = ga.at("elitism_count").get<int>();
    cfg.ga.seed = ga.at("seed").get<std::uint64_t>();
    const json& policy = j.at("policy");
    cfg.policy.p = policy.at("p").get<double>();
    cfg.policy.max_steps = policy.at("max_steps").get<int>();
    cfg.policy.max_restarts = policy.at("max_restarts").get<int>();
    cfg.policy.fitness_threshold = policy.at("fitness_threshold").get<double>();
    cfg.policy.proportional_extension = policy.at("proportional_extension").get<bool>();
    return cfg;
}

void write_json(const json& j, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write: " + path.string());
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw ParseError("write failed: " + path.string());
    }
}

json read_json(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open: " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("bad JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

std::vector<Level> load_level_dir(const fs::path& dir, const AlphabetRef& alphabet) {
    if (!fs::is_directory(dir)) {
        throw ParseError("missing level directory: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".lvl") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<Level> levels;
    levels.reserve(files.size());
    for (const fs::path& file : files) {
        levels.push_back(load_level(file, alphabet));
    }
    return levels;
}

AlphabetRef domain_alphabet(const std::string& domain) {
    if (domain == "maze") {
        return maze::alphabet();
    }
    if (domain == "platformer") {
        return platformer::alphabet();
    }
    throw ConfigError("unknown domain '" + domain + "'");
}

}  // namespace

void save_run(const GaRunResult& result, const RunConfig& cfg, const fs::path& dir) {
    fs::create_directories(dir / "initial");
    fs::create_directories(dir / "final");
    for (std::size_t i = 0; i < result.initial_levels.size(); ++i) {
        save_level(result.initial_levels[i], dir / "initial" / level_file_name(i));
    }
    for (std::size_t i = 0; i < result.final_levels.size(); ++i) {
        save_level(result.final_levels[i], dir / "final" / level_file_name(i));
    }
    json j{{"format", "pcgrun v1"},
           {"config", config_to_json(cfg)},
           {"seed", result.seed},
           {"generations_used", result.generations_used},
           {"wall_clock_seconds", result.wall_clock_seconds},
           {"terminated_by_threshold", result.terminated_by_threshold},
           {"initial_count", result.initial_levels.size()},
           {"final_count", result.final_levels.size()},
           {"best_fitness_history", result.best_fitness_history}};
    write_json(j, dir / "run.json");
}

LoadedRun load_run(const fs::path& dir) {
    const json j = read_json(dir / "run.json");
    try {
        if (j.at("format").get<std::string>() != "pcgrun v1") {
            throw ParseError("unsupported run format in " + dir.string());
        }
        LoadedRun loaded;
        loaded.config = config_from_json(j.at("config"));
        loaded.result.seed = j.at("seed").get<std::uint64_t>();
        loaded.result.generations_used = j.at("generations_used").get<int>();
        loaded.result.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
        loaded.result.terminated_by_threshold =
            j.at("terminated_by_threshold").get<bool>();
        loaded.result.best_fitness_history =
            j.at("best_fitness_history").get<std::vector<double>>();

        const AlphabetRef alphabet = domain_alphabet(loaded.config.domain);
        loaded.result.initial_levels = load_level_dir(dir / "initial", alphabet);
        loaded.result.final_levels = load_level_dir(dir / "final", alphabet);
        if (loaded.result.initial_levels.size() !=
                j.at("initial_count").get<std::size_t>() ||
            loaded.result.final_levels.size() !=
                j.at("final_count").get<std::size_t>()) {
            throw ParseError("level file count does not match run.json in " +
                             dir.string());
        }
        return loaded;
    } catch (const json::exception& e) {
        throw ParseError("corrupt run.json in " + dir.string() + ": " + e.what());
    }
}

void save_policy_artifact(const PolicyDataset& dataset, const RunConfig& cfg,
                          const fs::path& dir) {
    fs::create_directories(dir);
    save_dataset(dataset, dir / "dataset.pcgdata");
    json j{{"format", "pcgpolicy v1"},
           {"p", cfg.policy.p},
           {"max_steps", cfg.policy.max_steps},
           {"max_restarts", cfg.policy.max_restarts},
           {"fitness_threshold", cfg.policy.fitness_threshold},
           {"proportional_extension", cfg.policy.proportional_extension},
           {"config", config_to_json(cfg)}};
    write_json(j, dir / "policy.json");
}

LoadedPolicy load_policy_artifact(const fs::path& dir) {
    const json j = read_json(dir / "policy.json");
    LoadedPolicy loaded;
    try {
        if (j.at("format").get<std::string>() != "pcgpolicy v1") {
            throw ParseError("unsupported policy format in " + dir.string());
        }
        loaded.config = config_from_json(j.at("config"));
        loaded.config.policy.p = j.at("p").get<double>();
        loaded.config.policy.max_steps = j.at("max_steps").get<int>();
        loaded.config.policy.max_restarts = j.at("max_restarts").get<int>();
        loaded.config.policy.fitness_threshold =
            j.at("fitness_threshold").get<double>();
        loaded.config.policy.proportional_extension = j.at("proportional_extension").get<bool>();
    } catch (const json::exception& e) {
        throw ParseError("corrupt policy.json in " + dir.string() + ": " + e.what());
    }
    loaded.dataset = load_dataset(dir / "dataset.pcgdata");
    return loaded;
}

void write_resolved_config(
    const fs::path& path,
    const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write: " + path.string());
    }
    for (const auto& [key, value] : entries) {
        out << key << '=' << value << '\n';
    }
}

namespace {

std::string format_double(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

}  // namespace

std::vector<std::pair<std::string, std::string>> describe_config(const RunConfig& cfg) {
    return {
        {"domain", cfg.domain},
        {"size", std::to_string(cfg.size)},
        {"air-bias", format_double(cfg.air_bias)},
        {"population", std::to_string(cfg.ga.population_size)},
        {"child-list", std::to_string(cfg.ga.child_list_size)},
        {"crossover-points", std::to_string(cfg.ga.crossover_points)},
        {"mutation-rate", format_double(cfg.ga.mutation_rate)},
        {"max-iterations", std::to_string(cfg.ga.max_iterations)},
        {"threshold", format_double(cfg.ga.fitness_threshold)},
        {"fraction", format_double(cfg.ga.acceptable_fraction)},
        {"elitism", std::to_string(cfg.ga.elitism_count)},
        {"seed", std::to_string(cfg.ga.seed)},
        {"p", format_double(cfg.policy.p)},
        {"max-steps", std::to_string(cfg.policy.max_steps)},
        {"max-restarts", std::to_string(cfg.policy.max_restarts)},
    };
}

}  // namespace pcg

#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pcg/distill.hpp"
#include "pcg/evolution.hpp"
#include "pcg/policy.hpp"

namespace pcg {

// Fully resolved pipeline configuration: domain selection plus the GA and
// policy settings that belong to it.
struct RunConfig {
    std::string domain = "maze";  // maze | platformer
    int size = 10;                // maze side length
    double air_bias = 0.80;       // platformer air probability
    GaConfig ga;
    PolicyConfig policy;
};

// Domain-specific defaults: population 50/100, crossover points 50/101,
// child list 20, mutation rate 0.05, max iterations 1000, elitism 10% of
// the population, thresholds 1.0/3.0 and p 0.06/0.05.
void apply_domain_defaults(RunConfig& cfg);

std::unique_ptr<DomainPlugin> make_plugin(const RunConfig& cfg);

// Run directory layout:
//   initial/NNN.lvl   initial random levels, creation order
//   final/NNN.lvl     acceptable levels, best first
//   run.json          config echo and run metadata
void save_run(const GaRunResult& result, const RunConfig& cfg,
              const std::filesystem::path& dir);

struct LoadedRun {
    GaRunResult result;
    RunConfig config;
};
LoadedRun load_run(const std::filesystem::path& dir);

// Policy artifact directory: dataset.pcgdata plus policy.json (p, max_steps,
// max_restarts, fitness_threshold and the domain echo needed to rebuild the
// plugin). Loading re-derives the neighbour index deterministically.
void save_policy_artifact(const PolicyDataset& dataset, const RunConfig& cfg,
                          const std::filesystem::path& dir);

struct LoadedPolicy {
    PolicyDataset dataset;
    RunConfig config;
};
LoadedPolicy load_policy_artifact(const std::filesystem::path& dir);

// Flat key=value echo of the resolved configuration, written alongside every
// command's outputs.
void write_resolved_config(const std::filesystem::path& path,
                           const std::vector<std::pair<std::string, std::string>>& entries);

std::vector<std::pair<std::string, std::string>> describe_config(const RunConfig& cfg);

}  // namespace pcg

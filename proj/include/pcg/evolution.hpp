#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcg/level.hpp"
#include "pcg/rng.hpp"

namespace pcg {

// Fixed-length chromosome. The meaning of a unit is domain-defined: packed
// wall coordinates for mazes, packed tile columns for the platformer.
using GeneUnit = std::uint64_t;
using Gene = std::vector<GeneUnit>;

// Domain plugin consumed by the GA engine. Implementations must be pure
// (fitness is deterministic, decode(encode(L)) == L) and safe to call from
// concurrent workers.
class DomainPlugin {
public:
    virtual ~DomainPlugin() = default;

    virtual std::string name() const = 0;
    virtual AlphabetRef alphabet() const = 0;
    virtual Level random_level(Rng& rng) const = 0;
    virtual double fitness(const Level& level) const = 0;
    virtual Gene gene_encode(const Level& level) const = 0;
    virtual Level gene_decode(const Gene& gene) const = 0;

    // Re-draws the unit at `position`. Receives the whole gene so the new
    // unit can respect occupancy constraints.
    virtual GeneUnit mutate_unit(const Gene& gene, std::size_t position,
                                 Rng& rng) const = 0;

    // Restores domain invariants that crossover can break (for mazes,
    // duplicate wall coordinates collapse into fewer walls when decoded).
    // Called on each child between crossover and mutation. Default: no-op.
    virtual void canonicalize(Gene& gene, Rng& rng) const { (void)gene; (void)rng; }
};

struct GaConfig {
    int population_size = 50;
    int child_list_size = 20;
    int crossover_points = 50;
    double mutation_rate = 0.05;
    int max_iterations = 1000;
    double fitness_threshold = 1.0;
    double acceptable_fraction = 1.0;
    int elitism_count = 5;
    std::uint64_t seed = 0;

    void validate() const;  // throws ConfigError
};

struct Member {
    Gene gene;
    double fitness = 0.0;
};

// Members are kept sorted descending by fitness after each evaluation.
struct Population {
    std::vector<Member> members;
    int generation_index = 0;
};

struct GaRunResult {
    std::vector<Level> initial_levels;
    std::vector<Level> final_levels;  // fitness >= threshold, ascending
    int generations_used = 0;
    double wall_clock_seconds = 0.0;
    std::uint64_t seed = 0;
    bool terminated_by_threshold = false;
    std::vector<double> best_fitness_history;  // one entry per evaluated generation

    bool failed() const { return final_levels.empty(); }
};

// Swaps alternating segments of two equal-length genes at `k` distinct
// interior cut positions drawn uniformly without replacement.
std::pair<Gene, Gene> k_point_crossover(const Gene& a, const Gene& b, int k,
                                        Rng& rng);

// Crossover at explicit cut positions (strictly increasing, each in
// [1, len-1]). The rng variant draws cuts and delegates here.
std::pair<Gene, Gene> k_point_crossover_at(const Gene& a, const Gene& b,
                                           std::span<const std::size_t> cuts);

// Re-draws ceil(rate * |g|) distinct positions through plugin.mutate_unit,
// in ascending position order. rate 0 returns the gene unchanged.
Gene mutate(const Gene& g, double rate, const DomainPlugin& plugin, Rng& rng);

// Fraction of the child list (top child_list_size members) at or above the
// fitness threshold; the GA's termination measure.
double child_list_acceptable_fraction(const Population& pop, const GaConfig& cfg);

// Produces the next generation: elites copied unchanged, remaining slots
// filled by fitness-proportional parent selection over the child list,
// k-point crossover and mutation. RNG streams are derived per child pair
// from (seed, generation_index, pair), so results do not depend on
// evaluation order.
Population step_generation(const Population& pop, const GaConfig& cfg,
                           const DomainPlugin& plugin);

// Runs the GA until the child list reaches the acceptable fraction or
// max_iterations generations have been produced. The initial random levels
// and all final members at or above the threshold are recorded.
GaRunResult run_ga(const GaConfig& cfg, const DomainPlugin& plugin);

}  // namespace pcg

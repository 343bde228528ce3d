#include "pcg/evolution.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace pcg {

void GaConfig::validate() const {
    if (population_size < 2) {
        throw ConfigError("population_size must be at least 2");
    }
    if (child_list_size < 1 || child_list_size > population_size) {
        throw ConfigError("child_list_size must be in [1, population_size]");
    }
    if (crossover_points < 1) {
        throw ConfigError("crossover_points must be at least 1");
    }
    if (mutation_rate < 0.0 || mutation_rate > 1.0) {
        throw ConfigError("mutation_rate must be in [0, 1]");
    }
    if (max_iterations < 0) {
        throw ConfigError("max_iterations must be non-negative");
    }
    if (acceptable_fraction <= 0.0 || acceptable_fraction > 1.0) {
        throw ConfigError("acceptable_fraction must be in (0, 1]");
    }
    if (elitism_count < 0 || elitism_count >= population_size) {
        throw ConfigError("elitism_count must be in [0, population_size)");
    }
}

std::pair<Gene, Gene> k_point_crossover_at(const Gene& a, const Gene& b,
                                           std::span<const std::size_t> cuts) {
    if (a.size() != b.size()) {
        throw ConfigError("crossover requires equal gene lengths");
    }
    const std::size_t len = a.size();
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        if (cuts[i] < 1 || cuts[i] >= len || (i > 0 && cuts[i] <= cuts[i - 1])) {
            throw ConfigError("crossover cuts must be strictly increasing interior positions");
        }
    }
    Gene c1(len);
    Gene c2(len);
    std::size_t next_cut = 0;
    bool swapped = false;
    for (std::size_t i = 0; i < len; ++i) {
        if (next_cut < cuts.size() && cuts[next_cut] == i) {
            swapped = !swapped;
            ++next_cut;
        }
        c1[i] = swapped ? b[i] : a[i];
        c2[i] = swapped ? a[i] : b[i];
    }
    return {std::move(c1), std::move(c2)};
}

std::pair<Gene, Gene> k_point_crossover(const Gene& a, const Gene& b, int k,
                                        Rng& rng) {
    if (a.size() != b.size()) {
        throw ConfigError("crossover requires equal gene lengths");
    }
    const std::size_t len = a.size();
    if (len < 2 || k < 1 || static_cast<std::size_t>(k) >= len) {
        throw ConfigError("crossover_points must satisfy 1 <= k < gene length");
    }
    // Sample k distinct interior boundaries from [1, len-1].
    std::vector<std::size_t> boundaries(len - 1);
    std::iota(boundaries.begin(), boundaries.end(), std::size_t{1});
    for (int i = 0; i < k; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(rng.next_below(boundaries.size() - i));
        std::swap(boundaries[i], boundaries[j]);
    }
    boundaries.resize(static_cast<std::size_t>(k));
    std::sort(boundaries.begin(), boundaries.end());
    return k_point_crossover_at(a, b, boundaries);
}

Gene mutate(const Gene& g, double rate, const DomainPlugin& plugin, Rng& rng) {
    if (rate < 0.0 || rate > 1.0) {
        throw ConfigError("mutation rate must be in [0, 1]");
    }
    const std::size_t len = g.size();
    // The epsilon guards against products like 0.07 * 100 landing one ulp
    // above the intended integer.
    auto count = static_cast<std::size_t>(
        std::ceil(rate * static_cast<double>(len) - 1e-9));
    count = std::min(count, len);
    Gene out = g;
    if (count == 0 || len == 0) {
        return out;
    }
    std::vector<std::size_t> positions(len);
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(len - i));
        std::swap(positions[i], positions[j]);
    }
    positions.resize(count);
    std::sort(positions.begin(), positions.end());
    for (std::size_t pos : positions) {
        out[pos] = plugin.mutate_unit(out, pos, rng);
    }
    return out;
}

double child_list_acceptable_fraction(const Population& pop, const GaConfig& cfg) {
    const std::size_t n = std::min<std::size_t>(
        static_cast<std::size_t>(cfg.child_list_size), pop.members.size());
    if (n == 0) {
        return 0.0;
    }
    std::size_t acceptable = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (pop.members[i].fitness >= cfg.fitness_threshold) {
            ++acceptable;
        }
    }
    return static_cast<double>(acceptable) / static_cast<double>(n);
}

namespace {

double evaluate(const Gene& gene, const DomainPlugin& plugin) {
    return plugin.fitness(plugin.gene_decode(gene));
}

void sort_descending(std::vector<Member>& members) {
    std::stable_sort(members.begin(), members.end(),
                     [](const Member& a, const Member& b) {
                         return a.fitness > b.fitness;
                     });
}

// Fitness-proportional pick over the first `pool` members, with windowing:
// weights are fitness minus the pool minimum, so selection pressure tracks
// fitness differences instead of vanishing when all values share a large
// common offset. A flat pool degrades to a uniform pick.
std::size_t roulette_pick(const std::vector<Member>& members, std::size_t pool,
                          Rng& rng) {
    double min_fitness = members[0].fitness;
    for (std::size_t i = 1; i < pool; ++i) {
        min_fitness = std::min(min_fitness, members[i].fitness);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < pool; ++i) {
        total += members[i].fitness - min_fitness;
    }
    if (!(total > 0.0)) {
        return static_cast<std::size_t>(rng.next_below(pool));
    }
    const double r = rng.next_double() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < pool; ++i) {
        acc += members[i].fitness - min_fitness;
        if (r < acc) {
            return i;
        }
    }
    return pool - 1;
}

}  // namespace

Population step_generation(const Population& pop, const GaConfig& cfg,
                           const DomainPlugin& plugin) {
    cfg.validate();
    if (pop.members.empty()) {
        throw ConfigError("step_generation requires an evaluated population");
    }
    const std::size_t size = pop.members.size();
    const auto elites = static_cast<std::size_t>(
        std::min<std::size_t>(static_cast<std::size_t>(cfg.elitism_count), size));
    const std::size_t pool =
        std::min<std::size_t>(static_cast<std::size_t>(cfg.child_list_size), size);
    const std::size_t gene_len = pop.members.front().gene.size();
    const int k = std::min<int>(cfg.crossover_points,
                                static_cast<int>(gene_len) - 1);

    Population next;
    next.generation_index = pop.generation_index + 1;
    next.members.reserve(size);
    for (std::size_t i = 0; i < elites; ++i) {
        next.members.push_back(pop.members[i]);
    }

    std::size_t pair_index = 0;
    while (next.members.size() < size) {
        Rng rng(derive_seed(cfg.seed, "ga.pair",
                            {static_cast<std::uint64_t>(next.generation_index),
                             pair_index++}));
        const Member& pa = pop.members[roulette_pick(pop.members, pool, rng)];
        const Member& pb = pop.members[roulette_pick(pop.members, pool, rng)];
        auto [c1, c2] = k_point_crossover(pa.gene, pb.gene, k, rng);
        plugin.canonicalize(c1, rng);
        c1 = mutate(c1, cfg.mutation_rate, plugin, rng);
        next.members.push_back(Member{std::move(c1), 0.0});
        if (next.members.size() < size) {
            plugin.canonicalize(c2, rng);
            c2 = mutate(c2, cfg.mutation_rate, plugin, rng);
            next.members.push_back(Member{std::move(c2), 0.0});
        }
    }
    for (std::size_t i = elites; i < size; ++i) {
        next.members[i].fitness = evaluate(next.members[i].gene, plugin);
    }
    sort_descending(next.members);
    return next;
}

GaRunResult run_ga(const GaConfig& cfg, const DomainPlugin& plugin) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();

    GaRunResult result;
    result.seed = cfg.seed;

    Population pop;
    pop.members.reserve(static_cast<std::size_t>(cfg.population_size));
    result.initial_levels.reserve(static_cast<std::size_t>(cfg.population_size));
    for (int i = 0; i < cfg.population_size; ++i) {
        Rng rng(derive_seed(cfg.seed, "ga.init", {static_cast<std::uint64_t>(i)}));
        Level level = plugin.random_level(rng);
        Gene gene = plugin.gene_encode(level);
        const double fitness = plugin.fitness(level);
        result.initial_levels.push_back(std::move(level));
        pop.members.push_back(Member{std::move(gene), fitness});
    }
    sort_descending(pop.members);
    result.best_fitness_history.push_back(pop.members.front().fitness);

    bool met = child_list_acceptable_fraction(pop, cfg) >= cfg.acceptable_fraction;
    while (!met && pop.generation_index < cfg.max_iterations) {
        pop = step_generation(pop, cfg, plugin);
        result.best_fitness_history.push_back(pop.members.front().fitness);
        met = child_list_acceptable_fraction(pop, cfg) >= cfg.acceptable_fraction;
    }

    // Acceptable members in ascending fitness order: when the dataset built
    // from this run is replayed as one sequential buffer, its tail (the
    // policy's fixed point) then holds the strongest levels.
    for (auto it = pop.members.rbegin(); it != pop.members.rend(); ++it) {
        if (it->fitness >= cfg.fitness_threshold) {
            result.final_levels.push_back(plugin.gene_decode(it->gene));
        }
    }
    result.generations_used = pop.generation_index;
    result.terminated_by_threshold = met;
    result.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace pcg

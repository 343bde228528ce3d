#pragma once

#include <optional>
#include <vector>

#include "pcg/distill.hpp"
#include "pcg/evolution.hpp"
#include "pcg/level.hpp"
#include "pcg/rng.hpp"

namespace pcg {

struct PolicyConfig {
    double p = 0.06;               // temporal-extension control
    int max_steps = 50;            // policy queries per attempt
    int max_restarts = 25;         // fresh random levels before giving up
    double fitness_threshold = 1.0;
    // Default: each query applies n = |delta|/p actions, running on through
    // the dataset's sequential buffer across trajectory boundaries. The
    // demonstration buffer is one ordered list, so long runs sweep the state
    // onto recorded end levels; short within-trajectory runs stall at
    // trajectory ends on a no-op fixed point (the dilution of a random
    // start's leftover tiles keeps fitness just under threshold).
    // The conservative alternative below is kept for comparison.
    bool proportional_extension = false;  // n = p * |delta|, trajectory-truncated

    void validate() const;
};

struct NeighbourHit {
    std::size_t index = 0;
    int distance = 0;
};

// Exact 1-NN over flattened tile-id vectors under hamming distance. Ties
// resolve to the lowest insertion index. Binary alphabets use a bit-packed
// popcount scan; everything else uses a byte scan with early abort.
// Immutable after construction; safe to share across threads.
class NeighbourIndex {
public:
    explicit NeighbourIndex(const std::vector<Level>& states);
    explicit NeighbourIndex(const PolicyDataset& dataset);

    NeighbourHit nearest(const Level& query) const;

    std::size_t size() const { return count_; }
    int width() const { return width_; }
    int height() const { return height_; }

private:
    template <typename GetState>
    void build(std::size_t count, GetState&& state_at);

    int width_ = 0;
    int height_ = 0;
    AlphabetRef alphabet_;
    std::size_t count_ = 0;
    std::size_t cells_ = 0;
    bool binary_ = false;
    std::size_t words_per_state_ = 0;
    std::vector<std::uint64_t> bits_;  // binary path
    std::vector<std::uint8_t> flat_;   // byte path
};

struct ExtendedRunResult {
    Level state;
    int actions_applied = 0;
    std::size_t matched_index = 0;
};

struct GenerationResult {
    std::optional<Level> level;  // set on success
    bool success = false;
    int attempts = 0;
    std::int64_t policy_queries = 0;
    std::int64_t actions_applied = 0;
    double best_fitness_seen = 0.0;
    double wall_clock_seconds = 0.0;
};

// Dataset plus the derived index and per-pair trajectory lookup: everything
// needed to run the nearest-neighbour policy. Immutable after construction.
class PolicyRuntime {
public:
    explicit PolicyRuntime(PolicyDataset dataset);

    const PolicyDataset& dataset() const { return dataset_; }
    const NeighbourIndex& index() const { return index_; }

    NeighbourHit nearest(const Level& state) const { return index_.nearest(state); }

    // Finds the nearest recorded state k in trajectory i, then applies
    // dataset actions k, k+1, ... to `state`:
    //   default: n = max(1, round(|delta_i| / p)), continuing across
    //            trajectory boundaries, clipped at the end of the buffer;
    //   proportional_extension: n = max(1, round(p * |delta_i|)), truncated
    //            at trajectory i's end.
    ExtendedRunResult extended_action_run(const Level& state,
                                          const PolicyConfig& cfg) const;

    // Repeats extended runs from a random level, re-evaluating fitness after
    // each, restarting from a fresh level after max_steps queries and giving
    // up after max_restarts attempts.
    GenerationResult generate_level(const DomainPlugin& domain,
                                    const PolicyConfig& cfg, Rng& rng) const;

private:
    PolicyDataset dataset_;
    NeighbourIndex index_;
    std::vector<std::uint32_t> trajectory_of_;  // pair index -> trajectory
};

}  // namespace pcg

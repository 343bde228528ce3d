#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "pcg/evolution.hpp"
#include "pcg/level.hpp"

namespace pcg {

// One start/end level pair and the edits between them.
struct TrajectoryPair {
    Level start;
    Level end;
    ChangeSet delta;
};

struct StateActionPair {
    Level state;
    Action action;
};

struct TrajectoryBound {
    std::size_t begin = 0;  // index of the trajectory's first pair
    std::size_t end = 0;    // one past its last pair
};

// Ordered (state, action) pairs replayed from start/end level diffs.
// Within one trajectory, applying pair k's action to pair k's state yields
// pair k+1's state; trajectory bounds let the policy execute actions in
// sequence without crossing into a different trajectory.
struct PolicyDataset {
    int width = 0;
    int height = 0;
    AlphabetRef alphabet;
    std::vector<StateActionPair> pairs;
    std::vector<TrajectoryBound> trajectory_bounds;
    std::vector<int> delta_lengths;  // |delta| per trajectory

    std::size_t size() const { return pairs.size(); }
};

// Start levels zipped with end levels by index; surplus start levels are
// paired with the end level nearest under hamming distance (lowest index on
// ties).
std::vector<TrajectoryPair> pair_trajectories(const std::vector<Level>& starts,
                                              const std::vector<Level>& ends);

// Replays every trajectory's delta action by action, recording the state
// before each action. Requires a non-empty set of final levels and a
// uniform level shape.
PolicyDataset build_dataset(const GaRunResult& run);
PolicyDataset build_dataset(const std::vector<Level>& initial_levels,
                            const std::vector<Level>& final_levels);

// Text format, strict and lossless:
//   PCGDATA v1 <width> <height> alphabet=<glyphs>
//   TRAJ <count>
//   <state glyphs> <x> <y> <tile>
// with one TRAJ block per trajectory and `count` pair lines per block.
// Tile ids are positions in the alphabet glyph string.
void save_dataset(const PolicyDataset& dataset, std::ostream& out);
void save_dataset(const PolicyDataset& dataset, const std::filesystem::path& path);
PolicyDataset load_dataset(std::istream& in);
PolicyDataset load_dataset(const std::filesystem::path& path);

}  // namespace pcg

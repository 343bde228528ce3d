#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pcg/evolution.hpp"
#include "pcg/level.hpp"
#include "pcg/rng.hpp"

namespace pcg::maze {

inline constexpr TileId kEmpty = 0;
inline constexpr TileId kWall = 1;

// {'.' empty, '#' wall}, shared across all maze levels.
AlphabetRef alphabet();

struct MazeConfig {
    int size = 10;        // tiles per side, square levels
    int wall_count = 15;  // for_size fixes this at round(0.15 * size^2)

    static MazeConfig for_size(int size);
    void validate() const;
};

// Places wall_count walls on distinct cells, never on the start (0,0) or
// goal (size-1, size-1) corners.
Level random_maze(const MazeConfig& cfg, Rng& rng);

// BFS over 4-connected empty cells from the top-left to the bottom-right
// corner. Returns the number of cells on an optimal path, endpoints
// included, or nullopt when the goal is unreachable.
std::optional<int> shortest_path(const Level& level);

// Optimal path as (x, y) cells, for rendering.
std::optional<std::vector<std::pair<int, int>>> shortest_path_cells(const Level& level);

// How the wall-spread ratio terms enter the fitness sum. AsWritten rewards
// walls concentrated in the left/top halves; Balanced substitutes
// 1 - |ratio - 0.5| * 2 to reward an even spread instead.
enum class RatioMode { AsWritten, Balanced };

struct MazeFitnessBreakdown {
    int finishable = 0;      // 1 when a path exists
    double ratio_x = 0.0;    // walls in the left half / total walls
    double ratio_y = 0.0;    // walls in the top half / total walls
    int path_length = 0;     // optimal path cells, 0 when unsolvable
    double total = 0.0;
};

// 0.7 * finishable + 0.2 * ratio_x + 0.2 * ratio_y + 0.0001 * path_length.
// Levels without walls fall back to ratio 0.5. Left/top halves are
// x < width/2 and y < height/2 (integer division); the middle column and
// row of odd-sized mazes count as right/bottom.
MazeFitnessBreakdown maze_fitness(const Level& level,
                                  RatioMode mode = RatioMode::AsWritten);

// GA plugin. The gene is the fixed-length list of wall coordinates.
class MazePlugin final : public DomainPlugin {
public:
    explicit MazePlugin(MazeConfig cfg, RatioMode mode = RatioMode::AsWritten);

    std::string name() const override { return "maze"; }
    AlphabetRef alphabet() const override;
    Level random_level(Rng& rng) const override;
    double fitness(const Level& level) const override;
    Gene gene_encode(const Level& level) const override;
    Level gene_decode(const Gene& gene) const override;
    GeneUnit mutate_unit(const Gene& gene, std::size_t position,
                         Rng& rng) const override;
    // Crossover of two coordinate lists can place two walls on one cell;
    // duplicates are re-drawn so genes always decode to wall_count walls.
    void canonicalize(Gene& gene, Rng& rng) const override;

    const MazeConfig& config() const { return cfg_; }

    static GeneUnit pack_cell(int x, int y) {
        return (static_cast<GeneUnit>(static_cast<std::uint32_t>(y)) << 32) |
               static_cast<std::uint32_t>(x);
    }
    static std::pair<int, int> unpack_cell(GeneUnit unit) {
        return {static_cast<int>(unit & 0xffffffffu),
                static_cast<int>(unit >> 32)};
    }

private:
    MazeConfig cfg_;
    RatioMode mode_;
};

}  // namespace pcg::maze

#pragma once

#include "pcg/evolution.hpp"
#include "pcg/level.hpp"
#include "pcg/rng.hpp"

namespace pcg::platformer {

inline constexpr TileId kAir = 0;
inline constexpr TileId kSolid = 1;
inline constexpr TileId kEnemy = 2;
inline constexpr TileId kCoin = 3;
inline constexpr TileId kPowerUp = 4;

// {'-' air, 'X' solid, 'E' enemy, 'o' coin, 'P' power-up}.
AlphabetRef alphabet();

inline constexpr int kWidth = 101;
inline constexpr int kHeight = 16;

// Scripted-agent movement constants.
inline constexpr int kMaxStepUp = 4;        // rows the agent can climb per column
inline constexpr int kMaxGapColumns = 3;    // consecutive floorless columns it can jump
inline constexpr int kTickBudgetPerColumn = 10;

struct PlatformerConfig {
    int width = kWidth;
    int height = kHeight;
    double air_bias = 0.80;  // probability of an air tile per random cell

    void validate() const;
};

enum class WinState { Timeout, Loss, Win };

struct SimOutcome {
    WinState win_state = WinState::Loss;
    double completion = 0.0;       // columns_traversed / width
    int power_up_collected = 0;
    int columns_traversed = 0;
};

struct PlatformerFitnessBreakdown {
    double win_value = 0.0;  // timeout 0.1, loss 0.4, win 1.0
    double completion = 0.0;
    int mario_state = 0;     // 1 when a power-up was collected
    double total = 0.0;
};

// Each cell is air with probability air_bias, otherwise uniform over the
// four remaining types. The bottom row of the first two columns is forced
// solid so the agent's spawn is well-defined.
Level random_platformer_level(const PlatformerConfig& cfg, Rng& rng);

// Deterministic column-by-column traversal:
//   - spawns standing on the topmost standable solid of column 0 (a solid
//     cell with a non-solid cell above it); no spawn means an immediate loss;
//   - per column it lands on the topmost standable solid whose standing
//     cell is at most kMaxStepUp rows above the current one (descent is
//     unlimited), preferring the highest reachable platform;
//   - columns without a reachable landing are cleared at the current height
//     when the body cell is free, up to kMaxGapColumns in a row; a solid
//     body cell (a wall) or a fourth floorless column is a loss;
//   - entering a cell occupied by an enemy at standing height is a loss;
//   - a power-up in any standing cell or the cell above it is collected;
//   - surviving all columns is a win; a tick budget of
//     kTickBudgetPerColumn * width guards against non-advancing states.
// The outcome is a pure function of the level.
SimOutcome simulate_agent(const Level& level);

// win_value + 2 * completion + 0.5 * mario_state.
PlatformerFitnessBreakdown platformer_fitness(const Level& level);

// GA plugin. The gene is the sequence of packed columns; crossover cuts at
// column boundaries so vertical structures survive recombination.
class PlatformerPlugin final : public DomainPlugin {
public:
    explicit PlatformerPlugin(PlatformerConfig cfg = {});

    std::string name() const override { return "platformer"; }
    AlphabetRef alphabet() const override;
    Level random_level(Rng& rng) const override;
    double fitness(const Level& level) const override;
    Gene gene_encode(const Level& level) const override;
    Level gene_decode(const Gene& gene) const override;
    GeneUnit mutate_unit(const Gene& gene, std::size_t position,
                         Rng& rng) const override;

    const PlatformerConfig& config() const { return cfg_; }

private:
    GeneUnit sample_column(int column, Rng& rng) const;

    PlatformerConfig cfg_;
};

}  // namespace pcg::platformer

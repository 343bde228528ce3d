#include "pcg/platformer.hpp"

namespace pcg::platformer {

AlphabetRef alphabet() {
    static const AlphabetRef instance = std::make_shared<TileAlphabet>(
        std::vector<TileType>{{kAir, '-'},
                              {kSolid, 'X'},
                              {kEnemy, 'E'},
                              {kCoin, 'o'},
                              {kPowerUp, 'P'}});
    return instance;
}

void PlatformerConfig::validate() const {
    if (width < 2 || height < 2) {
        throw ConfigError("platformer levels must be at least 2x2");
    }
    if (height > 16) {
        throw ConfigError("platformer height is limited to 16 rows");
    }
    if (!(air_bias > 0.0) || air_bias > 1.0) {
        throw ConfigError("air_bias must be in (0, 1]");
    }
}

namespace {

void require_platformer_level(const Level& level) {
    if (!(level.alphabet() == *alphabet())) {
        throw ConfigError("level does not use the platformer alphabet");
    }
}

TileId sample_tile(double air_bias, Rng& rng) {
    if (rng.next_double() < air_bias) {
        return kAir;
    }
    return static_cast<TileId>(1 + rng.next_below(4));
}

}  // namespace

GeneUnit PlatformerPlugin::sample_column(int column, Rng& rng) const {
    GeneUnit unit = 0;
    for (int y = 0; y < cfg_.height; ++y) {
        const TileId tile = sample_tile(cfg_.air_bias, rng);
        unit |= static_cast<GeneUnit>(tile) << (4 * y);
    }
    if (column < 2) {
        // spawn platform: force the bottom cell solid
        const int y = cfg_.height - 1;
        unit &= ~(GeneUnit{0xf} << (4 * y));
        unit |= static_cast<GeneUnit>(kSolid) << (4 * y);
    }
    return unit;
}

Level random_platformer_level(const PlatformerConfig& cfg, Rng& rng) {
    cfg.validate();
    PlatformerPlugin plugin(cfg);
    return plugin.random_level(rng);
}

SimOutcome simulate_agent(const Level& level) {
    require_platformer_level(level);
    const int w = level.width();
    const int h = level.height();
    const auto solid = [&](int x, int y) { return level.at(x, y) == kSolid; };

    SimOutcome out;
    int standing = -1;  // row of the agent's body cell
    int gap_run = 0;
    int ticks = 0;
    const int budget = kTickBudgetPerColumn * w;
    bool powered = false;

    for (int c = 0; c < w; ++c) {
        if (++ticks > budget) {
            out.win_state = WinState::Timeout;
            out.columns_traversed = c;
            out.completion = static_cast<double>(c) / w;
            out.power_up_collected = powered ? 1 : 0;
            return out;
        }

        // Topmost standable solid reachable from the current height.
        // Standable solids above jump reach are skipped, not climbed.
        int landing = -1;
        for (int y = 1; y < h; ++y) {
            if (!solid(c, y) || solid(c, y - 1)) {
                continue;
            }
            if (c == 0 || y - 1 >= standing - kMaxStepUp) {
                landing = y - 1;
                break;
            }
        }

        bool survived = false;
        if (landing >= 0) {
            standing = landing;
            gap_run = 0;
            survived = true;
        } else if (c > 0 && !solid(c, standing)) {
            // No landing here; jump across if the body cell is free.
            ++gap_run;
            survived = gap_run <= kMaxGapColumns;
        }
        if (survived && level.at(c, standing) == kEnemy) {
            survived = false;
        }
        if (!survived) {
            out.win_state = WinState::Loss;
            out.columns_traversed = c;
            out.completion = static_cast<double>(c) / w;
            out.power_up_collected = powered ? 1 : 0;
            return out;
        }
        if (level.at(c, standing) == kPowerUp ||
            (standing > 0 && level.at(c, standing - 1) == kPowerUp)) {
            powered = true;
        }
    }

    out.win_state = WinState::Win;
    out.columns_traversed = w;
    out.completion = 1.0;
    out.power_up_collected = powered ? 1 : 0;
    return out;
}

PlatformerFitnessBreakdown platformer_fitness(const Level& level) {
    const SimOutcome sim = simulate_agent(level);
    PlatformerFitnessBreakdown out;
    switch (sim.win_state) {
        case WinState::Timeout: out.win_value = 0.1; break;
        case WinState::Loss: out.win_value = 0.4; break;
        case WinState::Win: out.win_value = 1.0; break;
    }
    out.completion = sim.completion;
    out.mario_state = sim.power_up_collected;
    out.total = out.win_value + 2.0 * out.completion + 0.5 * out.mario_state;
    return out;
}

PlatformerPlugin::PlatformerPlugin(PlatformerConfig cfg) : cfg_(cfg) {
    cfg_.validate();
}

AlphabetRef PlatformerPlugin::alphabet() const { return platformer::alphabet(); }

Level PlatformerPlugin::random_level(Rng& rng) const {
    Gene gene;
    gene.reserve(static_cast<std::size_t>(cfg_.width));
    for (int c = 0; c < cfg_.width; ++c) {
        gene.push_back(sample_column(c, rng));
    }
    return gene_decode(gene);
}

double PlatformerPlugin::fitness(const Level& level) const {
    return platformer_fitness(level).total;
}

Gene PlatformerPlugin::gene_encode(const Level& level) const {
    require_platformer_level(level);
    if (level.width() != cfg_.width || level.height() != cfg_.height) {
        throw ShapeError("level size does not match the platformer config");
    }
    Gene gene;
    gene.reserve(static_cast<std::size_t>(cfg_.width));
    for (int x = 0; x < cfg_.width; ++x) {
        GeneUnit unit = 0;
        for (int y = 0; y < cfg_.height; ++y) {
            unit |= static_cast<GeneUnit>(level.at(x, y)) << (4 * y);
        }
        gene.push_back(unit);
    }
    return gene;
}

Level PlatformerPlugin::gene_decode(const Gene& gene) const {
    if (gene.size() != static_cast<std::size_t>(cfg_.width)) {
        throw ConfigError("gene length " + std::to_string(gene.size()) +
                          " does not match width " + std::to_string(cfg_.width));
    }
    std::vector<TileId> cells(
        static_cast<std::size_t>(cfg_.width) * cfg_.height, kAir);
    for (int x = 0; x < cfg_.width; ++x) {
        for (int y = 0; y < cfg_.height; ++y) {
            const auto tile =
                static_cast<TileId>((gene[static_cast<std::size_t>(x)] >> (4 * y)) & 0xf);
            if (tile > kPowerUp) {
                throw ConfigError("gene column holds an unknown tile id");
            }
            cells[static_cast<std::size_t>(y) * cfg_.width + x] = tile;
        }
    }
    return Level(cfg_.width, cfg_.height, std::move(cells), platformer::alphabet());
}

GeneUnit PlatformerPlugin::mutate_unit(const Gene& gene, std::size_t position,
                                       Rng& rng) const {
    (void)gene;
    return sample_column(static_cast<int>(position), rng);
}

}  // namespace pcg::platformer

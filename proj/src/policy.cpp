#include "pcg/policy.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <limits>

namespace pcg {

void PolicyConfig::validate() const {
    if (!(p > 0.0) || p > 1.0) {
        throw ConfigError("p must be in (0, 1]");
    }
    if (max_steps < 1) {
        throw ConfigError("max_steps must be at least 1");
    }
    if (max_restarts < 1) {
        throw ConfigError("max_restarts must be at least 1");
    }
}

template <typename GetState>
void NeighbourIndex::build(std::size_t count, GetState&& state_at) {
    if (count == 0) {
        throw ConfigError("neighbour index requires at least one state");
    }
    const Level& first = state_at(0);
    width_ = first.width();
    height_ = first.height();
    alphabet_ = first.alphabet_ptr();
    count_ = count;
    cells_ = first.cell_count();

    TileId max_id = 0;
    for (const TileType& t : alphabet_->tiles()) {
        max_id = std::max(max_id, t.id);
    }
    binary_ = alphabet_->size() <= 2 && max_id <= 1;

    if (binary_) {
        words_per_state_ = (cells_ + 63) / 64;
        bits_.assign(count_ * words_per_state_, 0);
    } else {
        flat_.resize(count_ * cells_);
    }
    for (std::size_t i = 0; i < count_; ++i) {
        const Level& state = state_at(i);
        if (state.width() != width_ || state.height() != height_) {
            throw ShapeError("index states must share one shape");
        }
        const auto& cells = state.cells();
        if (binary_) {
            std::uint64_t* row = bits_.data() + i * words_per_state_;
            for (std::size_t c = 0; c < cells_; ++c) {
                row[c / 64] |= static_cast<std::uint64_t>(cells[c] & 1) << (c % 64);
            }
        } else {
            std::copy(cells.begin(), cells.end(), flat_.begin() + i * cells_);
        }
    }
}

NeighbourIndex::NeighbourIndex(const std::vector<Level>& states) {
    build(states.size(), [&](std::size_t i) -> const Level& { return states[i]; });
}

NeighbourIndex::NeighbourIndex(const PolicyDataset& dataset) {
    build(dataset.pairs.size(),
          [&](std::size_t i) -> const Level& { return dataset.pairs[i].state; });
}

NeighbourHit NeighbourIndex::nearest(const Level& query) const {
    if (query.width() != width_ || query.height() != height_) {
        throw ShapeError("query shape does not match the index");
    }
    std::size_t best_index = 0;
    int best = std::numeric_limits<int>::max();

    if (binary_) {
        std::vector<std::uint64_t> packed(words_per_state_, 0);
        const auto& cells = query.cells();
        for (std::size_t c = 0; c < cells_; ++c) {
            packed[c / 64] |= static_cast<std::uint64_t>(cells[c] & 1) << (c % 64);
        }
        for (std::size_t i = 0; i < count_; ++i) {
            const std::uint64_t* row = bits_.data() + i * words_per_state_;
            int d = 0;
            for (std::size_t wd = 0; wd < words_per_state_; ++wd) {
                d += std::popcount(row[wd] ^ packed[wd]);
            }
            if (d < best) {
                best = d;
                best_index = i;
                if (best == 0) {
                    break;
                }
            }
        }
        return NeighbourHit{best_index, best};
    }

    const std::uint8_t* q = query.cells().data();
    for (std::size_t i = 0; i < count_; ++i) {
        const std::uint8_t* row = flat_.data() + i * cells_;
        int d = 0;
        std::size_t c = 0;
        // Abort the scan in 64-cell chunks when it cannot beat the best.
        while (c < cells_ && d < best) {
            const std::size_t stop = std::min(cells_, c + 64);
            for (; c < stop; ++c) {
                d += (row[c] != q[c]);
            }
        }
        if (d < best) {
            best = d;
            best_index = i;
            if (best == 0) {
                break;
            }
        }
    }
    return NeighbourHit{best_index, best};
}

PolicyRuntime::PolicyRuntime(PolicyDataset dataset)
    : dataset_(std::move(dataset)), index_(dataset_) {
    trajectory_of_.resize(dataset_.pairs.size());
    for (std::size_t t = 0; t < dataset_.trajectory_bounds.size(); ++t) {
        const TrajectoryBound& bound = dataset_.trajectory_bounds[t];
        for (std::size_t i = bound.begin; i < bound.end; ++i) {
            trajectory_of_[i] = static_cast<std::uint32_t>(t);
        }
    }
}

ExtendedRunResult PolicyRuntime::extended_action_run(const Level& state,
                                                     const PolicyConfig& cfg) const {
    cfg.validate();
    const NeighbourHit hit = index_.nearest(state);
    const std::uint32_t traj = trajectory_of_[hit.index];
    const TrajectoryBound& bound = dataset_.trajectory_bounds[traj];
    const auto delta_len = static_cast<double>(dataset_.delta_lengths[traj]);

    const double raw =
        cfg.proportional_extension ? cfg.p * delta_len : delta_len / cfg.p;
    auto n = static_cast<std::size_t>(std::max(1l, std::lround(raw)));
    const std::size_t limit =
        cfg.proportional_extension ? bound.end : dataset_.pairs.size();
    n = std::min(n, limit - hit.index);

    ExtendedRunResult out{state, 0, hit.index};
    for (std::size_t i = hit.index; i < hit.index + n; ++i) {
        out.state = apply_action(out.state, dataset_.pairs[i].action);
        ++out.actions_applied;
    }
    return out;
}

GenerationResult PolicyRuntime::generate_level(const DomainPlugin& domain,
                                               const PolicyConfig& cfg,
                                               Rng& rng) const {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    GenerationResult out;
    out.best_fitness_seen = -std::numeric_limits<double>::infinity();

    for (int attempt = 1; attempt <= cfg.max_restarts; ++attempt) {
        out.attempts = attempt;
        Level state = domain.random_level(rng);
        double fitness = domain.fitness(state);
        out.best_fitness_seen = std::max(out.best_fitness_seen, fitness);
        for (int step = 0; fitness < cfg.fitness_threshold && step < cfg.max_steps;
             ++step) {
            ExtendedRunResult run = extended_action_run(state, cfg);
            state = std::move(run.state);
            ++out.policy_queries;
            out.actions_applied += run.actions_applied;
            fitness = domain.fitness(state);
            out.best_fitness_seen = std::max(out.best_fitness_seen, fitness);
        }
        if (fitness >= cfg.fitness_threshold) {
            out.success = true;
            out.level = std::move(state);
            break;
        }
    }
    out.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace pcg

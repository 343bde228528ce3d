#include "pcg/maze.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pcg::maze {

AlphabetRef alphabet() {
    static const AlphabetRef instance = std::make_shared<TileAlphabet>(
        std::vector<TileType>{{kEmpty, '.'}, {kWall, '#'}});
    return instance;
}

MazeConfig MazeConfig::for_size(int size) {
    MazeConfig cfg;
    cfg.size = size;
    cfg.wall_count = static_cast<int>(std::lround(0.15 * size * size));
    cfg.validate();
    return cfg;
}

void MazeConfig::validate() const {
    if (size < 2) {
        throw ConfigError("maze size must be at least 2");
    }
    if (wall_count < 0 || wall_count > size * size - 2) {
        throw ConfigError("wall_count must leave the start and goal cells empty");
    }
}

namespace {

bool is_corner(int index, int size) {
    return index == 0 || index == size * size - 1;
}

void require_maze_level(const Level& level) {
    if (!(level.alphabet() == *alphabet())) {
        throw ConfigError("level does not use the maze alphabet");
    }
}

}  // namespace

Level random_maze(const MazeConfig& cfg, Rng& rng) {
    cfg.validate();
    const int n = cfg.size * cfg.size;
    std::vector<int> eligible;
    eligible.reserve(static_cast<std::size_t>(n) - 2);
    for (int i = 0; i < n; ++i) {
        if (!is_corner(i, cfg.size)) {
            eligible.push_back(i);
        }
    }
    std::vector<TileId> cells(static_cast<std::size_t>(n), kEmpty);
    for (int w = 0; w < cfg.wall_count; ++w) {
        const std::size_t j =
            w + static_cast<std::size_t>(rng.next_below(eligible.size() - w));
        std::swap(eligible[w], eligible[j]);
        cells[static_cast<std::size_t>(eligible[w])] = kWall;
    }
    return Level(cfg.size, cfg.size, std::move(cells), alphabet());
}

namespace {

// BFS distances in edges; -1 marks unreached cells.
std::vector<int> bfs_distances(const Level& level) {
    const int w = level.width();
    const int h = level.height();
    std::vector<int> dist(static_cast<std::size_t>(w) * h, -1);
    if (level.at(0, 0) == kWall) {
        return dist;
    }
    std::vector<int> queue;
    queue.reserve(dist.size());
    dist[0] = 0;
    queue.push_back(0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int idx = queue[head];
        const int x = idx % w;
        const int y = idx / w;
        const int d = dist[static_cast<std::size_t>(idx)];
        constexpr int dx[4] = {1, -1, 0, 0};
        constexpr int dy[4] = {0, 0, 1, -1};
        for (int dir = 0; dir < 4; ++dir) {
            const int nx = x + dx[dir];
            const int ny = y + dy[dir];
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) {
                continue;
            }
            const auto nidx = static_cast<std::size_t>(ny) * w + nx;
            if (dist[nidx] >= 0 || level.at(nx, ny) == kWall) {
                continue;
            }
            dist[nidx] = d + 1;
            queue.push_back(static_cast<int>(nidx));
        }
    }
    return dist;
}

}  // namespace

std::optional<int> shortest_path(const Level& level) {
    require_maze_level(level);
    const std::vector<int> dist = bfs_distances(level);
    const int goal = dist.back();
    if (goal < 0) {
        return std::nullopt;
    }
    return goal + 1;  // cells on the path, endpoints included
}

std::optional<std::vector<std::pair<int, int>>> shortest_path_cells(const Level& level) {
    require_maze_level(level);
    const std::vector<int> dist = bfs_distances(level);
    const int w = level.width();
    const int h = level.height();
    if (dist.back() < 0) {
        return std::nullopt;
    }
    std::vector<std::pair<int, int>> path;
    path.reserve(static_cast<std::size_t>(dist.back()) + 1);
    int x = w - 1;
    int y = h - 1;
    path.emplace_back(x, y);
    while (x != 0 || y != 0) {
        const int d = dist[static_cast<std::size_t>(y) * w + x];
        constexpr int dx[4] = {1, -1, 0, 0};
        constexpr int dy[4] = {0, 0, 1, -1};
        for (int dir = 0; dir < 4; ++dir) {
            const int px = x + dx[dir];
            const int py = y + dy[dir];
            if (px < 0 || px >= w || py < 0 || py >= h) {
                continue;
            }
            if (dist[static_cast<std::size_t>(py) * w + px] == d - 1) {
                x = px;
                y = py;
                break;
            }
        }
        path.emplace_back(x, y);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

MazeFitnessBreakdown maze_fitness(const Level& level, RatioMode mode) {
    require_maze_level(level);
    const int w = level.width();
    const int h = level.height();
    int walls = 0;
    int left = 0;
    int top = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (level.at(x, y) != kWall) {
                continue;
            }
            ++walls;
            left += (x < w / 2);
            top += (y < h / 2);
        }
    }

    MazeFitnessBreakdown out;
    if (walls == 0) {
        out.ratio_x = 0.5;
        out.ratio_y = 0.5;
    } else {
        out.ratio_x = static_cast<double>(left) / walls;
        out.ratio_y = static_cast<double>(top) / walls;
    }
    if (mode == RatioMode::Balanced) {
        out.ratio_x = 1.0 - std::abs(out.ratio_x - 0.5) * 2.0;
        out.ratio_y = 1.0 - std::abs(out.ratio_y - 0.5) * 2.0;
    }
    const std::optional<int> path = shortest_path(level);
    out.finishable = path.has_value() ? 1 : 0;
    out.path_length = path.value_or(0);
    out.total = 0.7 * out.finishable + 0.2 * out.ratio_x + 0.2 * out.ratio_y +
                0.0001 * out.path_length;
    return out;
}

MazePlugin::MazePlugin(MazeConfig cfg, RatioMode mode)
    : cfg_(cfg), mode_(mode) {
    cfg_.validate();
}

AlphabetRef MazePlugin::alphabet() const { return maze::alphabet(); }

Level MazePlugin::random_level(Rng& rng) const { return random_maze(cfg_, rng); }

double MazePlugin::fitness(const Level& level) const {
    return maze_fitness(level, mode_).total;
}

Gene MazePlugin::gene_encode(const Level& level) const {
    require_maze_level(level);
    if (level.width() != cfg_.size || level.height() != cfg_.size) {
        throw ShapeError("level size does not match the maze config");
    }
    Gene gene;
    gene.reserve(static_cast<std::size_t>(cfg_.wall_count));
    for (int y = 0; y < level.height(); ++y) {
        for (int x = 0; x < level.width(); ++x) {
            if (level.at(x, y) == kWall) {
                gene.push_back(pack_cell(x, y));
            }
        }
    }
    if (gene.size() != static_cast<std::size_t>(cfg_.wall_count)) {
        throw ConfigError("level wall count " + std::to_string(gene.size()) +
                          " does not match config " +
                          std::to_string(cfg_.wall_count));
    }
    return gene;
}

Level MazePlugin::gene_decode(const Gene& gene) const {
    std::vector<TileId> cells(
        static_cast<std::size_t>(cfg_.size) * cfg_.size, kEmpty);
    for (GeneUnit unit : gene) {
        const auto [x, y] = unpack_cell(unit);
        if (x < 0 || x >= cfg_.size || y < 0 || y >= cfg_.size) {
            throw ConfigError("gene wall coordinate out of bounds");
        }
        cells[static_cast<std::size_t>(y) * cfg_.size + x] = kWall;
    }
    return Level(cfg_.size, cfg_.size, std::move(cells), maze::alphabet());
}

void MazePlugin::canonicalize(Gene& gene, Rng& rng) const {
    const int n = cfg_.size * cfg_.size;
    std::vector<std::uint8_t> occupied(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < gene.size(); ++i) {
        const auto [x, y] = unpack_cell(gene[i]);
        const auto idx = static_cast<std::size_t>(y) * cfg_.size + x;
        if (!occupied[idx]) {
            occupied[idx] = 1;
            continue;
        }
        // duplicate: move this wall to a free non-corner cell
        int free_cells = 0;
        for (int c = 0; c < n; ++c) {
            if (!occupied[static_cast<std::size_t>(c)] && !is_corner(c, cfg_.size)) {
                ++free_cells;
            }
        }
        if (free_cells == 0) {
            continue;
        }
        auto pick = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(free_cells)));
        for (int c = 0; c < n; ++c) {
            if (occupied[static_cast<std::size_t>(c)] || is_corner(c, cfg_.size)) {
                continue;
            }
            if (pick-- == 0) {
                gene[i] = pack_cell(c % cfg_.size, c / cfg_.size);
                occupied[static_cast<std::size_t>(c)] = 1;
                break;
            }
        }
    }
}

GeneUnit MazePlugin::mutate_unit(const Gene& gene, std::size_t position,
                                 Rng& rng) const {
    const int n = cfg_.size * cfg_.size;
    std::vector<std::uint8_t> occupied(static_cast<std::size_t>(n), 0);
    for (GeneUnit unit : gene) {
        const auto [x, y] = unpack_cell(unit);
        occupied[static_cast<std::size_t>(y) * cfg_.size + x] = 1;
    }
    int free_cells = 0;
    for (int i = 0; i < n; ++i) {
        if (!occupied[static_cast<std::size_t>(i)] && !is_corner(i, cfg_.size)) {
            ++free_cells;
        }
    }
    if (free_cells == 0) {
        return gene[position];  // saturated board, nothing to move to
    }
    auto pick = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(free_cells)));
    for (int i = 0; i < n; ++i) {
        if (occupied[static_cast<std::size_t>(i)] || is_corner(i, cfg_.size)) {
            continue;
        }
        if (pick-- == 0) {
            return pack_cell(i % cfg_.size, i / cfg_.size);
        }
    }
    return gene[position];  // unreachable
}

}  // namespace pcg::maze

#include "pcg/distill.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace pcg {

std::vector<TrajectoryPair> pair_trajectories(const std::vector<Level>& starts,
                                              const std::vector<Level>& ends) {
    if (ends.empty()) {
        throw ConfigError("pairing requires at least one final level");
    }
    // Every start level is paired with the strongest final level (final
    // levels arrive in ascending acceptability order, so that is the last
    // one). The policy replays the dataset as one sequential buffer; many
    // trajectories converging on one target are what let it sweep the
    // residue of an unseen random level away. One-to-one pairings leave
    // each query stranded on a single trajectory whose edits only cover
    // the cells where that trajectory's own start and end differ, so a
    // fresh random level keeps enough stray tiles to sit just under the
    // acceptance threshold, and a mix of distinct targets overlays their
    // tiles into unplayable hybrids.
    std::vector<TrajectoryPair> out;
    out.reserve(starts.size());
    const Level& target = ends.back();
    for (const Level& start : starts) {
        out.push_back(TrajectoryPair{start, target, compute_diffs(start, target)});
    }
    return out;
}

PolicyDataset build_dataset(const std::vector<Level>& initial_levels,
                            const std::vector<Level>& final_levels) {
    if (final_levels.empty()) {
        throw ConfigError("build_dataset requires a non-empty set of final levels");
    }
    if (initial_levels.empty()) {
        throw ConfigError("build_dataset requires at least one initial level");
    }
    const Level& reference = initial_levels.front();
    for (const Level& level : initial_levels) {
        if (!level.same_shape(reference)) {
            throw ShapeError("initial levels must share one shape");
        }
    }
    for (const Level& level : final_levels) {
        if (!level.same_shape(reference)) {
            throw ShapeError("final levels must share the initial levels' shape");
        }
    }

    const std::vector<TrajectoryPair> trajectories =
        pair_trajectories(initial_levels, final_levels);

    PolicyDataset dataset;
    dataset.width = reference.width();
    dataset.height = reference.height();
    dataset.alphabet = reference.alphabet_ptr();
    std::size_t total = 0;
    for (const TrajectoryPair& t : trajectories) {
        total += t.delta.size();
    }
    dataset.pairs.reserve(total);
    dataset.trajectory_bounds.reserve(trajectories.size());
    dataset.delta_lengths.reserve(trajectories.size());

    for (const TrajectoryPair& t : trajectories) {
        TrajectoryBound bound{dataset.pairs.size(), dataset.pairs.size()};
        Level state = t.start;
        for (const Action& action : t.delta.actions) {
            Level next = apply_action(state, action);
            dataset.pairs.push_back(StateActionPair{std::move(state), action});
            state = std::move(next);
        }
        bound.end = dataset.pairs.size();
        dataset.trajectory_bounds.push_back(bound);
        dataset.delta_lengths.push_back(static_cast<int>(t.delta.size()));
    }
    return dataset;
}

PolicyDataset build_dataset(const GaRunResult& run) {
    return build_dataset(run.initial_levels, run.final_levels);
}

namespace {

void render_state(const Level& state, std::string& out) {
    const TileAlphabet& alphabet = state.alphabet();
    for (TileId id : state.cells()) {
        out += alphabet.glyph_of(id);
    }
}

}  // namespace

void save_dataset(const PolicyDataset& dataset, std::ostream& out) {
    if (!dataset.alphabet) {
        throw ConfigError("dataset has no alphabet");
    }
    const auto& tiles = dataset.alphabet->tiles();
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        if (tiles[i].id != i) {
            throw ConfigError("dataset serialization requires positional tile ids");
        }
    }
    std::string buf;
    buf.reserve(64);
    buf += "PCGDATA v1 ";
    buf += std::to_string(dataset.width);
    buf += ' ';
    buf += std::to_string(dataset.height);
    buf += " alphabet=";
    buf += dataset.alphabet->glyphs();
    buf += '\n';
    out << buf;
    for (std::size_t t = 0; t < dataset.trajectory_bounds.size(); ++t) {
        const TrajectoryBound& bound = dataset.trajectory_bounds[t];
        out << "TRAJ " << dataset.delta_lengths[t] << '\n';
        for (std::size_t i = bound.begin; i < bound.end; ++i) {
            const StateActionPair& pair = dataset.pairs[i];
            buf.clear();
            render_state(pair.state, buf);
            buf += ' ';
            buf += std::to_string(pair.action.x);
            buf += ' ';
            buf += std::to_string(pair.action.y);
            buf += ' ';
            buf += std::to_string(pair.action.tile);
            buf += '\n';
            out << buf;
        }
    }
    if (!out) {
        throw ParseError("dataset write failed");
    }
}

void save_dataset(const PolicyDataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write dataset file: " + path.string());
    }
    save_dataset(dataset, out);
}

namespace {

int parse_int(std::string_view token, const char* what, int line_no) {
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("dataset line " + std::to_string(line_no) + ": bad " +
                         what + " '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

PolicyDataset load_dataset(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("dataset: empty input");
    }
    int line_no = 1;
    constexpr std::string_view kMagic = "PCGDATA v1 ";
    if (line.rfind(kMagic, 0) != 0) {
        throw ParseError("dataset line 1: bad header magic");
    }
    std::string_view rest = std::string_view(line).substr(kMagic.size());
    const std::size_t sp1 = rest.find(' ');
    const std::size_t sp2 = rest.find(" alphabet=");
    if (sp1 == std::string_view::npos || sp2 == std::string_view::npos || sp2 < sp1) {
        throw ParseError("dataset line 1: expected '<w> <h> alphabet=<glyphs>'");
    }
    const int width = parse_int(rest.substr(0, sp1), "width", 1);
    const int height = parse_int(rest.substr(sp1 + 1, sp2 - sp1 - 1), "height", 1);
    const std::string_view glyphs = rest.substr(sp2 + 10);
    if (width < 1 || height < 1 || glyphs.empty()) {
        throw ParseError("dataset line 1: bad shape or alphabet");
    }
    std::vector<TileType> tiles;
    tiles.reserve(glyphs.size());
    for (std::size_t i = 0; i < glyphs.size(); ++i) {
        tiles.push_back(TileType{static_cast<TileId>(i), glyphs[i]});
    }
    PolicyDataset dataset;
    dataset.width = width;
    dataset.height = height;
    dataset.alphabet = std::make_shared<TileAlphabet>(std::move(tiles));

    const auto cells = static_cast<std::size_t>(width) * height;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.rfind("TRAJ ", 0) != 0) {
            throw ParseError("dataset line " + std::to_string(line_no) +
                             ": expected 'TRAJ <count>'");
        }
        const int count = parse_int(std::string_view(line).substr(5), "count", line_no);
        if (count < 0) {
            throw ParseError("dataset line " + std::to_string(line_no) +
                             ": negative trajectory count");
        }
        TrajectoryBound bound{dataset.pairs.size(), dataset.pairs.size()};
        for (int i = 0; i < count; ++i) {
            if (!std::getline(in, line)) {
                throw ParseError("dataset: truncated trajectory block");
            }
            ++line_no;
            if (line.size() < cells + 6 || line[cells] != ' ') {
                throw ParseError("dataset line " + std::to_string(line_no) +
                                 ": malformed pair record");
            }
            std::vector<TileId> state_cells;
            state_cells.reserve(cells);
            for (std::size_t c = 0; c < cells; ++c) {
                const auto id = dataset.alphabet->id_of(line[c]);
                if (!id) {
                    throw ParseError("dataset line " + std::to_string(line_no) +
                                     ": unknown state glyph '" +
                                     std::string(1, line[c]) + "'");
                }
                state_cells.push_back(*id);
            }
            std::string_view tail = std::string_view(line).substr(cells + 1);
            int fields[3] = {0, 0, 0};
            for (int f = 0; f < 3; ++f) {
                const std::size_t sp = tail.find(' ');
                const bool last = (f == 2);
                if (last != (sp == std::string_view::npos)) {
                    throw ParseError("dataset line " + std::to_string(line_no) +
                                     ": expected '<x> <y> <tile>'");
                }
                fields[f] = parse_int(tail.substr(0, sp), "action field", line_no);
                if (!last) {
                    tail = tail.substr(sp + 1);
                }
            }
            if (fields[0] < 0 || fields[0] >= width || fields[1] < 0 ||
                fields[1] >= height || fields[2] < 0 ||
                static_cast<std::size_t>(fields[2]) >= glyphs.size()) {
                throw ParseError("dataset line " + std::to_string(line_no) +
                                 ": action out of range");
            }
            dataset.pairs.push_back(StateActionPair{
                Level(width, height, std::move(state_cells), dataset.alphabet),
                Action{fields[0], fields[1], static_cast<TileId>(fields[2])}});
        }
        bound.end = dataset.pairs.size();
        dataset.trajectory_bounds.push_back(bound);
        dataset.delta_lengths.push_back(count);
    }
    return dataset;
}

PolicyDataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open dataset file: " + path.string());
    }
    return load_dataset(in);
}

}  // namespace pcg

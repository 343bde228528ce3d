#include "pcg/level.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace pcg {

TileAlphabet::TileAlphabet(std::vector<TileType> tiles) : tiles_(std::move(tiles)) {
    if (tiles_.empty()) {
        throw ConfigError("tile alphabet must not be empty");
    }
    id_by_glyph_.fill(-1);
    TileId max_id = 0;
    for (const TileType& t : tiles_) {
        max_id = std::max(max_id, t.id);
    }
    known_.assign(static_cast<std::size_t>(max_id) + 1, 0);
    glyph_by_id_.assign(static_cast<std::size_t>(max_id) + 1, '?');
    for (const TileType& t : tiles_) {
        const auto g = static_cast<unsigned char>(t.glyph);
        if (t.glyph < 0x20 || t.glyph > 0x7e) {
            throw ConfigError("tile glyph must be printable ASCII");
        }
        if (known_[t.id]) {
            throw ConfigError("duplicate tile id " + std::to_string(t.id));
        }
        if (id_by_glyph_[g] >= 0) {
            throw ConfigError(std::string("duplicate tile glyph '") + t.glyph + "'");
        }
        known_[t.id] = 1;
        glyph_by_id_[t.id] = t.glyph;
        id_by_glyph_[g] = t.id;
    }
}

char TileAlphabet::glyph_of(TileId id) const {
    if (!contains(id)) {
        throw ConfigError("tile id " + std::to_string(id) + " not in alphabet");
    }
    return glyph_by_id_[id];
}

std::optional<TileId> TileAlphabet::id_of(char glyph) const {
    const std::int16_t id = id_by_glyph_[static_cast<unsigned char>(glyph)];
    if (id < 0) {
        return std::nullopt;
    }
    return static_cast<TileId>(id);
}

std::string TileAlphabet::glyphs() const {
    std::string out;
    out.reserve(tiles_.size());
    for (const TileType& t : tiles_) {
        out.push_back(t.glyph);
    }
    return out;
}

Level::Level(int width, int height, std::vector<TileId> cells, AlphabetRef alphabet)
    : width_(width), height_(height), cells_(std::move(cells)),
      alphabet_(std::move(alphabet)) {
    if (!alphabet_) {
        throw ConfigError("level requires an alphabet");
    }
    if (width_ < 1 || height_ < 1) {
        throw ShapeError("level dimensions must be at least 1x1, got " +
                         std::to_string(width_) + "x" + std::to_string(height_));
    }
    if (cells_.size() != static_cast<std::size_t>(width_) * height_) {
        throw ShapeError("cell count " + std::to_string(cells_.size()) +
                         " does not match " + std::to_string(width_) + "x" +
                         std::to_string(height_));
    }
    for (TileId id : cells_) {
        if (!alphabet_->contains(id)) {
            throw ConfigError("cell tile id " + std::to_string(id) +
                              " not in alphabet");
        }
    }
}

namespace {

void require_same_shape(const Level& a, const Level& b, const char* op) {
    if (!a.same_shape(b)) {
        std::ostringstream msg;
        msg << op << ": shape mismatch " << a.width() << "x" << a.height()
            << " vs " << b.width() << "x" << b.height();
        throw ShapeError(msg.str());
    }
}

void require_valid_action(const Level& level, const Action& a, std::size_t index) {
    if (!level.in_bounds(a.x, a.y)) {
        std::ostringstream msg;
        msg << "action " << index << ": coordinates (" << a.x << ", " << a.y
            << ") out of bounds for " << level.width() << "x" << level.height();
        throw ActionError(msg.str(), index);
    }
    if (!level.alphabet().contains(a.tile)) {
        std::ostringstream msg;
        msg << "action " << index << ": tile id " << static_cast<int>(a.tile)
            << " not in alphabet";
        throw ActionError(msg.str(), index);
    }
}

}  // namespace

ChangeSet compute_diffs(const Level& start, const Level& end) {
    require_same_shape(start, end, "compute_diffs");
    if (!(start.alphabet() == end.alphabet())) {
        throw ShapeError("compute_diffs: tile alphabets differ");
    }
    ChangeSet out;
    for (int y = 0; y < start.height(); ++y) {
        for (int x = 0; x < start.width(); ++x) {
            const TileId target = end.at(x, y);
            if (start.at(x, y) != target) {
                out.actions.push_back(Action{x, y, target});
            }
        }
    }
    return out;
}

Level apply_action(const Level& level, const Action& a) {
    require_valid_action(level, a, 0);
    std::vector<TileId> cells = level.cells_;
    cells[static_cast<std::size_t>(a.y) * level.width_ + a.x] = a.tile;
    return Level(Level::Unchecked{}, level.width_, level.height_,
                 std::move(cells), level.alphabet_);
}

Level apply_changes(const Level& level, const ChangeSet& c) {
    std::vector<TileId> cells = level.cells_;
    for (std::size_t i = 0; i < c.actions.size(); ++i) {
        const Action& a = c.actions[i];
        require_valid_action(level, a, i);
        cells[static_cast<std::size_t>(a.y) * level.width_ + a.x] = a.tile;
    }
    return Level(Level::Unchecked{}, level.width_, level.height_,
                 std::move(cells), level.alphabet_);
}

int hamming_distance(const Level& a, const Level& b) {
    require_same_shape(a, b, "hamming_distance");
    const auto& ca = a.cells();
    const auto& cb = b.cells();
    int d = 0;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        d += (ca[i] != cb[i]);
    }
    return d;
}

std::string to_text(const Level& level) {
    const TileAlphabet& alphabet = level.alphabet();
    std::string out;
    out.reserve(level.cell_count() + level.height() + 16);
    out += std::to_string(level.width());
    out += ' ';
    out += std::to_string(level.height());
    out += '\n';
    for (int y = 0; y < level.height(); ++y) {
        for (int x = 0; x < level.width(); ++x) {
            out += alphabet.glyph_of(level.at(x, y));
        }
        out += '\n';
    }
    return out;
}

namespace {

// Returns [line, rest-after-newline]. Throws when no terminating newline.
std::pair<std::string_view, std::string_view> take_line(std::string_view text,
                                                        int line_no) {
    const std::size_t nl = text.find('\n');
    if (nl == std::string_view::npos) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": missing newline terminator");
    }
    return {text.substr(0, nl), text.substr(nl + 1)};
}

int parse_dimension(std::string_view token, int line_no) {
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || value < 1) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": bad dimension '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

Level parse_level(std::string_view text, AlphabetRef alphabet) {
    if (!alphabet) {
        throw ConfigError("parse_level requires an alphabet");
    }
    auto [header, rest] = take_line(text, 1);
    const std::size_t space = header.find(' ');
    if (space == std::string_view::npos || header.find(' ', space + 1) != std::string_view::npos) {
        throw ParseError("line 1: expected 'width height'");
    }
    const int width = parse_dimension(header.substr(0, space), 1);
    const int height = parse_dimension(header.substr(space + 1), 1);

    std::vector<TileId> cells;
    cells.reserve(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y) {
        const int line_no = y + 2;
        auto [line, next] = take_line(rest, line_no);
        rest = next;
        if (line.size() != static_cast<std::size_t>(width)) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(width) + " glyphs, got " +
                             std::to_string(line.size()));
        }
        for (char g : line) {
            const auto id = alphabet->id_of(g);
            if (!id) {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": unknown glyph '" + std::string(1, g) + "'");
            }
            cells.push_back(*id);
        }
    }
    if (!rest.empty()) {
        throw ParseError("trailing content after " + std::to_string(height) +
                         " rows");
    }
    return Level(width, height, std::move(cells), std::move(alphabet));
}

Level load_level(const std::filesystem::path& path, AlphabetRef alphabet) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open level file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_level(buf.str(), std::move(alphabet));
}

void save_level(const Level& level, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write level file: " + path.string());
    }
    out << to_text(level);
    if (!out) {
        throw ParseError("write failed: " + path.string());
    }
}

}  // namespace pcg

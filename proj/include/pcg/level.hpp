#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pcg {

using TileId = std::uint8_t;

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid tile edit. `index` is the position within the originating
// sequence (0 for single-action operations).
struct ActionError : std::invalid_argument {
    explicit ActionError(const std::string& what, std::size_t index = 0)
        : std::invalid_argument(what), index(index) {}
    std::size_t index;
};

struct TileType {
    TileId id = 0;
    char glyph = '?';

    friend bool operator==(const TileType&, const TileType&) = default;
};

// Per-domain tile registry. Ids and glyphs are each unique within one
// alphabet; the core never attaches game semantics to them.
class TileAlphabet {
public:
    explicit TileAlphabet(std::vector<TileType> tiles);

    std::size_t size() const { return tiles_.size(); }
    const std::vector<TileType>& tiles() const { return tiles_; }

    bool contains(TileId id) const {
        return id < known_.size() && known_[id] != 0;
    }
    char glyph_of(TileId id) const;
    std::optional<TileId> id_of(char glyph) const;

    // Glyphs in registry order.
    std::string glyphs() const;

    friend bool operator==(const TileAlphabet& a, const TileAlphabet& b) {
        return a.tiles_ == b.tiles_;
    }

private:
    std::vector<TileType> tiles_;
    std::vector<std::uint8_t> known_;           // indexed by id
    std::vector<char> glyph_by_id_;             // indexed by id
    std::array<std::int16_t, 256> id_by_glyph_; // -1 when absent
};

using AlphabetRef = std::shared_ptr<const TileAlphabet>;

struct Action;
struct ChangeSet;

// Rectangular grid of tile ids, row-major. Immutable after construction;
// operations return new levels, so levels can be shared across workers and
// recorded into trajectory buffers safely.
class Level {
public:
    Level(int width, int height, std::vector<TileId> cells, AlphabetRef alphabet);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t cell_count() const { return cells_.size(); }

    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }
    TileId at(int x, int y) const {
        return cells_[static_cast<std::size_t>(y) * width_ + x];
    }

    const std::vector<TileId>& cells() const { return cells_; }
    const TileAlphabet& alphabet() const { return *alphabet_; }
    const AlphabetRef& alphabet_ptr() const { return alphabet_; }

    bool same_shape(const Level& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const Level& a, const Level& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ &&
               a.cells_ == b.cells_ &&
               (a.alphabet_ == b.alphabet_ || *a.alphabet_ == *b.alphabet_);
    }

private:
    struct Unchecked {};
    Level(Unchecked, int width, int height, std::vector<TileId> cells,
          AlphabetRef alphabet)
        : width_(width), height_(height), cells_(std::move(cells)),
          alphabet_(std::move(alphabet)) {}

    friend Level apply_action(const Level&, const Action&);
    friend Level apply_changes(const Level&, const ChangeSet&);

    int width_;
    int height_;
    std::vector<TileId> cells_;
    AlphabetRef alphabet_;
};

// A single tile edit: set the cell at (x, y) to `tile`.
struct Action {
    int x = 0;
    int y = 0;
    TileId tile = 0;

    friend bool operator==(const Action&, const Action&) = default;
};

// Ordered edit sequence. Diffs produced by compute_diffs assign each cell
// at most once, in row-major (y, x) order.
struct ChangeSet {
    std::vector<Action> actions;

    std::size_t size() const { return actions.size(); }
    bool empty() const { return actions.empty(); }
};

// Edits that transform `start` into `end`: one action per differing cell,
// row-major. Both levels must share shape and alphabet.
ChangeSet compute_diffs(const Level& start, const Level& end);

// Returns a copy of `level` with one cell replaced. Rejects out-of-bounds
// coordinates and tile ids outside the level's alphabet.
Level apply_action(const Level& level, const Action& a);

// Folds apply_action over the sequence. An invalid action aborts with an
// ActionError carrying its index.
Level apply_changes(const Level& level, const ChangeSet& c);

// Number of cells whose tile ids differ. Levels must share shape.
int hamming_distance(const Level& a, const Level& b);

// Text format: "width height\n" then `height` lines of `width` glyphs each,
// newline-terminated, ASCII only. Parsing is strict.
std::string to_text(const Level& level);
Level parse_level(std::string_view text, AlphabetRef alphabet);

Level load_level(const std::filesystem::path& path, AlphabetRef alphabet);
void save_level(const Level& level, const std::filesystem::path& path);

}  // namespace pcg

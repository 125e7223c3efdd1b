#pragma once

// Transitive subshifts of finite type over the alphabet {1..m}.
//
// Bi-infinite sequences are never stored. A point is either a finite Word
// (an anchored window; position 0 sits at `anchor`) or a CyclicWord (a
// periodic point, defined at every integer position by wrapping).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace domsplit {

using Symbol = int;  // 1-based

class Word {
public:
    Word() = default;
    Word(std::vector<Symbol> symbols, std::ptrdiff_t anchor);

    // Odd-length window with position 0 at its middle.
    static Word centered(std::vector<Symbol> symbols);

    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::ptrdiff_t anchor() const { return anchor_; }
    std::size_t size() const { return symbols_.size(); }

    std::ptrdiff_t min_position() const { return -anchor_; }
    std::ptrdiff_t max_position() const { return static_cast<std::ptrdiff_t>(symbols_.size()) - 1 - anchor_; }
    bool covers(std::ptrdiff_t lo, std::ptrdiff_t hi) const { return lo >= min_position() && hi <= max_position(); }
    // Largest R with [-R, R] inside the window (-1 if position 0 is missing).
    std::ptrdiff_t radius() const;

    Symbol at(std::ptrdiff_t position) const { return symbols_[static_cast<std::size_t>(position + anchor_)]; }

    // Sub-window [lo, hi] keeping absolute positions.
    Word slice(std::ptrdiff_t lo, std::ptrdiff_t hi) const;

    bool operator==(const Word&) const = default;

private:
    std::vector<Symbol> symbols_;
    std::ptrdiff_t anchor_ = 0;
};

class CyclicWord {
public:
    CyclicWord() = default;
    explicit CyclicWord(std::vector<Symbol> symbols);

    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::size_t period() const { return symbols_.size(); }

    Symbol at(std::ptrdiff_t position) const {
        const auto n = static_cast<std::ptrdiff_t>(symbols_.size());
        return symbols_[static_cast<std::size_t>(((position % n) + n) % n)];
    }

    // The same periodic point viewed from sigma^shift.
    CyclicWord rotated(std::ptrdiff_t shift) const;

    bool operator==(const CyclicWord&) const = default;
    auto operator<=>(const CyclicWord& other) const { return symbols_ <=> other.symbols_; }

private:
    std::vector<Symbol> symbols_;
};

// Anything the cocycle can be evaluated along.
using Point = std::variant<Word, CyclicWord>;

Symbol symbol_at(const Point& point, std::ptrdiff_t position);
bool covers(const Point& point, std::ptrdiff_t lo, std::ptrdiff_t hi);
std::string describe(const Point& point);

std::string format_symbols(const std::vector<Symbol>& symbols);
std::vector<Symbol> parse_symbols(std::string_view text);

using TransitionMatrix = std::vector<std::vector<int>>;

class ShiftSpace {
public:
    // Validates, checks transitivity and precomputes all shortest connectors.
    static ShiftSpace build(const TransitionMatrix& transition);

    int alphabet_size() const { return alphabet_size_; }
    const TransitionMatrix& transition() const { return transition_; }
    int closing_constant() const { return closing_constant_; }

    bool allowed(Symbol from, Symbol to) const { return transition_[from - 1][to - 1] != 0; }
    bool in_alphabet(Symbol s) const { return s >= 1 && s <= alphabet_size_; }

    // Shortest, then lexicographically smallest, word c with `from c to`
    // admissible. Empty when from -> to is an edge.
    const std::vector<Symbol>& connector(Symbol from, Symbol to) const;

    std::vector<Symbol> successors(Symbol s) const;

    // trace(transition^n), saturating at UINT64_MAX.
    std::uint64_t periodic_count(int n) const;

private:
    int alphabet_size_ = 0;
    TransitionMatrix transition_;
    int closing_constant_ = 0;
    std::vector<std::vector<Symbol>> connectors_;  // index (from-1)*m + (to-1)
};

bool is_admissible(const Word& word, const ShiftSpace& shift);
bool is_admissible(const CyclicWord& word, const ShiftSpace& shift);

// Appends the shortest connector from the last symbol back to the first.
CyclicWord close_word(const Word& word, const ShiftSpace& shift);

// Orbit-symbol budget shared by all exhaustive enumerations.
inline constexpr std::uint64_t kDefaultSymbolCap = 10'000'000;

// All admissible cyclic words of length exactly n (non-primitive included),
// lexicographically sorted.
std::vector<CyclicWord> enumerate_periodic(const ShiftSpace& shift, int n,
                                           std::uint64_t symbol_cap = kDefaultSymbolCap);

// The part of enumerate_periodic starting with `leading`; concatenating over
// leading = 1..m reproduces the full list.
std::vector<CyclicWord> enumerate_periodic_from(const ShiftSpace& shift, int n, Symbol leading);

// Every cyclic word of length 1..max_period in enumeration order, refusing
// when the total symbol count exceeds the cap.
std::vector<CyclicWord> enumerate_periodic_upto(const ShiftSpace& shift, int max_period,
                                                std::uint64_t symbol_cap = kDefaultSymbolCap);

struct ShiftDistance {
    double value = 0.0;
    int agreement = 0;       // N, the least |n| with differing symbols (or the first unknown one)
    bool truncated = false;  // windows agree on their whole common range; value is an upper bound
};

ShiftDistance shift_distance(const Word& a, const Word& b);

// Seeded random walk on the transition graph, uniform over allowed successors.
Word random_window(const ShiftSpace& shift, std::ptrdiff_t radius, std::mt19937_64& rng);

}  // namespace domsplit

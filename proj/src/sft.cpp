#include "domsplit/sft.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <limits>
#include <sstream>

#include "domsplit/error.hpp"

namespace domsplit {

Word::Word(std::vector<Symbol> symbols, std::ptrdiff_t anchor) : symbols_(std::move(symbols)), anchor_(anchor) {}

Word Word::centered(std::vector<Symbol> symbols) {
    if (symbols.size() % 2 == 0)
        throw Error(ErrorCode::InvalidArgument, "centered window needs odd length");
    const auto anchor = static_cast<std::ptrdiff_t>(symbols.size() / 2);
    return Word(std::move(symbols), anchor);
}

std::ptrdiff_t Word::radius() const {
    if (symbols_.empty() || anchor_ < 0 || max_position() < 0) return -1;
    return std::min(-min_position(), max_position());
}

Word Word::slice(std::ptrdiff_t lo, std::ptrdiff_t hi) const {
    if (!covers(lo, hi) || lo > hi) throw Error(ErrorCode::WindowTooShort, "slice outside window");
    std::vector<Symbol> s(symbols_.begin() + (lo + anchor_), symbols_.begin() + (hi + anchor_ + 1));
    return Word(std::move(s), -lo);
}

CyclicWord::CyclicWord(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw Error(ErrorCode::InvalidArgument, "cyclic word must be non-empty");
}

CyclicWord CyclicWord::rotated(std::ptrdiff_t shift) const {
    std::vector<Symbol> s(symbols_.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = at(static_cast<std::ptrdiff_t>(i) + shift);
    return CyclicWord(std::move(s));
}

Symbol symbol_at(const Point& point, std::ptrdiff_t position) {
    return std::visit([position](const auto& w) { return w.at(position); }, point);
}

bool covers(const Point& point, std::ptrdiff_t lo, std::ptrdiff_t hi) {
    if (const auto* w = std::get_if<Word>(&point)) return w->covers(lo, hi);
    return true;
}

std::string describe(const Point& point) {
    if (const auto* w = std::get_if<Word>(&point))
        return "window[" + std::to_string(w->min_position()) + "," + std::to_string(w->max_position()) + "]:" +
               format_symbols(w->symbols());
    return "cyclic:" + format_symbols(std::get<CyclicWord>(point).symbols());
}

std::string format_symbols(const std::vector<Symbol>& symbols) {
    std::string out;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(symbols[i]);
    }
    return out;
}

std::vector<Symbol> parse_symbols(std::string_view text) {
    std::vector<Symbol> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find(',', pos), text.size());
        std::string_view token = text.substr(pos, end - pos);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        Symbol s = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), s);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
            throw Error(ErrorCode::ConfigParse, "bad symbol list '" + std::string(text) + "'");
        out.push_back(s);
        pos = end + 1;
    }
    return out;
}

namespace {

// Shortest-path lengths to `target` over the transition graph, -1 if unreachable.
std::vector<int> distances_to(const TransitionMatrix& q, int target) {
    const int m = static_cast<int>(q.size());
    std::vector<int> dist(m, -1);
    std::deque<int> queue{target};
    dist[target] = 0;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int u = 0; u < m; ++u) {
            if (q[u][v] && dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    return dist;
}

}  // namespace

ShiftSpace ShiftSpace::build(const TransitionMatrix& transition) {
    const auto m = static_cast<int>(transition.size());
    if (m == 0) throw Error(ErrorCode::EmptyAlphabet, "transition matrix is empty");
    for (const auto& row : transition) {
        if (static_cast<int>(row.size()) != m) throw Error(ErrorCode::InvalidArgument, "transition matrix must be square");
        for (int v : row)
            if (v != 0 && v != 1) throw Error(ErrorCode::InvalidArgument, "transition entries must be 0 or 1");
    }

    ShiftSpace s;
    s.alphabet_size_ = m;
    s.transition_ = transition;
    s.connectors_.resize(static_cast<std::size_t>(m) * m);

    for (int to = 0; to < m; ++to) {
        const auto dist = distances_to(transition, to);
        for (int from = 0; from < m; ++from) {
            // Paths from -> ... -> to of length >= 1; pick the best first step.
            int best = -1;
            for (int next = 0; next < m; ++next) {
                if (!transition[from][next] || dist[next] < 0) continue;
                if (best < 0 || dist[next] < dist[best]) best = next;
            }
            if (best < 0)
                throw Error(ErrorCode::NonTransitive,
                            "no path from " + std::to_string(from + 1) + " to " + std::to_string(to + 1));
            // Greedy walk: the smallest successor that stays on a shortest path.
            std::vector<Symbol> path;
            for (int v = best; v != to;) {
                path.push_back(v + 1);
                for (int next = 0; next < m; ++next) {
                    if (transition[v][next] && dist[next] == dist[v] - 1) {
                        v = next;
                        break;
                    }
                }
            }
            s.closing_constant_ = std::max(s.closing_constant_, static_cast<int>(path.size()));
            s.connectors_[static_cast<std::size_t>(from) * m + to] = std::move(path);
        }
    }
    return s;
}

const std::vector<Symbol>& ShiftSpace::connector(Symbol from, Symbol to) const {
    if (!in_alphabet(from) || !in_alphabet(to)) throw Error(ErrorCode::SymbolOutOfRange, "connector endpoints");
    return connectors_[static_cast<std::size_t>(from - 1) * alphabet_size_ + (to - 1)];
}

std::vector<Symbol> ShiftSpace::successors(Symbol s) const {
    std::vector<Symbol> out;
    for (int t = 1; t <= alphabet_size_; ++t)
        if (allowed(s, t)) out.push_back(t);
    return out;
}

std::uint64_t ShiftSpace::periodic_count(int n) const {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    const auto m = static_cast<std::size_t>(alphabet_size_);
    auto sat_add = [](std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; };
    std::vector<std::vector<std::uint64_t>> power(m, std::vector<std::uint64_t>(m, 0));
    for (std::size_t i = 0; i < m; ++i) power[i][i] = 1;
    for (int step = 0; step < n; ++step) {
        std::vector<std::vector<std::uint64_t>> next(m, std::vector<std::uint64_t>(m, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < m; ++k)
                if (power[i][k])
                    for (std::size_t j = 0; j < m; ++j)
                        if (transition_[k][j]) next[i][j] = sat_add(next[i][j], power[i][k]);
        power = std::move(next);
    }
    std::uint64_t trace = 0;
    for (std::size_t i = 0; i < m; ++i) trace = sat_add(trace, power[i][i]);
    return trace;
}

namespace {

void check_symbols(const std::vector<Symbol>& symbols, const ShiftSpace& shift) {
    for (Symbol s : symbols)
        if (!shift.in_alphabet(s)) throw Error(ErrorCode::SymbolOutOfRange, "symbol " + std::to_string(s));
}

}  // namespace

bool is_admissible(const Word& word, const ShiftSpace& shift) {
    const auto& s = word.symbols();
    check_symbols(s, shift);
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (!shift.allowed(s[i], s[i + 1])) return false;
    return true;
}

bool is_admissible(const CyclicWord& word, const ShiftSpace& shift) {
    const auto& s = word.symbols();
    check_symbols(s, shift);
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!shift.allowed(s[i], s[(i + 1) % s.size()])) return false;
    return true;
}

CyclicWord close_word(const Word& word, const ShiftSpace& shift) {
    if (word.size() == 0) throw Error(ErrorCode::InvalidArgument, "cannot close an empty word");
    if (!is_admissible(word, shift)) throw Error(ErrorCode::InadmissibleWindow, "close_word on inadmissible word");
    std::vector<Symbol> out = word.symbols();
    const auto& bridge = shift.connector(out.back(), out.front());
    out.insert(out.end(), bridge.begin(), bridge.end());
    return CyclicWord(std::move(out));
}

namespace {

void extend(const ShiftSpace& shift, int n, std::vector<Symbol>& prefix, std::vector<CyclicWord>& out) {
    if (static_cast<int>(prefix.size()) == n) {
        if (shift.allowed(prefix.back(), prefix.front())) out.emplace_back(prefix);
        return;
    }
    for (Symbol t = 1; t <= shift.alphabet_size(); ++t) {
        if (!shift.allowed(prefix.back(), t)) continue;
        prefix.push_back(t);
        extend(shift, n, prefix, out);
        prefix.pop_back();
    }
}

void check_period_budget(std::uint64_t count, int n, std::uint64_t cap) {
    if (count > cap / static_cast<std::uint64_t>(n))
        throw Error(ErrorCode::PeriodTooLarge, std::to_string(count) + " orbits of period " + std::to_string(n) +
                                                   " exceed the symbol cap " + std::to_string(cap));
}

}  // namespace

std::vector<CyclicWord> enumerate_periodic_from(const ShiftSpace& shift, int n, Symbol leading) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "period must be >= 1");
    if (!shift.in_alphabet(leading)) throw Error(ErrorCode::SymbolOutOfRange, "leading symbol");
    std::vector<CyclicWord> out;
    std::vector<Symbol> prefix{leading};
    prefix.reserve(n);
    extend(shift, n, prefix, out);
    return out;
}

std::vector<CyclicWord> enumerate_periodic(const ShiftSpace& shift, int n, std::uint64_t symbol_cap) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "period must be >= 1");
    const std::uint64_t count = shift.periodic_count(n);
    check_period_budget(count, n, symbol_cap);
    std::vector<CyclicWord> out;
    out.reserve(count);
    for (Symbol s = 1; s <= shift.alphabet_size(); ++s) {
        auto part = enumerate_periodic_from(shift, n, s);
        std::move(part.begin(), part.end(), std::back_inserter(out));
    }
    return out;
}

std::vector<CyclicWord> enumerate_periodic_upto(const ShiftSpace& shift, int max_period, std::uint64_t symbol_cap) {
    if (max_period < 1) throw Error(ErrorCode::InvalidArgument, "max period must be >= 1");
    std::uint64_t budget = symbol_cap;
    for (int n = 1; n <= max_period; ++n) {
        const std::uint64_t count = shift.periodic_count(n);
        check_period_budget(count, n, budget);
        budget -= count * n;
    }
    std::vector<CyclicWord> out;
    for (int n = 1; n <= max_period; ++n) {
        auto part = enumerate_periodic(shift, n, symbol_cap);
        std::move(part.begin(), part.end(), std::back_inserter(out));
    }
    return out;
}

ShiftDistance shift_distance(const Word& a, const Word& b) {
    const std::ptrdiff_t lo = std::max(a.min_position(), b.min_position());
    const std::ptrdiff_t hi = std::min(a.max_position(), b.max_position());
    if (lo > 0 || hi < 0) throw Error(ErrorCode::DisjointRanges, "windows share no range around position 0");
    for (std::ptrdiff_t n = 0;; ++n) {
        const bool has_right = n <= hi;
        const bool has_left = -n >= lo;
        if ((has_right && a.at(n) != b.at(n)) || (has_left && a.at(-n) != b.at(-n)))
            return {std::exp(-static_cast<double>(n)), static_cast<int>(n), false};
        if (!has_right || !has_left) return {std::exp(-static_cast<double>(n)), static_cast<int>(n), true};
    }
}

Word random_window(const ShiftSpace& shift, std::ptrdiff_t radius, std::mt19937_64& rng) {
    if (radius < 0) throw Error(ErrorCode::InvalidArgument, "negative radius");
    const auto length = static_cast<std::size_t>(2 * radius + 1);
    std::vector<Symbol> s;
    s.reserve(length);
    std::uniform_int_distribution<int> first(1, shift.alphabet_size());
    s.push_back(first(rng));
    while (s.size() < length) {
        const auto next = shift.successors(s.back());
        std::uniform_int_distribution<std::size_t> pick(0, next.size() - 1);
        s.push_back(next[pick(rng)]);
    }
    return Word(std::move(s), radius);
}

}  // namespace domsplit

#include "domsplit/cocycle.hpp"

#include <algorithm>
#include <cmath>

#include "domsplit/error.hpp"

namespace domsplit {

FiniteRangeCocycle FiniteRangeCocycle::create(int dimension, int range, double holder_exponent, const Table& table,
                                              std::optional<double> norm_bound, double condition_cap) {
    if (dimension < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
    if (range < 0) throw Error(ErrorCode::InvalidArgument, "range must be >= 0");
    if (!(holder_exponent > 0.0 && holder_exponent <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "holder exponent must lie in (0, 1]");
    if (table.empty()) throw Error(ErrorCode::InvalidArgument, "cocycle table is empty");

    FiniteRangeCocycle a;
    a.dimension_ = dimension;
    a.range_ = range;
    a.beta_ = holder_exponent;

    Symbol largest = 1;
    double log_max_norm = -INFINITY;
    for (const auto& [window, m] : table) {
        if (window.size() != static_cast<std::size_t>(2 * range + 1))
            throw Error(ErrorCode::InvalidArgument, "window '" + format_symbols(window) + "' has wrong length");
        for (Symbol s : window)
            if (s < 1) throw Error(ErrorCode::SymbolOutOfRange, "symbols are 1-based");
        if (m.rows() != dimension || m.cols() != dimension)
            throw Error(ErrorCode::InvalidArgument, "matrix for '" + format_symbols(window) + "' has wrong shape");
        const auto sv = singular_values(m, condition_cap);
        log_max_norm = std::max(log_max_norm, std::log(sv.norm()));
        largest = std::max(largest, *std::max_element(window.begin(), window.end()));
        a.windows_.push_back(window);
        a.matrices_.push_back(m);
    }
    if (norm_bound && *norm_bound < log_max_norm - 1e-12)
        throw Error(ErrorCode::InvalidArgument, "norm bound mu is below log max ||A||");
    a.mu_ = norm_bound.value_or(log_max_norm);

    a.base_ = static_cast<std::uint64_t>(largest) + 1;
    for (std::size_t i = 0; i < a.windows_.size(); ++i) {
        std::uint64_t key = 0;
        for (Symbol s : a.windows_[i]) key = key * a.base_ + static_cast<std::uint64_t>(s);
        a.index_.emplace(key, i);
    }
    return a;
}

FiniteRangeCocycle FiniteRangeCocycle::locally_constant(const std::vector<Matrix>& matrices, double holder_exponent) {
    if (matrices.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one matrix");
    Table t;
    for (std::size_t i = 0; i < matrices.size(); ++i) t[{static_cast<Symbol>(i + 1)}] = matrices[i];
    return create(static_cast<int>(matrices.front().rows()), 0, holder_exponent, t);
}

FiniteRangeCocycle::Table FiniteRangeCocycle::table() const {
    Table t;
    for (std::size_t i = 0; i < windows_.size(); ++i) t.emplace(windows_[i], matrices_[i]);
    return t;
}

std::optional<std::size_t> FiniteRangeCocycle::find(const Symbol* first, std::size_t count) const {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const Symbol s = first[i];
        if (s < 1 || static_cast<std::uint64_t>(s) >= base_) return std::nullopt;
        key = key * base_ + static_cast<std::uint64_t>(s);
    }
    const auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const Matrix& FiniteRangeCocycle::lookup(const std::vector<Symbol>& window) const {
    if (window.size() != static_cast<std::size_t>(2 * range_ + 1))
        throw Error(ErrorCode::WindowTooShort, "window must have length 2r+1");
    const auto i = find(window.data(), window.size());
    if (!i) throw Error(ErrorCode::InadmissibleWindow, "no matrix for window '" + format_symbols(window) + "'");
    return matrices_[*i];
}

const Matrix& FiniteRangeCocycle::evaluate(const Point& point, std::ptrdiff_t position) const {
    if (!covers(point, position - range_, position + range_))
        throw Error(ErrorCode::WindowTooShort, "window does not cover positions around " + std::to_string(position));
    Symbol buf[64];
    std::vector<Symbol> big;
    Symbol* w = buf;
    const std::size_t len = 2 * static_cast<std::size_t>(range_) + 1;
    if (len > 64) {
        big.resize(len);
        w = big.data();
    }
    for (std::size_t j = 0; j < len; ++j)
        w[j] = symbol_at(point, position - range_ + static_cast<std::ptrdiff_t>(j));
    const auto i = find(w, len);
    if (!i)
        throw Error(ErrorCode::InadmissibleWindow,
                    "no matrix for window '" + format_symbols(std::vector<Symbol>(w, w + len)) + "'");
    return matrices_[*i];
}

void FiniteRangeCocycle::check_covers(const ShiftSpace& shift) const {
    const int len = 2 * range_ + 1;
    std::vector<Symbol> w;
    // Depth-first over admissible words of length 2r+1.
    auto visit = [&](auto&& self) -> void {
        if (static_cast<int>(w.size()) == len) {
            if (!find(w.data(), w.size()))
                throw Error(ErrorCode::InadmissibleWindow, "cocycle has no matrix for window '" + format_symbols(w) + "'");
            return;
        }
        for (Symbol t = 1; t <= shift.alphabet_size(); ++t) {
            if (!w.empty() && !shift.allowed(w.back(), t)) continue;
            w.push_back(t);
            self(self);
            w.pop_back();
        }
    };
    visit(visit);
}

Matrix product(const FiniteRangeCocycle& a, const Point& point, int n, std::ptrdiff_t start) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "product length must be >= 0");
    if (n > 0 && !covers(point, start - a.range(), start + n - 1 + a.range()))
        throw Error(ErrorCode::WindowTooShort, "window too short for a product of length " + std::to_string(n));
    Matrix m = Matrix::Identity(a.dimension(), a.dimension());
    for (int i = 0; i < n; ++i) m = a.evaluate(point, start + i) * m;
    return m;
}

ScaledMatrix scaled_product(const FiniteRangeCocycle& a, const Point& point, int n, std::ptrdiff_t start) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "product length must be >= 0");
    if (n > 0 && !covers(point, start - a.range(), start + n - 1 + a.range()))
        throw Error(ErrorCode::WindowTooShort, "window too short for a product of length " + std::to_string(n));
    ScaledMatrix m = ScaledMatrix::identity(a.dimension());
    for (int i = 0; i < n; ++i) m.left_multiply(a.evaluate(point, start + i));
    return m;
}

FiniteRangeCocycle exterior_power(const FiniteRangeCocycle& a, int k) {
    if (k < 1 || k > a.dimension()) throw Error(ErrorCode::InvalidArgument, "exterior power index out of range");
    FiniteRangeCocycle::Table t;
    for (std::size_t i = 0; i < a.size(); ++i) t.emplace(a.windows()[i], compound(a.matrices()[i], k));
    // Compounds of invertible matrices can be far worse conditioned than the
    // factors; the factors were already checked.
    return FiniteRangeCocycle::create(static_cast<int>(binomial(a.dimension(), k)), a.range(), a.holder_exponent(), t,
                                      std::nullopt, INFINITY);
}

FiniteRangeCocycle conjugated(const FiniteRangeCocycle& a, const Matrix& p) {
    const Matrix p_inv = p.inverse();
    FiniteRangeCocycle::Table t;
    for (std::size_t i = 0; i < a.size(); ++i) t.emplace(a.windows()[i], p * a.matrices()[i] * p_inv);
    return FiniteRangeCocycle::create(a.dimension(), a.range(), a.holder_exponent(), t, std::nullopt, INFINITY);
}

double holder_constant(const FiniteRangeCocycle& a, int depth) {
    if (depth < 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 0");
    const int r = a.range();
    double c = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            const auto& u = a.windows()[i];
            const auto& v = a.windows()[j];
            int first = -1;
            for (int n = 0; n <= r && first < 0; ++n)
                if (u[r + n] != v[r + n] || u[r - n] != v[r - n]) first = n;
            if (first < 0 || first > depth) continue;
            const double diff = spectral_norm(a.matrices()[i] - a.matrices()[j]);
            c = std::max(c, diff * std::exp(a.holder_exponent() * first));
        }
    }
    return c;
}

}  // namespace domsplit

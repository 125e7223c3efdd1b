#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "domsplit/linalg.hpp"
#include "domsplit/sft.hpp"

namespace domsplit {

// Stored matrices with sigma_1/sigma_d above this are rejected as singular.
inline constexpr double kDefaultInvertibilityCap = 1e12;

// A cocycle generator A(omega) that depends only on omega_{-r..r}. The table
// is keyed by those (2r+1)-windows.
class FiniteRangeCocycle {
public:
    using Table = std::map<std::vector<Symbol>, Matrix>;

    static FiniteRangeCocycle create(int dimension, int range, double holder_exponent, const Table& table,
                                     std::optional<double> norm_bound = std::nullopt,
                                     double condition_cap = kDefaultInvertibilityCap);

    // Range-0 cocycle {1 -> matrices[0], 2 -> matrices[1], ...}.
    static FiniteRangeCocycle locally_constant(const std::vector<Matrix>& matrices, double holder_exponent = 1.0);

    int dimension() const { return dimension_; }
    int range() const { return range_; }
    double holder_exponent() const { return beta_; }
    // mu with ||A(omega)|| <= e^mu for every window.
    double norm_bound() const { return mu_; }

    std::size_t size() const { return windows_.size(); }
    const std::vector<std::vector<Symbol>>& windows() const { return windows_; }
    const std::vector<Matrix>& matrices() const { return matrices_; }
    Table table() const;

    const Matrix& lookup(const std::vector<Symbol>& window) const;
    // A(sigma^position(point)).
    const Matrix& evaluate(const Point& point, std::ptrdiff_t position) const;

    // Throws InadmissibleWindow naming the first admissible window of the
    // shift that has no table entry.
    void check_covers(const ShiftSpace& shift) const;

private:
    std::optional<std::size_t> find(const Symbol* first, std::size_t count) const;

    int dimension_ = 0;
    int range_ = 0;
    double beta_ = 1.0;
    double mu_ = 0.0;
    std::vector<std::vector<Symbol>> windows_;
    std::vector<Matrix> matrices_;
    std::uint64_t base_ = 2;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

// A^n(sigma^start x) = A(sigma^{start+n-1} x) ... A(sigma^start x); identity for n = 0.
Matrix product(const FiniteRangeCocycle& a, const Point& point, int n, std::ptrdiff_t start = 0);

// Same product with exact power-of-two renormalization for long orbits.
ScaledMatrix scaled_product(const FiniteRangeCocycle& a, const Point& point, int n, std::ptrdiff_t start = 0);

// Cocycle of k-th compound matrices (lexicographic subset basis), dimension C(d,k).
FiniteRangeCocycle exterior_power(const FiniteRangeCocycle& a, int k);

// P A(omega) P^{-1} for every window.
FiniteRangeCocycle conjugated(const FiniteRangeCocycle& a, const Matrix& p);

// Smallest C with ||A(omega) - A(eta)|| <= C e^{-beta N(omega, eta)} over all
// table-window pairs whose first disagreement N is at most `depth`. Exact
// once depth >= range.
double holder_constant(const FiniteRangeCocycle& a, int depth);

}  // namespace domsplit

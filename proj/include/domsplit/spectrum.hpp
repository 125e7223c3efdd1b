#pragma once

// Periodic eigenvalue data: exponents chi_i = (1/n) log|alpha_i| of the
// return map over every periodic point, and their constant / delta-narrow
// classification.

#include <string_view>
#include <vector>

#include "domsplit/cocycle.hpp"
#include "domsplit/parallel.hpp"
#include "domsplit/sft.hpp"

namespace domsplit {

struct PeriodicExponents {
    CyclicWord orbit;
    std::vector<double> exponents;  // non-increasing, length d
};

// Eigenvalue moduli are read off the spectral radii of the compound return
// maps: |alpha_1 ... alpha_k| = rho(Lambda^k A^n(p)). The compound products
// are accumulated factor by factor, so the top-k modulus never has to be
// recovered from a matrix whose small eigenvalues are buried in rounding.
class ExponentKernel {
public:
    explicit ExponentKernel(const FiniteRangeCocycle& a);

    PeriodicExponents operator()(const CyclicWord& orbit) const;

private:
    std::vector<FiniteRangeCocycle> compounds_;  // k = 1..d
};

PeriodicExponents periodic_exponents(const FiniteRangeCocycle& a, const CyclicWord& orbit);

struct ExponentInterval {
    double lo = 0.0;
    double hi = 0.0;
    CyclicWord lo_witness;
    CyclicWord hi_witness;
};

struct SpectrumReport {
    int max_period = 0;
    std::vector<ExponentInterval> intervals;  // one per index i = 1..d
    std::vector<PeriodicExponents> orbits;    // enumeration order
};

// Exhaustive over all cyclic words of length 1..max_period.
SpectrumReport spectrum_report(const FiniteRangeCocycle& a, const ShiftSpace& shift, int max_period,
                               Execution exec = Execution::Parallel, std::uint64_t symbol_cap = kDefaultSymbolCap);

enum class SpectrumClass { Constant, Narrow, Neither };

std::string_view to_string(SpectrumClass c);

inline constexpr double kConstantTolerance = 1e-9;

SpectrumClass classify(const SpectrumReport& report, const std::vector<double>& center, double delta);

}  // namespace domsplit

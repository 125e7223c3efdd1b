#include "domsplit/spectrum.hpp"

#include <algorithm>
#include <exception>
#include <cmath>
#include <functional>

#include "domsplit/error.hpp"

namespace domsplit {

ExponentKernel::ExponentKernel(const FiniteRangeCocycle& a) {
    compounds_.reserve(a.dimension());
    for (int k = 1; k <= a.dimension(); ++k) compounds_.push_back(exterior_power(a, k));
}

PeriodicExponents ExponentKernel::operator()(const CyclicWord& orbit) const {
    const Point p{orbit};
    const int n = static_cast<int>(orbit.period());
    PeriodicExponents out{orbit, {}};
    out.exponents.reserve(compounds_.size());
    double previous = 0.0;
    for (const auto& c : compounds_) {
        const ScaledMatrix m = scaled_product(c, p, n);
        const double rho = spectral_radius(m.mantissa);
        if (!(rho > 0.0) || !std::isfinite(rho))
            throw Error(ErrorCode::NumericalBreakdown, "degenerate return map on " + format_symbols(orbit.symbols()));
        const double log_top = std::log(rho) + m.log_scale;
        out.exponents.push_back((log_top - previous) / n);
        previous = log_top;
    }
    std::sort(out.exponents.begin(), out.exponents.end(), std::greater<>());
    return out;
}

PeriodicExponents periodic_exponents(const FiniteRangeCocycle& a, const CyclicWord& orbit) {
    return ExponentKernel(a)(orbit);
}

SpectrumReport spectrum_report(const FiniteRangeCocycle& a, const ShiftSpace& shift, int max_period, Execution exec,
                               std::uint64_t symbol_cap) {
    const auto orbits = enumerate_periodic_upto(shift, max_period, symbol_cap);
    const ExponentKernel kernel(a);

    SpectrumReport report;
    report.max_period = max_period;
    report.orbits.resize(orbits.size());
    const auto count = static_cast<std::ptrdiff_t>(orbits.size());

    if (exec == Execution::Parallel) {
        // Exceptions cannot cross the OpenMP region; keep the first one.
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 64)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            try {
                report.orbits[i] = kernel(orbits[i]);
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (std::ptrdiff_t i = 0; i < count; ++i) report.orbits[i] = kernel(orbits[i]);
    }

    const int d = a.dimension();
    report.intervals.resize(d);
    for (int i = 0; i < d; ++i) {
        auto& iv = report.intervals[i];
        iv.lo = INFINITY;
        iv.hi = -INFINITY;
        for (const auto& e : report.orbits) {
            if (e.exponents[i] < iv.lo) {
                iv.lo = e.exponents[i];
                iv.lo_witness = e.orbit;
            }
            if (e.exponents[i] > iv.hi) {
                iv.hi = e.exponents[i];
                iv.hi_witness = e.orbit;
            }
        }
    }
    return report;
}

std::string_view to_string(SpectrumClass c) {
    switch (c) {
        case SpectrumClass::Constant: return "Constant";
        case SpectrumClass::Narrow: return "Narrow";
        case SpectrumClass::Neither: return "Neither";
    }
    return "Neither";
}

SpectrumClass classify(const SpectrumReport& report, const std::vector<double>& center, double delta) {
    if (center.size() != report.intervals.size())
        throw Error(ErrorCode::InvalidArgument, "center must list one exponent per index");
    if (!(delta >= 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be >= 0");
    for (std::size_t i = 1; i < center.size(); ++i)
        if (center[i] > center[i - 1]) throw Error(ErrorCode::CenterNotSorted, "center exponents must be non-increasing");

    bool constant = true;
    bool narrow = true;
    constexpr double kSlack = 1e-12;
    for (std::size_t i = 0; i < center.size(); ++i) {
        const auto& iv = report.intervals[i];
        if (std::abs(iv.lo - center[i]) > kConstantTolerance || std::abs(iv.hi - center[i]) > kConstantTolerance)
            constant = false;
        if (iv.lo < center[i] - delta - kSlack || iv.hi > center[i] + delta + kSlack) narrow = false;
    }
    if (constant) return SpectrumClass::Constant;
    return narrow ? SpectrumClass::Narrow : SpectrumClass::Neither;
}

}  // namespace domsplit

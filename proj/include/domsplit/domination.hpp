#pragma once

// Singular-value-gap test for dominated splittings and pointwise
// construction of the splitting from singular subspaces.

#include <cstdint>
#include <string>
#include <vector>

#include "domsplit/cocycle.hpp"
#include "domsplit/parallel.hpp"
#include "domsplit/sft.hpp"

namespace domsplit {

// Which orbits a sampled test looks at: every periodic point of period
// <= max_period plus `random_windows` seeded random walks.
struct SampleSpec {
    int max_period = 8;
    int random_windows = 64;
    std::uint64_t seed = 1;
};

struct Sample {
    Point point;
    std::string label;  // "periodic:1,2" or "random#17"
};

// Random windows have radius `radius` around position 0.
std::vector<Sample> draw_samples(const ShiftSpace& shift, const SampleSpec& spec, std::ptrdiff_t radius,
                                 std::uint64_t symbol_cap = kDefaultSymbolCap);

// log(sigma_{k+1}/sigma_k) of A^n, n = 1..N, evaluated as
// log||L^{k+1}|| + log||L^{k-1}|| - 2 log||L^k|| on the compound products, so
// ratios far below machine epsilon stay accurate.
class GapKernel {
public:
    GapKernel(const FiniteRangeCocycle& a, int k);

    int index() const { return k_; }
    std::vector<double> log_gaps(const Point& point, int depth, std::ptrdiff_t start = 0) const;

private:
    int k_;
    std::vector<FiniteRangeCocycle> compounds_;  // Lambda^{k-1} (absent when k = 1), Lambda^k, Lambda^{k+1}
};

// g_n = sigma_{k+1}(A^n) / sigma_k(A^n) for n = 1..depth.
std::vector<double> gap_series(const FiniteRangeCocycle& a, const Point& point, int k, int depth,
                               std::ptrdiff_t start = 0);

struct DominationOptions {
    double margin = 0.01;     // Dominated needs tau < 1 - margin
    double inflation = 1.05;  // envelope: g_n <= (inflation C) (inflation tau)^n
    Execution exec = Execution::Parallel;
    std::uint64_t symbol_cap = kDefaultSymbolCap;
};

struct DominationCertificate {
    int k = 1;
    int depth = 0;
    bool dominated = false;
    double tau = 1.0;    // slope of the log-linear fit on n >= depth/2
    double fit_C = 0.0;  // its intercept
    double C = 0.0;      // least C with worst_gap[n] <= C tau^n for every n, >= fit_C
    double envelope_C = 0.0;    // inflation * fit_C
    double envelope_tau = 1.0;  // inflation * tau
    double fit_residual = 0.0;     // RMS residual of the log-linear fit
    double envelope_excess = 0.0;  // max over the fit range of log(g_n / envelope); <= 0 when it holds
    std::vector<double> worst_gap;           // max over samples of g_n, n = 1..depth
    std::vector<std::string> worst_sample;  // label attaining it
    SampleSpec samples;
    std::size_t periodic_samples = 0;
    std::size_t random_samples = 0;
    // Every sample's series, kept for the plotting CSV.
    std::vector<std::string> labels;
    std::vector<std::vector<double>> series;
};

DominationCertificate domination_test(const FiniteRangeCocycle& a, const ShiftSpace& shift, int k, int depth,
                                      const SampleSpec& spec, const DominationOptions& options = {});

struct SplittingOptions {
    double gap_threshold = 10.0;  // minimum sigma_k / sigma_{k+1} at the construction depth
};

struct SplittingFrame {
    Point base;
    std::ptrdiff_t position = 0;
    int k = 1;
    int depth = 0;
    Matrix E;  // d x k, orthonormal
    Matrix F;  // d x (d-k), orthonormal
    double residual = 0.0;    // max principal angle of A E vs E(sigma), A F vs F(sigma)
    double separation = 0.0;  // smallest principal angle between E and F
    double log_gap = 0.0;     // min over both windows of log(sigma_k / sigma_{k+1})
};

// F: the d-k least expanded right singular directions of the forward product
// A^N at the point; E: the image of the k most expanded right singular
// directions of the backward product A^N(sigma^{-N}). The point must cover
// [position - N - r, position + N - 1 + r].
SplittingFrame construct_splitting(const FiniteRangeCocycle& a, const Point& point, int k, int depth,
                                   std::ptrdiff_t position = 0, const SplittingOptions& options = {});

// Frames at positions first..first+count-1 along one point.
std::vector<SplittingFrame> construct_splittings(const FiniteRangeCocycle& a, const Point& point, int k, int depth,
                                                 std::ptrdiff_t first, int count,
                                                 const SplittingOptions& options = {});

struct DominationInequalityReport {
    std::vector<double> ratios;  // ||A^m|F|| / m(A^m|E), m = 1..n
    double tau = 1.0;
    double C = 0.0;
    double max_coupling = 0.0;  // largest off-diagonal block norm in frame coordinates
    bool pass = false;
};

// Needs frames at n+1 consecutive positions of one point.
DominationInequalityReport verify_domination_inequality(const FiniteRangeCocycle& a,
                                                        const std::vector<SplittingFrame>& frames, int n,
                                                        double margin = 0.01);

}  // namespace domsplit

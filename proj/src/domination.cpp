#include "domsplit/domination.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>

#include "domsplit/error.hpp"

namespace domsplit {

std::vector<Sample> draw_samples(const ShiftSpace& shift, const SampleSpec& spec, std::ptrdiff_t radius,
                                 std::uint64_t symbol_cap) {
    if (spec.max_period < 0 || spec.random_windows < 0)
        throw Error(ErrorCode::InvalidArgument, "sample counts must be >= 0");
    std::vector<Sample> out;
    if (spec.max_period > 0) {
        for (auto& orbit : enumerate_periodic_upto(shift, spec.max_period, symbol_cap)) {
            std::string label = "periodic:" + format_symbols(orbit.symbols());
            out.push_back({Point{std::move(orbit)}, std::move(label)});
        }
    }
    std::mt19937_64 rng(spec.seed);
    for (int i = 0; i < spec.random_windows; ++i)
        out.push_back({Point{random_window(shift, radius, rng)}, "random#" + std::to_string(i)});
    return out;
}

GapKernel::GapKernel(const FiniteRangeCocycle& a, int k) : k_(k) {
    if (k < 1 || k >= a.dimension()) throw Error(ErrorCode::InvalidArgument, "gap index k must satisfy 1 <= k < d");
    if (k > 1) compounds_.push_back(exterior_power(a, k - 1));
    compounds_.push_back(exterior_power(a, k));
    compounds_.push_back(exterior_power(a, k + 1));
}

std::vector<double> GapKernel::log_gaps(const Point& point, int depth, std::ptrdiff_t start) const {
    if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
    const auto& top = compounds_.back();
    if (!covers(point, start - top.range(), start + depth - 1 + top.range()))
        throw Error(ErrorCode::WindowTooShort, "window too short for gap series of depth " + std::to_string(depth));

    std::vector<ScaledMatrix> running;
    for (const auto& c : compounds_) running.push_back(ScaledMatrix::identity(c.dimension()));
    const bool has_lower = compounds_.size() == 3;

    std::vector<double> out(depth);
    for (int n = 1; n <= depth; ++n) {
        for (std::size_t j = 0; j < compounds_.size(); ++j)
            running[j].left_multiply(compounds_[j].evaluate(point, start + n - 1));
        const double lower = has_lower ? running[0].log_norm() : 0.0;
        const double mid = running[compounds_.size() - 2].log_norm();
        const double upper = running.back().log_norm();
        out[n - 1] = upper + lower - 2.0 * mid;
    }
    return out;
}

std::vector<double> gap_series(const FiniteRangeCocycle& a, const Point& point, int k, int depth,
                               std::ptrdiff_t start) {
    auto g = GapKernel(a, k).log_gaps(point, depth, start);
    for (double& v : g) v = std::exp(v);
    return g;
}

namespace {

// Fit log y = log C + n log tau on n >= first_n.
LinearFit fit_decay(const std::vector<double>& log_values, int first_n) {
    std::vector<double> x, y;
    for (int n = first_n; n <= static_cast<int>(log_values.size()); ++n) {
        x.push_back(n);
        y.push_back(log_values[n - 1]);
    }
    return least_squares_line(x, y);
}

template <typename Fn>
void for_each_index(std::ptrdiff_t count, Execution exec, Fn&& fn) {
    if (exec == Execution::Parallel) {
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            try {
                fn(i);
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (std::ptrdiff_t i = 0; i < count; ++i) fn(i);
    }
}

}  // namespace

DominationCertificate domination_test(const FiniteRangeCocycle& a, const ShiftSpace& shift, int k, int depth,
                                      const SampleSpec& spec, const DominationOptions& options) {
    if (depth < 2) throw Error(ErrorCode::InsufficientSamples, "depth must be >= 2 to fit a decay rate");
    const GapKernel kernel(a, k);
    const auto samples = draw_samples(shift, spec, depth + a.range(), options.symbol_cap);
    if (samples.empty()) throw Error(ErrorCode::InsufficientSamples, "sample specification selects no orbits");

    DominationCertificate cert;
    cert.k = k;
    cert.depth = depth;
    cert.samples = spec;
    for (const auto& s : samples) {
        if (std::holds_alternative<CyclicWord>(s.point))
            ++cert.periodic_samples;
        else
            ++cert.random_samples;
        cert.labels.push_back(s.label);
    }

    std::vector<std::vector<double>> log_series(samples.size());
    for_each_index(static_cast<std::ptrdiff_t>(samples.size()), options.exec,
                   [&](std::ptrdiff_t i) { log_series[i] = kernel.log_gaps(samples[i].point, depth); });

    std::vector<double> worst(depth, -INFINITY);
    cert.worst_sample.assign(depth, "");
    for (std::size_t s = 0; s < samples.size(); ++s) {
        for (int n = 0; n < depth; ++n) {
            if (log_series[s][n] > worst[n]) {
                worst[n] = log_series[s][n];
                cert.worst_sample[n] = samples[s].label;
            }
        }
    }

    const int first_fit = (depth + 1) / 2;
    const LinearFit fit = fit_decay(worst, first_fit);
    cert.tau = std::exp(fit.slope);
    cert.fit_C = std::exp(fit.intercept);
    cert.fit_residual = fit.residual;
    const double log_inflation = std::log(options.inflation);
    cert.envelope_C = cert.fit_C * options.inflation;
    cert.envelope_tau = cert.tau * options.inflation;
    // The envelope is judged where the fit was made; the transient n < N/2 is
    // absorbed into C, the least constant with g_n <= C tau^n for every n.
    cert.envelope_excess = -INFINITY;
    double log_c = fit.intercept;
    for (int n = 1; n <= depth; ++n) {
        log_c = std::max(log_c, worst[n - 1] - n * fit.slope);
        if (n < first_fit) continue;
        const double envelope = fit.intercept + log_inflation + n * (fit.slope + log_inflation);
        cert.envelope_excess = std::max(cert.envelope_excess, worst[n - 1] - envelope);
    }
    cert.C = std::exp(log_c);
    cert.dominated = cert.tau < 1.0 - options.margin && cert.envelope_excess <= 0.0;

    cert.worst_gap.resize(depth);
    for (int n = 0; n < depth; ++n) cert.worst_gap[n] = std::exp(worst[n]);
    cert.series.resize(samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
        cert.series[s].resize(depth);
        for (int n = 0; n < depth; ++n) cert.series[s][n] = std::exp(log_series[s][n]);
    }
    return cert;
}

namespace {

struct Frames {
    Matrix E;
    Matrix F;
    double log_gap;
};

Frames frames_at(const FiniteRangeCocycle& a, const GapKernel& gaps, const Point& point, int k, int depth,
                 std::ptrdiff_t position) {
    const ScaledMatrix forward = scaled_product(a, point, depth, position);
    const ScaledMatrix backward = scaled_product(a, point, depth, position - depth);
    const int d = a.dimension();

    Eigen::JacobiSVD<Matrix> fsvd(forward.mantissa, Eigen::ComputeFullV);
    Eigen::JacobiSVD<Matrix> bsvd(backward.mantissa, Eigen::ComputeFullU);
    Frames out;
    out.F = fsvd.matrixV().rightCols(d - k);
    out.E = bsvd.matrixU().leftCols(k);
    const double forward_gap = -gaps.log_gaps(point, depth, position).back();
    const double backward_gap = -gaps.log_gaps(point, depth, position - depth).back();
    out.log_gap = std::min(forward_gap, backward_gap);
    return out;
}

}  // namespace

SplittingFrame construct_splitting(const FiniteRangeCocycle& a, const Point& point, int k, int depth,
                                   std::ptrdiff_t position, const SplittingOptions& options) {
    if (depth < 2) throw Error(ErrorCode::InvalidArgument, "splitting depth must be >= 2");
    const int r = a.range();
    if (!covers(point, position - depth - r, position + depth - 1 + r))
        throw Error(ErrorCode::WindowTooShort, "window must cover the forward and backward products");
    const GapKernel gaps(a, k);

    const Frames here = frames_at(a, gaps, point, k, depth, position);
    if (here.log_gap < std::log(options.gap_threshold))
        throw Error(ErrorCode::GapTooSmall, "sigma_k / sigma_{k+1} = " + std::to_string(std::exp(here.log_gap)) +
                                                " at depth " + std::to_string(depth));
    const Frames next = frames_at(a, gaps, point, k, depth - 1, position + 1);
    const Matrix& step = a.evaluate(point, position);

    SplittingFrame frame;
    frame.base = point;
    frame.position = position;
    frame.k = k;
    frame.depth = depth;
    frame.E = here.E;
    frame.F = here.F;
    frame.residual = std::max(max_principal_angle(step * here.E, next.E), max_principal_angle(step * here.F, next.F));
    frame.separation = min_principal_angle(here.E, here.F);
    frame.log_gap = here.log_gap;
    return frame;
}

std::vector<SplittingFrame> construct_splittings(const FiniteRangeCocycle& a, const Point& point, int k, int depth,
                                                 std::ptrdiff_t first, int count, const SplittingOptions& options) {
    std::vector<SplittingFrame> out;
    out.reserve(count);
    for (int j = 0; j < count; ++j) out.push_back(construct_splitting(a, point, k, depth, first + j, options));
    return out;
}

DominationInequalityReport verify_domination_inequality(const FiniteRangeCocycle& a,
                                                        const std::vector<SplittingFrame>& frames, int n,
                                                        double margin) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "need n >= 2 to fit a decay rate");
    if (static_cast<int>(frames.size()) < n + 1)
        throw Error(ErrorCode::FrameMismatch, "need n+1 consecutive frames");
    const int d = a.dimension();
    const int k = frames.front().k;
    for (int j = 0; j <= n; ++j) {
        const auto& f = frames[j];
        if (f.k != k || f.E.rows() != d || f.F.rows() != d || f.E.cols() != k || f.F.cols() != d - k)
            throw Error(ErrorCode::FrameMismatch, "frame shapes disagree");
        if (f.position != frames.front().position + j || !(f.base == frames.front().base))
            throw Error(ErrorCode::FrameMismatch, "frames are not consecutive along one orbit");
    }

    DominationInequalityReport report;
    // m(M) = 1/||M^{-1}||. With M = T_j...T_0, M^{-T} = T_j^{-T}...T_0^{-T}
    // accumulates by left multiplication like everything else.
    ScaledMatrix on_e_inv = ScaledMatrix::identity(k);
    ScaledMatrix on_f = ScaledMatrix::identity(d - k);
    std::vector<double> log_ratio;
    for (int j = 0; j < n; ++j) {
        const auto& cur = frames[j];
        const auto& nxt = frames[j + 1];
        Matrix basis_here(d, d), basis_next(d, d);
        basis_here << cur.E, cur.F;
        basis_next << nxt.E, nxt.F;
        const Matrix t = basis_next.partialPivLu().solve(a.evaluate(cur.base, cur.position) * basis_here);
        report.max_coupling = std::max(
            {report.max_coupling, spectral_norm(t.topRightCorner(k, d - k)), spectral_norm(t.bottomLeftCorner(d - k, k))});
        const Matrix block_e = t.topLeftCorner(k, k);
        on_e_inv.left_multiply(block_e.inverse().transpose());
        on_f.left_multiply(t.bottomRightCorner(d - k, d - k));
        const double log_f_norm = on_f.log_norm();
        const double log_e_conorm = -on_e_inv.log_norm();
        log_ratio.push_back(log_f_norm - log_e_conorm);
        report.ratios.push_back(std::exp(log_ratio.back()));
    }
    const LinearFit fit = fit_decay(log_ratio, (n + 1) / 2);
    report.tau = std::exp(fit.slope);
    report.C = std::exp(fit.intercept);
    report.pass = report.tau < 1.0 - margin;
    return report;
}

}  // namespace domsplit

#include "domsplit/shadowlab.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "domsplit/error.hpp"

namespace domsplit {

ShadowPair shadow_pair(const Word& omega, const ShiftSpace& shift, int radius) {
    const auto n = radius < 0 ? omega.radius() : static_cast<std::ptrdiff_t>(radius);
    if (n < 0 || !omega.covers(-n, n)) throw Error(ErrorCode::WindowTooShort, "window does not cover [-n, n]");
    const Word core = omega.slice(-n, n);
    const CyclicWord closed = close_word(core, shift);
    ShadowPair pair;
    pair.target = omega;
    pair.orbit = closed.rotated(n);
    pair.radius = static_cast<int>(n);
    pair.connector_length = static_cast<int>(closed.period() - core.size());
    return pair;
}

std::vector<ErrorTerm> error_terms(const FiniteRangeCocycle& a, const ShadowPair& pair, int i_max) {
    const int r = a.range();
    const int limit = i_max < 0 ? pair.radius - r : i_max;
    if (limit < 0) throw Error(ErrorCode::WindowTooShort, "agreement radius smaller than the cocycle range");
    const Point target{pair.target};
    const Point orbit{pair.orbit};
    if (!covers(target, -limit - r, limit + r))
        throw Error(ErrorCode::WindowTooShort, "target window too short for |i| <= " + std::to_string(limit));
    const double c1 = holder_constant(a, r);
    std::vector<ErrorTerm> out;
    for (std::ptrdiff_t i = -limit; i <= limit; ++i) {
        ErrorTerm t;
        t.i = i;
        t.norm = spectral_norm(a.evaluate(target, i) - a.evaluate(orbit, i));
        t.bound = c1 * std::exp(-a.holder_exponent() * (pair.radius - std::abs(static_cast<double>(i))));
        t.pass = t.norm <= t.bound * (1 + 1e-12) + 1e-300;
        out.push_back(t);
    }
    return out;
}

ExpansionReport error_expansion(const FiniteRangeCocycle& a, const ShadowPair& pair, std::ptrdiff_t first,
                                int length) {
    if (length < 1 || length > 200) throw Error(ErrorCode::InvalidArgument, "expansion length must be in [1, 200]");
    const int r = a.range();
    const int d = a.dimension();
    const Point target{pair.target};
    const Point orbit{pair.orbit};
    if (!covers(target, first - r, first + length - 1 + r))
        throw Error(ErrorCode::WindowTooShort, "target window too short for the expansion range");

    ExpansionReport report;
    report.first = first;
    report.length = length;
    report.holder_C = holder_constant(a, r);
    report.mu = a.norm_bound();

    std::vector<Matrix> terms(length + 1, Matrix::Zero(d, d));
    std::vector<double> norm_terms(length + 1, 0.0);
    terms[0] = Matrix::Identity(d, d);
    norm_terms[0] = 1.0;
    Matrix exact = Matrix::Identity(d, d);
    std::ptrdiff_t t_max = 0;
    for (int j = 0; j < length; ++j) {
        const std::ptrdiff_t t = first + j;
        t_max = std::max(t_max, static_cast<std::ptrdiff_t>(std::abs(t)));
        const Matrix& periodic = a.evaluate(orbit, t);
        const Matrix error = a.evaluate(target, t) - periodic;
        const double pn = spectral_norm(periodic);
        const double en = spectral_norm(error);
        for (int k = j + 1; k >= 1; --k) {
            terms[k] = periodic * terms[k] + error * terms[k - 1];
            norm_terms[k] = pn * norm_terms[k] + en * norm_terms[k - 1];
        }
        terms[0] = periodic * terms[0];
        norm_terms[0] *= pn;
        exact = a.evaluate(target, t) * exact;
    }

    Matrix sum = Matrix::Zero(d, d);
    for (const auto& b : terms) sum += b;
    const double exact_norm = spectral_norm(exact);
    report.identity_residual = spectral_norm(exact - sum) / exact_norm;

    const double log_error = std::log(report.holder_C) - a.holder_exponent() * (pair.radius - static_cast<double>(t_max));
    for (int k = 0; k <= length; ++k) {
        ExpansionTerm term;
        term.order = k;
        term.norm = spectral_norm(terms[k]);
        term.norm_bound = norm_terms[k];
        const double log_closed = std::log(binomial(length, k)) + (k > 0 ? k * log_error : 0.0) +
                                  report.mu * (length - k);
        term.closed_bound = std::exp(log_closed);
        const double tol = 1e-12 * exact_norm;
        term.pass = term.norm <= term.norm_bound * (1 + 1e-12) + tol &&
                    term.norm_bound <= term.closed_bound * (1 + 1e-9) + tol;
        report.terms.push_back(term);
    }
    return report;
}

KalininReport kalinin_gap(const FiniteRangeCocycle& a, const ShiftSpace& shift, double lambda, int depth,
                          const SampleSpec& spec, Execution exec, std::uint64_t symbol_cap) {
    if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be >= 1");
    const auto samples = draw_samples(shift, spec, depth + a.range(), symbol_cap);
    if (samples.empty()) throw Error(ErrorCode::InsufficientSamples, "sample specification selects no orbits");

    std::vector<std::vector<double>> growth(samples.size());
    auto run = [&](std::ptrdiff_t s) {
        ScaledMatrix m = ScaledMatrix::identity(a.dimension());
        auto& g = growth[s];
        g.resize(depth);
        for (int n = 1; n <= depth; ++n) {
            m.left_multiply(a.evaluate(samples[s].point, n - 1));
            g[n - 1] = m.log_norm() / n - lambda;
        }
    };
    const auto count = static_cast<std::ptrdiff_t>(samples.size());
    if (exec == Execution::Parallel) {
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t s = 0; s < count; ++s) {
            try {
                run(s);
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (std::ptrdiff_t s = 0; s < count; ++s) run(s);
    }

    KalininReport report;
    report.lambda = lambda;
    report.depth = depth;
    report.sample_count = samples.size();
    report.excess.assign(depth, -INFINITY);
    report.witness.assign(depth, "");
    for (std::size_t s = 0; s < samples.size(); ++s) {
        for (int n = 0; n < depth; ++n) {
            if (growth[s][n] > report.excess[n]) {
                report.excess[n] = growth[s][n];
                report.witness[n] = samples[s].label;
            }
        }
    }
    return report;
}

BinomialBound binom_bound_check(double kappa, int n_max) {
    if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidArgument, "kappa must be > 0");
    if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
    BinomialBound out;
    out.kappa = kappa;
    out.n_max = n_max;
    double best = -INFINITY;
    double best_from_2 = -INFINITY;
    for (int n = 1; n <= n_max; ++n) {
        for (int k = 1; k <= n; ++k) {
            const double log_choose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
            const double v = log_choose - kappa * n * static_cast<double>(k);
            if (v > best) {
                best = v;
                out.argmax_n = n;
                out.argmax_k = k;
            }
            if (n >= 2) best_from_2 = std::max(best_from_2, v);
        }
    }
    out.constant = std::exp(best);
    out.constant_from_n2 = n_max >= 2 ? std::exp(best_from_2) : 0.0;
    return out;
}

std::vector<ComparisonRow> singular_comparison(const FiniteRangeCocycle& a, const Word& omega,
                                               const ShiftSpace& shift, double gamma, int n) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw Error(ErrorCode::InvalidArgument, "gamma must lie in (0, 1)");
    const ShadowPair pair = shadow_pair(omega, shift, n);
    const int r = a.range();
    const int first = static_cast<int>(std::floor(gamma * n));
    const int last = first + shift.closing_constant();
    const Point target{omega};
    const Point orbit{pair.orbit};
    if (last < 1) throw Error(ErrorCode::InvalidArgument, "gamma * n is below one step");
    if (!covers(target, -r, last - 1 + r))
        throw Error(ErrorCode::WindowTooShort, "window too short for products of length " + std::to_string(last));

    std::vector<ComparisonRow> rows;
    for (int i = std::max(first, 1); i <= last; ++i) {
        ComparisonRow row;
        row.length = i;
        const Matrix pt = product(a, target, i);
        const Matrix pp = product(a, orbit, i);
        row.sigma_target = raw_singular_values(pt);
        row.sigma_periodic = raw_singular_values(pp);
        row.error_norm = spectral_norm(pt - pp);
        double with_error = 1.0, without = 1.0;
        for (int t = 0; t < i; ++t) {
            const double an = spectral_norm(a.evaluate(orbit, t));
            const double en = spectral_norm(a.evaluate(target, t) - a.evaluate(orbit, t));
            with_error *= an + en;
            without *= an;
        }
        row.expansion_bound = with_error - without;
        const double tol = 1e-12 * std::max(1.0, row.sigma_target.front());
        row.pass = row.error_norm <= row.expansion_bound + tol;
        for (std::size_t j = 0; j < row.sigma_target.size(); ++j) {
            row.difference.push_back(std::abs(row.sigma_target[j] - row.sigma_periodic[j]));
            if (row.difference.back() > row.error_norm + tol) row.pass = false;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace domsplit

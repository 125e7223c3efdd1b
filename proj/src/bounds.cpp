#include "domsplit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "domsplit/error.hpp"

namespace domsplit {

namespace {

// A linear constraint slope * gamma < rhs.
struct Constraint {
    std::string name;
    double slope;
    double rhs;
};

class GammaRange {
public:
    GammaRange() { lo_names_.push_back("gamma>0"); hi_names_.push_back("gamma<1"); }

    void add(const Constraint& c) {
        if (c.slope > 0) {
            tighten_hi(c.rhs / c.slope, c.name);
        } else if (c.slope < 0) {
            tighten_lo(c.rhs / c.slope, c.name);
        } else if (!(0.0 < c.rhs)) {
            empty_ = true;
            hi_names_ = {c.name};
        }
    }

    void tighten_lo(double v, const std::string& name) {
        if (v > lo_) {
            lo_ = v;
            lo_names_ = {name};
        } else if (v == lo_) {
            lo_names_.push_back(name);
        }
    }

    void tighten_hi(double v, const std::string& name) {
        if (v < hi_) {
            hi_ = v;
            hi_names_ = {name};
        } else if (v == hi_) {
            hi_names_.push_back(name);
        }
    }

    FeasibilityResult result() const {
        FeasibilityResult r;
        r.feasible = !empty_ && lo_ < hi_;
        if (r.feasible) {
            r.lo = lo_;
            r.hi = hi_;
        } else {
            r.lo = r.hi = std::clamp(hi_, 0.0, 1.0);
            if (empty_ || hi_ <= 0.0) r.lo = r.hi = 0.0;
        }
        r.binding = lo_names_;
        r.binding.insert(r.binding.end(), hi_names_.begin(), hi_names_.end());
        return r;
    }

private:
    double lo_ = 0.0;
    double hi_ = 1.0;
    bool empty_ = false;
    std::vector<std::string> lo_names_;
    std::vector<std::string> hi_names_;
};

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace

FeasibilityResult gamma_feasible_constant(const FeasibilityParams& p, int k) {
    require(k >= 1 && k < static_cast<int>(p.lambda.size()), "need 1 <= k < number of exponents");
    for (std::size_t i = 1; i < p.lambda.size(); ++i)
        if (p.lambda[i] > p.lambda[i - 1]) throw Error(ErrorCode::CenterNotSorted, "exponents must be non-increasing");
    const double lk = p.lambda[k - 1];
    const double lk1 = p.lambda[k];
    require(lk > lk1, "need lambda_k > lambda_{k+1}");
    require(p.epsilon > 0 && p.kappa > 0 && p.beta > 0 && p.epsilon0 >= 0, "parameters must be positive");
    if (!(lk - lk1 - 2 * p.epsilon > 0))
        throw Error(ErrorCode::Ineq4Violated, "epsilon must be below (lambda_k - lambda_{k+1}) / 2");

    GammaRange range;
    range.add({"ineq1", std::abs(lk - p.epsilon), p.epsilon0});
    range.add({"ineq2", std::abs(lk1 + p.epsilon), p.epsilon0});
    range.add({"ineq3", p.mu + p.beta + p.kappa, p.beta - p.epsilon0});
    auto r = range.result();
    r.ineq4 = true;
    return r;
}

FeasibilityResult gamma_feasible_narrow(double beta, double mu, double lambda1, double lambda2, double delta,
                                        double epsilon, double kappa) {
    require(lambda1 > lambda2, "need lambda1 > lambda2");
    require(delta >= 0 && epsilon >= 0 && kappa >= 0 && beta > 0, "parameters must be non-negative");

    GammaRange range;
    // Leading sigma_1 term must beat the shadowing error.
    range.add({"sigma1_error", mu - lambda1 - delta - epsilon + beta + kappa, beta - 2 * delta - epsilon});
    // sigma_2 upper bound must beat the shadowing error.
    range.add({"sigma2_error", mu - lambda2 - delta + beta + kappa, beta + 2 * delta + epsilon});
    // Gap between the two: gamma >= (4 delta + 2 eps) / (lambda1 - lambda2 + eps).
    range.tighten_lo((4 * delta + 2 * epsilon) / (lambda1 - lambda2 + epsilon), "gap");
    return range.result();
}

bool narrow_delta_condition(double beta, double lambda1, double lambda2, double delta) {
    const double spread = lambda1 - lambda2;
    const double lhs = 4 * delta / spread;
    return lhs < std::min((beta - 2 * delta) / beta, (beta + delta) / (spread + beta));
}

double delta_max(double beta, double lambda1, double lambda2) {
    require(lambda1 > lambda2, "need lambda1 > lambda2");
    require(beta > 0 && beta <= 1, "beta must lie in (0, 1]");
    // The condition holds at 0 and fails once delta >= beta / 2.
    double lo = 0.0;
    double hi = beta / 2;
    for (int i = 0; i < 200 && hi - lo > std::numeric_limits<double>::min(); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (narrow_delta_condition(beta, lambda1, lambda2, mid) ? lo : hi) = mid;
    }
    return lo;
}

bool sl2_feasible(double lambda, double beta, double delta) {
    require(lambda > 0, "lambda must be > 0");
    require(beta > 0 && beta <= 1, "beta must lie in (0, 1]");
    require(delta >= 0, "delta must be >= 0");
    return 2 * delta / (lambda + delta) < (lambda * beta - 2 * delta) / (lambda * beta);
}

ConjugacyDelta conjugacy_delta(double theta, double omega, double lambda) {
    require(theta > 0 && theta <= 1 && omega > 0 && omega <= 1, "theta and omega must lie in (0, 1]");
    require(lambda > 0, "lambda must be > 0");
    const double from_theta = lambda * (1 - theta);
    const double from_omega = lambda * (1 - omega) / omega;
    if (from_theta >= from_omega) return {from_theta, "theta"};
    return {from_omega, "omega"};
}

double conjugacy_threshold() { return (std::sqrt(5.0) - 1.0) / 2.0; }

}  // namespace domsplit

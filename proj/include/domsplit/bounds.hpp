#pragma once

// Closed-form feasibility calculators for the parameter systems behind the
// splitting theorems. Everything is plain double arithmetic.

#include <string>
#include <vector>

namespace domsplit {

struct FeasibilityResult {
    bool feasible = false;
    double lo = 0.0;  // admissible gamma lie in (lo, hi); lo = hi = 0 when empty
    double hi = 0.0;
    std::vector<std::string> binding;  // names of the constraints that set lo / hi
    bool ineq4 = true;                 // constant-data separation condition
};

struct FeasibilityParams {
    double gamma = 0.5;  // not used by the interval calculators
    double epsilon = 0.01;
    double epsilon0 = 0.1;
    double kappa = 0.01;
    double beta = 1.0;
    double mu = 1.0;
    std::vector<double> lambda;  // non-increasing
};

// gamma range for the constant-data system:
//   gamma |lambda_k - eps|      < eps0
//   gamma |lambda_{k+1} + eps|  < eps0
//   mu gamma - beta (1 - gamma) + gamma kappa < -eps0
// intersected with (0, 1). k is 1-based. Throws Ineq4Violated when
// eps >= (lambda_k - lambda_{k+1}) / 2.
FeasibilityResult gamma_feasible_constant(const FeasibilityParams& p, int k);

// gamma range for delta-narrow GL(2) data: lower bound (4 delta + 2 eps) /
// (lambda1 - lambda2 + eps), upper bounds from the two lower-order terms.
FeasibilityResult gamma_feasible_narrow(double beta, double mu, double lambda1, double lambda2, double delta,
                                        double epsilon, double kappa);

// 4 delta / (l1 - l2) < min{(beta - 2 delta) / beta, (beta + delta) / (l1 - l2 + beta)}
bool narrow_delta_condition(double beta, double lambda1, double lambda2, double delta);

// Supremum of the deltas satisfying narrow_delta_condition, by bisection.
double delta_max(double beta, double lambda1, double lambda2);

// 2 delta / (lambda + delta) < (lambda beta - 2 delta) / (lambda beta)
bool sl2_feasible(double lambda, double beta, double delta);

struct ConjugacyDelta {
    double delta = 0.0;
    std::string binding;  // "theta" or "omega"
};

// Smallest delta with theta <= (lambda - delta)/lambda and
// omega <= lambda/(lambda + delta).
ConjugacyDelta conjugacy_delta(double theta, double omega, double lambda);

// Positive root of x^2 + x - 1.
double conjugacy_threshold();

}  // namespace domsplit

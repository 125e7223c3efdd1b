#pragma once

// Numerical replay of the shadowing argument: close a window into a periodic
// orbit, measure the generator errors along it, expand the perturbed product
// into error-order terms and compare against the closed-form bounds.

#include <string>
#include <vector>

#include "domsplit/cocycle.hpp"
#include "domsplit/domination.hpp"
#include "domsplit/parallel.hpp"
#include "domsplit/sft.hpp"

namespace domsplit {

struct ShadowPair {
    Word target;       // omega; may extend beyond the agreement radius
    CyclicWord orbit;  // p, with p_i = omega_i for |i| <= radius
    int radius = 0;
    int connector_length = 0;
};

// Closes omega_{-n..n} (n defaults to the window radius) with the shortest
// connector and rotates the cyclic word so that position 0 matches omega_0.
ShadowPair shadow_pair(const Word& omega, const ShiftSpace& shift, int radius = -1);

struct ErrorTerm {
    std::ptrdiff_t i = 0;
    double norm = 0.0;   // ||A(sigma^i omega) - A(sigma^i p)||
    double bound = 0.0;  // C1 e^{-beta (n - |i|)}
    bool pass = false;
};

// |i| <= i_max; i_max < 0 means radius - range. C1 = holder_constant(A, range).
std::vector<ErrorTerm> error_terms(const FiniteRangeCocycle& a, const ShadowPair& pair, int i_max = -1);

struct ExpansionTerm {
    int order = 0;             // number of error factors k
    double norm = 0.0;         // ||B_k||
    double norm_bound = 0.0;   // same expansion over factor norms
    double closed_bound = 0.0; // C(L,k) (C1 e^{-beta(n - t_max)})^k e^{mu (L-k)}
    bool pass = false;
};

struct ExpansionReport {
    std::ptrdiff_t first = 0;
    int length = 0;
    double holder_C = 0.0;
    double mu = 0.0;
    double identity_residual = 0.0;  // ||prod A(omega) - sum_k B_k|| / ||prod A(omega)||
    std::vector<ExpansionTerm> terms;  // k = 0..length
};

// Expands prod_{t=first}^{first+length-1} [A(sigma^t p) + E_t] by the number of
// E factors. Terms are exact matrices; length is capped at 200.
ExpansionReport error_expansion(const FiniteRangeCocycle& a, const ShadowPair& pair, std::ptrdiff_t first, int length);

struct KalininReport {
    double lambda = 0.0;
    int depth = 0;
    std::vector<double> excess;  // max over samples of (1/n) log||A^n|| - lambda
    std::vector<std::string> witness;
    std::size_t sample_count = 0;
};

KalininReport kalinin_gap(const FiniteRangeCocycle& a, const ShiftSpace& shift, double lambda, int depth,
                          const SampleSpec& spec, Execution exec = Execution::Parallel,
                          std::uint64_t symbol_cap = kDefaultSymbolCap);

struct BinomialBound {
    double kappa = 0.0;
    int n_max = 0;
    double constant = 0.0;  // max over 1 <= k <= n <= n_max of C(n,k) e^{-n k kappa}
    int argmax_n = 0;
    int argmax_k = 0;
    double constant_from_n2 = 0.0;  // same maximum restricted to n >= 2
};

BinomialBound binom_bound_check(double kappa, int n_max);

struct ComparisonRow {
    int length = 0;  // i
    std::vector<double> sigma_target;
    std::vector<double> sigma_periodic;
    std::vector<double> difference;
    double error_norm = 0.0;       // ||A^i(omega) - A^i(p)||, the Weyl bound on every difference
    double expansion_bound = 0.0;  // prod(||A_t|| + ||E_t||) - prod ||A_t||
    bool pass = false;
};

// Rows for i = floor(gamma n) .. floor(gamma n) + ell, products started at 0.
std::vector<ComparisonRow> singular_comparison(const FiniteRangeCocycle& a, const Word& omega,
                                               const ShiftSpace& shift, double gamma, int n);

}  // namespace domsplit

#pragma once

// Small dense linear algebra used throughout: singular values, compound
// (exterior power) matrices, overflow-safe long products and subspace angles.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace domsplit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Default refusal threshold for singular_values(): sigma_1 / sigma_d above
// this is reported as NumericalBreakdown.
inline constexpr double kDefaultConditionCap = 1e15;

struct SingularSpectrum {
    std::vector<double> values;  // non-increasing, positive

    double norm() const { return values.front(); }
    double conorm() const { return values.back(); }
    std::size_t size() const { return values.size(); }
};

SingularSpectrum singular_values(const Matrix& m, double condition_cap = kDefaultConditionCap);

// Plain SVD values without the conditioning check (may contain zeros).
std::vector<double> raw_singular_values(const Matrix& m);

double spectral_norm(const Matrix& m);

double binomial(int n, int k);

// All k-subsets of {0..d-1} in lexicographic order; the basis of Lambda^k R^d.
std::vector<std::vector<int>> k_subsets(int d, int k);

// k-th compound matrix: entry (I,J) is the minor det(M[I,J]).
Matrix compound(const Matrix& m, int k);

// A matrix together with an additive log-scale: value = exp(log_scale) * mantissa.
// Used for products of thousands of factors.
struct ScaledMatrix {
    Matrix mantissa;
    double log_scale = 0.0;

    static ScaledMatrix identity(int d);

    // Left-multiplies by `factor` and rescales by an exact power of two once
    // the norm leaves [e^-300, e^300].
    void left_multiply(const Matrix& factor);

    double log_norm() const;
    // Only sigma_1 is reliable once sigma_1/sigma_d passes ~1e16; small
    // singular values of long products come from compound products instead.
    std::vector<double> log_singular_values() const;
    Matrix value() const;
};

// Orthonormal basis for the column span of m (thin Householder QR).
Matrix orthonormal_basis(const Matrix& m);

// Largest principal angle between the column spans of a and b (equal rank).
double max_principal_angle(const Matrix& a, const Matrix& b);

// Smallest principal angle between two subspaces of complementary dimension.
double min_principal_angle(const Matrix& a, const Matrix& b);

// Spectral radius via the real Schur form (Eigen::EigenSolver).
double spectral_radius(const Matrix& m);

// Ordinary least squares fit y = intercept + slope * x.
struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double residual = 0.0;  // root mean square residual
};

LinearFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace domsplit

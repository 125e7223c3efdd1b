#include "domsplit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "domsplit/error.hpp"

namespace domsplit {

namespace {

const double kRescaleHigh = std::exp(300.0);
const double kRescaleLow = std::exp(-300.0);

}  // namespace

std::vector<double> raw_singular_values(const Matrix& m) {
    if (m.size() == 0) return {};
    if (m.rows() == 1 && m.cols() == 1) return {std::abs(m(0, 0))};
    Eigen::JacobiSVD<Matrix> svd(m);
    const Vector& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

SingularSpectrum singular_values(const Matrix& m, double condition_cap) {
    if (m.rows() != m.cols() || m.size() == 0)
        throw Error(ErrorCode::InvalidArgument, "singular_values expects a non-empty square matrix");
    if (!m.allFinite()) throw Error(ErrorCode::NumericalBreakdown, "matrix has non-finite entries");
    SingularSpectrum out{raw_singular_values(m)};
    const double top = out.values.front();
    const double bottom = out.values.back();
    if (!(bottom > 0.0) || top / bottom > condition_cap)
        throw Error(ErrorCode::NumericalBreakdown, "condition number exceeds cap");
    return out;
}

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return raw_singular_values(m).front();
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

std::vector<std::vector<int>> k_subsets(int d, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > d) return out;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == d - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

Matrix compound(const Matrix& m, int k) {
    const int d = static_cast<int>(m.rows());
    if (m.rows() != m.cols() || k < 0 || k > d)
        throw Error(ErrorCode::InvalidArgument, "compound: need square matrix and 0 <= k <= d");
    if (k == 0) return Matrix::Ones(1, 1);
    if (k == 1) return m;
    const auto subsets = k_subsets(d, k);
    const auto n = static_cast<Eigen::Index>(subsets.size());
    Matrix out(n, n);
    Matrix minor(k, k);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) minor(i, j) = m(subsets[r][i], subsets[c][j]);
            out(r, c) = minor.determinant();
        }
    }
    return out;
}

ScaledMatrix ScaledMatrix::identity(int d) { return {Matrix::Identity(d, d), 0.0}; }

void ScaledMatrix::left_multiply(const Matrix& factor) {
    mantissa = factor * mantissa;
    const double size = mantissa.cwiseAbs().maxCoeff();
    if ((size > kRescaleHigh || size < kRescaleLow) && size > 0.0 && std::isfinite(size)) {
        int exponent = 0;
        std::frexp(size, &exponent);
        mantissa *= std::ldexp(1.0, -exponent);
        log_scale += exponent * std::log(2.0);
    }
}

double ScaledMatrix::log_norm() const { return std::log(spectral_norm(mantissa)) + log_scale; }

std::vector<double> ScaledMatrix::log_singular_values() const {
    auto s = raw_singular_values(mantissa);
    for (double& v : s) v = std::log(v) + log_scale;
    return s;
}

Matrix ScaledMatrix::value() const { return mantissa * std::exp(log_scale); }

Matrix orthonormal_basis(const Matrix& m) {
    Eigen::HouseholderQR<Matrix> qr(m);
    return qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
}

double max_principal_angle(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::InvalidArgument, "max_principal_angle: subspace dimensions differ");
    if (a.cols() == 0) return 0.0;
    const Matrix qa = orthonormal_basis(a);
    const Matrix qb = orthonormal_basis(b);
    const Matrix outside = qa - qb * (qb.transpose() * qa);
    return std::asin(std::min(1.0, spectral_norm(outside)));
}

double min_principal_angle(const Matrix& a, const Matrix& b) {
    if (a.cols() == 0 || b.cols() == 0) return M_PI / 2;
    const Matrix qa = orthonormal_basis(a);
    const Matrix qb = orthonormal_basis(b);
    const double c = spectral_norm(qa.transpose() * qb);
    return std::acos(std::min(1.0, c));
}

double spectral_radius(const Matrix& m) {
    if (m.rows() == 1) return std::abs(m(0, 0));
    Eigen::EigenSolver<Matrix> es(m, false);
    if (es.info() != Eigen::Success)
        throw Error(ErrorCode::NumericalBreakdown, "eigenvalue iteration did not converge");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

LinearFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw Error(ErrorCode::InsufficientSamples, "line fit needs at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw Error(ErrorCode::InsufficientSamples, "line fit needs distinct abscissae");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace domsplit

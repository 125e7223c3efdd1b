#pragma once

// Test-only reference computations. None of these call into the library's
// implementation paths; they exist to produce expected values independently.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXd;

// All sequences of length n over {1..m}, by counting in base m.
inline std::vector<std::vector<int>> all_sequences(int m, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> s(n, 1);
    while (true) {
        out.push_back(s);
        int i = n - 1;
        while (i >= 0 && s[i] == m) s[i--] = 1;
        if (i < 0) break;
        ++s[i];
    }
    return out;
}

inline bool cyclic_ok(const std::vector<std::vector<int>>& q, const std::vector<int>& w) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!q[w[i] - 1][w[(i + 1) % w.size()] - 1]) return false;
    return true;
}

inline bool linear_ok(const std::vector<std::vector<int>>& q, const std::vector<int>& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (!q[w[i] - 1][w[i + 1] - 1]) return false;
    return true;
}

// trace(Q^n) by naive repeated multiplication in 64-bit integers.
inline std::uint64_t trace_power(const std::vector<std::vector<int>>& q, int n) {
    const std::size_t m = q.size();
    std::vector<std::vector<std::uint64_t>> p(m, std::vector<std::uint64_t>(m, 0));
    for (std::size_t i = 0; i < m; ++i) p[i][i] = 1;
    for (int s = 0; s < n; ++s) {
        std::vector<std::vector<std::uint64_t>> r(m, std::vector<std::uint64_t>(m, 0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t k = 0; k < m; ++k) r[i][j] += p[i][k] * static_cast<std::uint64_t>(q[k][j]);
        p = r;
    }
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < m; ++i) t += p[i][i];
    return t;
}

// Shortest connector length from a to b by enumerating candidate words of
// increasing length.
inline int connector_length(const std::vector<std::vector<int>>& q, int a, int b) {
    const int m = static_cast<int>(q.size());
    for (int len = 0; len <= m; ++len) {
        if (len == 0) {
            if (q[a - 1][b - 1]) return 0;
            continue;
        }
        for (const auto& c : all_sequences(m, len)) {
            std::vector<int> w{a};
            w.insert(w.end(), c.begin(), c.end());
            w.push_back(b);
            if (linear_ok(q, w)) return len;
        }
    }
    return -1;
}

// Singular values as square roots of the eigenvalues of M^T M.
inline std::vector<double> singular_values_gram(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m.transpose() * m);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
    std::sort(out.rbegin(), out.rend());
    return out;
}

// Divide-and-conquer SVD; the library itself only uses the Jacobi variant.
inline std::vector<double> singular_values_bdc(const Mat& m) {
    Eigen::BDCSVD<Mat> svd(m);
    const auto& v = svd.singularValues();
    return std::vector<double>(v.data(), v.data() + v.size());
}

// Cofactor expansion along the first row, recursive.
inline double det(const Mat& m) {
    const auto n = m.rows();
    if (n == 1) return m(0, 0);
    double s = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        Mat minor(n - 1, n - 1);
        for (Eigen::Index r = 1; r < n; ++r)
            for (Eigen::Index c = 0, cc = 0; c < n; ++c)
                if (c != j) minor(r - 1, cc++) = m(r, c);
        s += ((j % 2) ? -1.0 : 1.0) * m(0, j) * det(minor);
    }
    return s;
}

inline Mat random_matrix(std::mt19937_64& rng, int d, double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Mat m(d, d);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
    return m;
}

// Closed form of the narrow-data delta bound: with g = l1 - l2 the two
// conditions give delta < g beta / (4 beta + 2 g) and delta < g beta / (3 g + 4 beta);
// the second is always the smaller.
inline double delta_max_closed_form(double beta, double l1, double l2) {
    const double g = l1 - l2;
    return std::min(g * beta / (4 * beta + 2 * g), g * beta / (3 * g + 4 * beta));
}

// max over 1<=k<=n<=n_max of C(n,k) e^{-n k kappa}, with C(n,k) from Pascal's
// triangle in long double.
inline double binomial_scan(double kappa, int n_max, int n_min = 1) {
    std::vector<long double> row{1.0L};
    long double best = 0;
    for (int n = 1; n <= n_max; ++n) {
        std::vector<long double> next(n + 1);
        next[0] = next[n] = 1.0L;
        for (int k = 1; k < n; ++k) next[k] = row[k - 1] + row[k];
        row = next;
        if (n < n_min) continue;
        for (int k = 1; k <= n; ++k) best = std::max(best, row[k] * std::exp(-static_cast<long double>(kappa) * n * k));
    }
    return static_cast<double>(best);
}

}  // namespace oracle

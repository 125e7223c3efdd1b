#include <doctest.h>

#include <cmath>
#include <random>

#include "domsplit/cocycle.hpp"
#include "domsplit/error.hpp"
#include "domsplit/io.hpp"
#include "domsplit/linalg.hpp"
#include "oracles.hpp"
#include "test_shifts.hpp"

using namespace domsplit;

namespace {

Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

Matrix diag2(double a, double b) { return mat2(a, 0, 0, b); }

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

FiniteRangeCocycle range_one() { return load_cocycle(DOMSPLIT_DATA_DIR "/range_one.toml"); }

}  // namespace

TEST_CASE("singular_values examples") {
    auto s = singular_values(diag2(3, -2));
    CHECK(s.values[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(s.values[1] == doctest::Approx(2.0).epsilon(1e-14));
    s = singular_values(mat2(0, 0.5, 2, 0));
    CHECK(s.norm() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s.conorm() == doctest::Approx(0.5).epsilon(1e-14));
    s = singular_values(Matrix::Identity(4, 4));
    for (double v : s.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(code_of([] { singular_values(diag2(1, 1e-17)); }) == ErrorCode::NumericalBreakdown);
    CHECK(code_of([] { singular_values(diag2(1, std::nan(""))); }) == ErrorCode::NumericalBreakdown);
}

TEST_CASE("singular values agree with the Gram-matrix oracle") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const int d = 1 + t % 5;
        const Matrix m = oracle::random_matrix(rng, d);
        const auto got = raw_singular_values(m);
        const auto want = oracle::singular_values_gram(m);
        for (int i = 0; i < d; ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-7 * want[0]);
    }
}

TEST_CASE("compound matrices: exterior-power norm identity on 500 random matrices") {
    std::mt19937_64 rng(20240501);
    for (int t = 0; t < 500; ++t) {
        const int d = 1 + t % 5;
        const Matrix m = oracle::random_matrix(rng, d);
        const auto sv = raw_singular_values(m);
        double prod = 1.0;
        for (int k = 1; k <= d; ++k) {
            prod *= sv[k - 1];
            const double n = spectral_norm(compound(m, k));
            CHECK(std::abs(n - prod) <= 1e-9 * prod);
        }
        CHECK(compound(m, d)(0, 0) == doctest::Approx(oracle::det(m)).epsilon(1e-10));
        CHECK((compound(m, 1) - m).norm() == 0.0);
    }
}

TEST_CASE("compound of a product is the product of compounds") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 50; ++t) {
        const Matrix a = oracle::random_matrix(rng, 4), b = oracle::random_matrix(rng, 4);
        for (int k = 1; k <= 4; ++k) {
            const Matrix lhs = compound(a * b, k), rhs = compound(a, k) * compound(b, k);
            CHECK((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
        }
    }
    CHECK(k_subsets(4, 2) == std::vector<std::vector<int>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("Weyl perturbation bound on 1000 random pairs") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> scale(1e-6, 1.0);
    for (int t = 0; t < 1000; ++t) {
        const int d = 1 + t % 5;
        const Matrix m = oracle::random_matrix(rng, d);
        const Matrix e = scale(rng) * oracle::random_matrix(rng, d);
        const auto s0 = raw_singular_values(m), s1 = raw_singular_values(m + e);
        const double bound = spectral_norm(e);
        for (int i = 0; i < d; ++i) CHECK(std::abs(s1[i] - s0[i]) <= bound + 1e-12);
    }
}

TEST_CASE("inverse singular values are reversed reciprocals") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 200; ++t) {
        const int d = 1 + t % 5;
        Matrix m = oracle::random_matrix(rng, d);
        m += 3.0 * Matrix::Identity(d, d);  // keep away from singular
        const auto s = singular_values(m).values;
        const auto si = singular_values(Matrix(m.inverse())).values;
        for (int i = 0; i < d; ++i) CHECK(std::abs(si[d - 1 - i] - 1.0 / s[i]) <= 1e-9 * (1.0 / s[i]));
    }
}

TEST_CASE("evaluate") {
    const auto a = FiniteRangeCocycle::locally_constant({diag2(2, 0.5), diag2(3, 1.0 / 3)});
    CHECK(a.evaluate(Word({2, 1, 2}, 1), 0) == diag2(2, 0.5));
    CHECK(a.evaluate(CyclicWord({1, 2}), 3) == diag2(3, 1.0 / 3));

    const auto b = range_one();
    CHECK(b.evaluate(Word::centered({1, 2, 1}), 0) == mat2(3, 1, 2, 1));
    CHECK(b.lookup({1, 2, 1}) == mat2(3, 1, 2, 1));
    CHECK(code_of([&] { b.evaluate(Word({1, 2}, 0), 0); }) == ErrorCode::WindowTooShort);
    CHECK(b.evaluate(CyclicWord({1, 2}), 0) == b.lookup({2, 1, 2}));
}

TEST_CASE("cocycle construction rejects bad tables") {
    CHECK(code_of([] { FiniteRangeCocycle::locally_constant({diag2(1, 0)}); }) == ErrorCode::NumericalBreakdown);
    CHECK(code_of([] { FiniteRangeCocycle::locally_constant({diag2(1, 1)}, 1.5); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { FiniteRangeCocycle::create(2, 0, 1.0, {{{1}, diag2(2, 0.5)}}, 0.1); }) ==
          ErrorCode::InvalidArgument);
    const auto a = FiniteRangeCocycle::locally_constant({diag2(2, 0.5)});
    CHECK(a.norm_bound() == doctest::Approx(std::log(2.0)));
    CHECK(code_of([&] { a.check_covers(ShiftSpace::build(fixtures::kFull2)); }) == ErrorCode::InadmissibleWindow);
    CHECK(code_of([&] { a.evaluate(CyclicWord({2}), 0); }) == ErrorCode::InadmissibleWindow);
}

TEST_CASE("product examples") {
    const auto c = FiniteRangeCocycle::locally_constant({diag2(2, 0.5), diag2(2, 0.5)});
    CHECK((product(c, CyclicWord({1, 2}), 5) - diag2(32, 1.0 / 32)).norm() < 1e-14);
    CHECK(product(c, CyclicWord({1}), 0) == Matrix::Identity(2, 2));

    const Matrix m1 = mat2(2, 1, 1, 1), m2 = mat2(3, 1, 2, 1);
    const auto pp = FiniteRangeCocycle::locally_constant({m1, m2});
    CHECK(product(pp, CyclicWord({1, 2}), 2) == mat2(7, 4, 5, 3));
    CHECK(product(pp, Word({1, 2}, 0), 2) == m2 * m1);
    CHECK(code_of([&] { product(pp, Word({1, 2}, 0), 3); }) == ErrorCode::WindowTooShort);
}

TEST_CASE("cocycle law on random words") {
    std::mt19937_64 rng(5);
    const auto a = range_one();
    const auto full = ShiftSpace::build(fixtures::kFull2);
    for (int t = 0; t < 100; ++t) {
        const Word w = random_window(full, 30, rng);
        const int m = 1 + t % 7, n = 1 + (t / 7) % 9;
        const std::ptrdiff_t s = -10 + t % 5;
        const Matrix whole = product(a, w, m + n, s);
        const Matrix split = product(a, w, m, s + n) * product(a, w, n, s);
        CHECK((whole - split).norm() <= 1e-12 * whole.norm());
    }
}

TEST_CASE("scaled products survive thousands of factors") {
    const auto c = FiniteRangeCocycle::locally_constant({diag2(2, 0.5)});
    const auto p = scaled_product(c, CyclicWord({1}), 5000);
    const auto ls = p.log_singular_values();
    CHECK(ls[0] == doctest::Approx(5000 * std::log(2.0)).epsilon(1e-12));
    // The bottom singular value is below the mantissa's resolution; the
    // top-k volume of a compound product carries it instead.
    const auto vol = scaled_product(exterior_power(c, 2), CyclicWord({1}), 5000);
    CHECK(vol.log_norm() - ls[0] == doctest::Approx(-5000 * std::log(2.0)).epsilon(1e-12));
    CHECK(p.log_norm() == doctest::Approx(5000 * std::log(2.0)).epsilon(1e-12));

    const auto b = range_one();
    const auto w = CyclicWord({1, 2, 2, 1, 1});
    const Matrix plain = product(b, w, 40, 3);
    CHECK((scaled_product(b, w, 40, 3).value() - plain).norm() <= 1e-12 * plain.norm());
}

TEST_CASE("exterior_power examples") {
    const auto a = FiniteRangeCocycle::locally_constant({diag2(2, 0.5), mat2(0, 0.5, 2, 0)});
    const auto top = exterior_power(a, 2);
    CHECK(top.dimension() == 1);
    CHECK(top.matrices()[0](0, 0) == doctest::Approx(1.0));
    CHECK(top.matrices()[1](0, 0) == doctest::Approx(-1.0));
    const auto same = exterior_power(a, 1);
    CHECK(same.matrices() == a.matrices());
    CHECK(same.windows() == a.windows());

    const auto b = range_one();
    const auto b2 = exterior_power(b, 2);
    for (std::size_t i = 0; i < b.size(); ++i)
        CHECK(b2.matrices()[i](0, 0) == doctest::Approx(oracle::det(b.matrices()[i])));
}

TEST_CASE("conjugated cocycle") {
    const auto a = FiniteRangeCocycle::locally_constant({mat2(2, 1, 1, 1), mat2(3, 1, 2, 1)});
    const Matrix p = mat2(1, 2, 0, 1);
    const auto b = conjugated(a, p);
    const Matrix pa = product(a, CyclicWord({1, 2, 2}), 3), pb = product(b, CyclicWord({1, 2, 2}), 3);
    CHECK((pb - p * pa * p.inverse()).norm() <= 1e-12 * pb.norm());
}

TEST_CASE("holder_constant") {
    const Matrix m1 = diag2(2, 0.5), m2 = diag2(3, 1.0 / 3), m3 = mat2(0, 0.5, 2, 0);
    const auto a = FiniteRangeCocycle::locally_constant({m1, m2, m3});
    double want = 0;
    for (const auto& [x, y] : {std::pair{m1, m2}, {m1, m3}, {m2, m3}})
        want = std::max(want, oracle::singular_values_gram(x - y)[0]);
    CHECK(holder_constant(a, 0) == doctest::Approx(want).epsilon(1e-12));
    CHECK(holder_constant(a, 5) == doctest::Approx(want).epsilon(1e-12));
    CHECK(holder_constant(FiniteRangeCocycle::locally_constant({m1, m1}), 3) == 0.0);

    // Range one: pairs differing first at the edge carry a factor e^beta.
    const auto b = range_one();
    const double c0 = holder_constant(b, 0), c1 = holder_constant(b, 1);
    CHECK(c1 >= c0);
    double edge = 0;
    const auto& win = b.windows();
    for (std::size_t i = 0; i < win.size(); ++i)
        for (std::size_t j = 0; j < win.size(); ++j)
            if (win[i][1] == win[j][1] && win[i] != win[j])
                edge = std::max(edge, oracle::singular_values_gram(b.matrices()[i] - b.matrices()[j])[0] * std::exp(1.0));
    CHECK(c1 == doctest::Approx(std::max(c0, edge)).epsilon(1e-12));
}

TEST_CASE("subspace angles and fits") {
    Matrix e1(2, 1), e2(2, 1), diag(2, 1);
    e1 << 1, 0;
    e2 << 0, 1;
    diag << 1, 1;
    CHECK(max_principal_angle(e1, e1) == doctest::Approx(0.0));
    CHECK(max_principal_angle(e1, diag) == doctest::Approx(M_PI / 4));
    CHECK(min_principal_angle(e1, e2) == doctest::Approx(M_PI / 2));
    CHECK(spectral_radius(mat2(0, -2, 2, 0)) == doctest::Approx(2.0));
    const auto fit = least_squares_line({1, 2, 3}, {1, 3, 5});
    CHECK(fit.slope == doctest::Approx(2.0));
    CHECK(fit.intercept == doctest::Approx(-1.0));
    CHECK(code_of([] { least_squares_line({1}, {1}); }) == ErrorCode::InsufficientSamples);
    CHECK(binomial(10, 3) == 120.0);
}

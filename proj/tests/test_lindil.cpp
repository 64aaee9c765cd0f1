#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>

#include "homq/lindil.hpp"
#include "test_util.hpp"

using namespace homq;
using namespace homq::test;

TEST_CASE("make_dilation validates its inputs") {
    CHECK(code_of([] { make_dilation(Matrix::Identity(2, 2), mat2(1, 0.5, 0, 1)); }) == ErrorCode::NotSymmetric);
    CHECK(code_of([] { make_dilation(Matrix::Identity(2, 2), mat2(1, 0, 0, -1)); }) == ErrorCode::NotPositiveDefinite);
    CHECK(code_of([] { make_dilation(mat2(1, 0, 0, -1)); }) == ErrorCode::NotMonotone);
    CHECK(code_of([] { make_dilation(Matrix::Identity(3, 3), Matrix::Identity(2, 2)); }) ==
          ErrorCode::DimensionMismatch);
    CHECK(code_of([] { make_dilation(Matrix::Identity(2, 3)); }) == ErrorCode::DimensionMismatch);
    // Anti-Hurwitz but not monotone for P = I: P G + G' P has a negative eigenvalue.
    CHECK(code_of([] { make_dilation(mat2(1, 10, 0, 1)); }) == ErrorCode::NotMonotone);
}

TEST_CASE("monotonicity constants") {
    SUBCASE("diagonal") {
        const Dilation d = make_dilation(diag321());
        CHECK(d.eta_min() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(d.eta_max() == doctest::Approx(3.0).epsilon(1e-14));
        CHECK(d.is_diagonal());
    }
    SUBCASE("values frozen from an independent eigen-decomposition") {
        const Dilation g3 = make_dilation(mat2(2.0, -1.5, 1.0, 1.0));
        CHECK(g3.eta_min() == doctest::Approx(0.94098301).epsilon(1e-8));
        CHECK(g3.eta_max() == doctest::Approx(2.05901699).epsilon(1e-8));
        const Dilation g1 = make_dilation(mat2(1.5, 0.6, 0.0, 1.0));
        CHECK(g1.eta_min() == doctest::Approx(0.85948752).epsilon(1e-8));
        CHECK(g1.eta_max() == doctest::Approx(1.64051248).epsilon(1e-8));
        CHECK_FALSE(g1.is_diagonal());
    }
}

TEST_CASE("dilate examples") {
    const double ln2 = std::log(2.0);
    CHECK(dilate(make_dilation(Matrix::Identity(2, 2)), ln2).isApprox(2.0 * Matrix::Identity(2, 2), 1e-14));
    const Matrix expected = vec({8, 4, 2}).asDiagonal();
    CHECK(dilate(make_dilation(diag321()), ln2).isApprox(expected, 1e-14));
    const Dilation g1 = make_dilation(mat2(1.5, 0.6, 0.0, 1.0));
    CHECK((dilate(g1, 0.0) - Matrix::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("matrix_exponential agrees with an independent implementation") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int n : {1, 2, 3, 5, 8}) {
        for (double scale : {1e-3, 1.0, 10.0, 40.0}) {
            Matrix a(n, n);
            for (int i = 0; i < n * n; ++i) a.data()[i] = scale * g(rng) / std::sqrt(n);
            const Matrix reference = a.exp();
            CHECK((matrix_exponential(a) - reference).norm() / reference.norm() < 1e-11);
        }
    }
    CHECK(matrix_exponential(Matrix::Zero(3, 3)).isApprox(Matrix::Identity(3, 3)));
}

TEST_CASE("group law and dilate_vector consistency") {
    const Dilation d = make_dilation(mat2(2.0, -1.5, 1.0, 1.0));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double s = u(rng), t = u(rng);
        const Matrix lhs = dilate(d, s) * dilate(d, t);
        CHECK((lhs - dilate(d, s + t)).norm() / lhs.norm() < 1e-12);
        const Vector x = Vector::Random(2);
        CHECK((dilate_vector(d, s, x) - dilate(d, s) * x).norm() <= 1e-12 * (1.0 + x.norm()) * dilate(d, s).norm());
    }
}

TEST_CASE("dilation_norm_bounds") {
    const Dilation id = make_dilation(Matrix::Identity(2, 2));
    const auto [lo1, hi1] = dilation_norm_bounds(id, 1.0);
    CHECK(lo1 == doctest::Approx(std::exp(1.0)));
    CHECK(hi1 == doctest::Approx(std::exp(1.0)));

    const Dilation d = make_dilation(diag321());
    const auto [lo, hi] = dilation_norm_bounds(d, std::log(2.0));
    CHECK(lo == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(hi == doctest::Approx(8.0).epsilon(1e-14));
    const auto [lo0, hi0] = dilation_norm_bounds(d, 0.0);
    CHECK(lo0 == 1.0);
    CHECK(hi0 == 1.0);
    const auto [lon, hin] = dilation_norm_bounds(d, -std::log(2.0));
    CHECK(lon == doctest::Approx(0.125));
    CHECK(hin == doctest::Approx(0.5));
}

TEST_CASE("weighted norms with a non-identity weight") {
    Matrix p(2, 2);
    p << 2.0, 0.5, 0.5, 1.0;
    const Dilation d = make_dilation(mat2(1.5, 0.6, 0.0, 1.0), p);
    Vector x(2);
    x << 1.0, -2.0;
    CHECK(d.weighted_norm(x) == doctest::Approx(std::sqrt(x.dot(p * x))));
    CHECK((d.weight_sqrt() * d.weight_sqrt() - p).norm() < 1e-13);
    CHECK((d.weight_sqrt() * d.weight_inv_sqrt() - Matrix::Identity(2, 2)).norm() < 1e-13);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double s = u(rng);
        const auto [lo, hi] = dilation_norm_bounds(d, s);
        const Matrix e = dilate(d, s);
        CHECK(weighted_operator_norm(d, e) <= hi * (1 + 1e-12));
        CHECK(weighted_min_gain(d, e) >= lo * (1 - 1e-12));
    }
}

TEST_CASE("DiscreteDilation") {
    const DiscreteDilation dd(make_dilation(diag321()), std::log(2.0));
    CHECK(dd.seed(3) == doctest::Approx(3 * std::log(2.0)));
    CHECK(dd.at(1).isApprox(dilate(dd.base(), std::log(2.0))));
    CHECK(code_of([] { DiscreteDilation(make_dilation(Matrix::Identity(2, 2)), 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("error messages carry the code name") {
    try {
        make_dilation(mat2(1, 0, 0, -1));
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find(to_string(ErrorCode::NotMonotone)) == 0);
    }
}

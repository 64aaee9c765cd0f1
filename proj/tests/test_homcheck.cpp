#include <doctest.h>

#include <cmath>
#include <numbers>

#include "homq/homcheck.hpp"
#include "homq/sim.hpp"
#include "test_util.hpp"

using namespace homq;
using namespace homq::test;

namespace {

constexpr double kPi = std::numbers::pi;

SampleSpec small_spec(int count, std::uint64_t seed = 42) {
    SampleSpec s;
    s.count = count;
    s.seed = seed;
    return s;
}

}  // namespace

TEST_CASE("SampleSpec validation") {
    SampleSpec s;
    CHECK_NOTHROW(s.validate());
    s.count = 0;
    CHECK(code_of([&] { s.validate(); }) == ErrorCode::InvalidArgument);
    s.count = 1;
    s.r_lo = 2.0;
    s.r_hi = 1.0;
    CHECK(code_of([&] { s.validate(); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("sampling is deterministic and covers the radius range") {
    const Dilation d = make_dilation(diag321());
    const auto a = sample_points(d, small_spec(500, 3));
    const auto b = sample_points(d, small_spec(500, 3));
    REQUIRE(a.size() == 500);
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    for (const Vector& x : a) {
        const double r = hom_norm(d, x);
        CHECK(r >= 1e-2 * (1 - 1e-9));
        CHECK(r <= 1e2 * (1 + 1e-9));
    }
}

TEST_CASE("check_field_homogeneity") {
    const Dilation id = make_dilation(Matrix::Identity(3, 3));
    const VectorField identity = [](const Vector& x) { return x; };
    CHECK(check_field_homogeneity(identity, id, 0.0, small_spec(500)) <= 1e-12);

    const HomPlant plant = example_plant();
    CHECK(check_field_homogeneity(plant.drift, plant.dilation, 1.0, small_spec(2000)) <= 1e-7);

    const Dilation d = make_dilation(diag321());
    CHECK(check_field_homogeneity(identity, d, 1.0, small_spec(500)) > 1e-3);
}

TEST_CASE("check_quantizer_discrete_homogeneity") {
    const Dilation id2 = make_dilation(Matrix::Identity(2, 2));
    CHECK(check_quantizer_discrete_homogeneity(id2, QuantizerParams(0.5, kPi / 4, 2), small_spec(1000)) <= 1e-9);

    const Dilation d = make_dilation(diag321());
    const QuantizerParams p(0.7, kPi / 20, 3);
    CHECK(check_quantizer_discrete_homogeneity(d, p, small_spec(1000)) <= 1e-7);
    CHECK(check_quantizer_discrete_homogeneity(d, p, small_spec(300), 1.0) > 1e-3);

    SampleSpec greedy = small_spec(10);
    greedy.boundary_margin = 0.6;  // no point is that far from every boundary
    CHECK(code_of([&] { check_quantizer_discrete_homogeneity(d, p, greedy); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("SectorSpec") {
    CHECK_NOTHROW(SectorSpec::symmetric(Matrix::Identity(2, 2), 0.2));
    CHECK(code_of([] { SectorSpec(Matrix::Identity(2, 2), Matrix::Identity(2, 2)); }) == ErrorCode::InvalidSector);
    CHECK(code_of([] { SectorSpec(mat2(0, 1, 0, 0), 2.0 * Matrix::Identity(2, 2)); }) == ErrorCode::InvalidSector);
    CHECK(code_of([] { SectorSpec(Matrix::Identity(2, 2), Matrix::Identity(3, 3)); }) == ErrorCode::InvalidSector);
}

TEST_CASE("check_hom_sector") {
    const Dilation d = make_dilation(diag321());
    const SectorResult ident =
        check_hom_sector([](const Vector& x) { return x; }, d, SectorSpec::symmetric(Matrix::Identity(3, 3), 0.3),
                         small_spec(500));
    CHECK(ident.holds);
    CHECK(ident.worst < 0.0);

    const QuantizerParams p(0.7, kPi / 20, 3);
    const SectorSpec sector = SectorSpec::symmetric(Matrix::Identity(3, 3), epsilon_tilde(p));
    CHECK(check_hom_sector([&](const Vector& x) { return hom_quantize(d, p, x); }, d, sector, small_spec(3000)).holds);

    // Doubling in the homogeneous sense lies outside a narrow sector around the identity.
    const SectorResult doubled = check_hom_sector([&](const Vector& x) { return tilde_scale(d, 2.0, x); }, d,
                                                  SectorSpec::symmetric(Matrix::Identity(3, 3), 0.5), small_spec(200));
    CHECK_FALSE(doubled.holds);

    const SectorSpec wrong = SectorSpec::symmetric(Matrix::Identity(2, 2), 0.1);
    CHECK(code_of([&] { check_hom_sector([](const Vector& x) { return x; }, d, wrong, small_spec(5)); }) ==
          ErrorCode::DimensionMismatch);
}

TEST_CASE("ratio_bounds_on_domain") {
    const Dilation d = make_dilation(Matrix::Identity(2, 2) + mat2(1, 0, 0, 0));  // diag(2, 1)
    const FundamentalDomain fd{DiscreteDilation(d, 0.5), 1.0};
    const ScalarField sq = [&](const Vector& x) { return std::pow(hom_norm(d, x), 2); };
    const ScalarField lin = [&](const Vector& x) { return hom_norm(d, x); };

    const RatioBounds same = ratio_bounds_on_domain(sq, 2.0, sq, 2.0, fd, small_spec(500));
    CHECK(same.c_min == doctest::Approx(1.0));
    CHECK(same.c_max == doctest::Approx(1.0));
    const RatioBounds power = ratio_bounds_on_domain(lin, 1.0, sq, 2.0, fd, small_spec(500));
    CHECK(power.c_min == doctest::Approx(1.0));
    CHECK(power.c_max == doctest::Approx(1.0));

    // x2^2 against |x|_d^2: infimum 0 on the x1 axis, supremum by dense sampling.
    const ScalarField x2sq = [](const Vector& x) { return x(1) * x(1); };
    const RatioBounds b = ratio_bounds_on_domain(sq, 2.0, x2sq, 2.0, fd, small_spec(20000));
    CHECK(b.c_min >= 0.0);
    CHECK(b.c_min < 1e-3);
    double oracle = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double t = 2.0 * kPi * i / 2000.0;
        for (int j = 0; j <= 50; ++j) {
            const Vector z = dilate_vector(d, 0.5 * j / 50.0, vec({std::cos(t), std::sin(t)}));
            oracle = std::max(oracle, z(1) * z(1) / std::pow(hom_norm(d, z), 2));
        }
    }
    CHECK(b.c_max <= oracle * (1 + 1e-9));
    CHECK(b.c_max >= 0.99 * oracle);

    const ScalarField negative = [](const Vector&) { return -1.0; };
    CHECK(code_of([&] { ratio_bounds_on_domain(negative, 1.0, sq, 2.0, fd, small_spec(5)); }) ==
          ErrorCode::NonPositiveF1);
}

TEST_CASE("sector margin and locality") {
    const Dilation d = make_dilation(diag321());
    const QuantizerParams p(0.7, kPi / 20, 3);
    const SectorMargin m = sector_margin(d, p, small_spec(3000));
    CHECK(m.epsilon_tilde == doctest::Approx(epsilon_tilde(p)));
    CHECK(m.empirical_max > 0.0);
    CHECK(m.empirical_max <= m.epsilon_tilde);

    SampleSpec spec = small_spec(3000);
    spec.r_lo = 1e-1;
    spec.r_hi = 1e2;
    const LocalityResult loc = check_sector_locality(d, p, spec);
    CHECK(std::abs(loc.local_max - loc.global_max) <= 1e-7);
    CHECK(hom_sector_ratio(d, p, Vector::Zero(3)) == 0.0);
}

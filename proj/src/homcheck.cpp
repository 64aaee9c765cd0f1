#include "homq/homcheck.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace homq {

namespace {

constexpr double kResidualFloor = 1e-12;

bool is_symmetric(const Matrix& m) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

}  // namespace

void SampleSpec::validate() const {
    if (count < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be >= 1");
    if (!(r_lo > 0.0 && r_lo < r_hi)) throw Error(ErrorCode::InvalidArgument, "need 0 < r_lo < r_hi");
    if (!(boundary_margin >= 0.0)) throw Error(ErrorCode::InvalidArgument, "boundary_margin must be >= 0");
}

SectorSpec::SectorSpec(Matrix k1, Matrix k2) : k1_(std::move(k1)), k2_(std::move(k2)) {
    if (k1_.rows() != k1_.cols() || k2_.rows() != k2_.cols() || k1_.rows() != k2_.rows()) {
        throw Error(ErrorCode::InvalidSector, "K1 and K2 must be square matrices of equal size");
    }
    if (!is_symmetric(k1_) || !is_symmetric(k2_)) {
        throw Error(ErrorCode::InvalidSector, "K1 and K2 must be symmetric");
    }
    const Matrix gap = k2_ - k1_;
    const double smallest =
        Eigen::SelfAdjointEigenSolver<Matrix>(gap, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    if (smallest <= kEigenTolerance) {
        throw Error(ErrorCode::InvalidSector, "K2 - K1 must be positive definite");
    }
}

SectorSpec SectorSpec::symmetric(const Matrix& center, double kappa) {
    const Matrix identity = Matrix::Identity(center.rows(), center.cols());
    return SectorSpec(center - kappa * identity, center + kappa * identity);
}

Vector sample_unit_sphere(const Dilation& d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector g(d.dim());
    double norm = 0.0;
    while (norm < 1e-8) {
        for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = gauss(rng);
        norm = g.norm();
    }
    return d.weight_inv_sqrt() * (g / norm);
}

std::vector<Vector> sample_points(const Dilation& d, const SampleSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> log_radius(std::log(spec.r_lo), std::log(spec.r_hi));
    std::vector<Vector> points;
    points.reserve(static_cast<size_t>(spec.count));
    for (int i = 0; i < spec.count; ++i) {
        const Vector u = sample_unit_sphere(d, rng);
        points.push_back(dilate_vector(d, log_radius(rng), u));
    }
    return points;
}

double check_field_homogeneity(const VectorField& field, const Dilation& d, double mu, const SampleSpec& spec) {
    constexpr std::array<double, 4> kScales = {-2.0, -1.0, 1.0, 2.0};
    double worst = 0.0;
    for (const Vector& x : sample_points(d, spec)) {
        const Vector fx = field(x);
        for (double s : kScales) {
            const Vector expected = std::exp(mu * s) * dilate_vector(d, s, fx);
            const Vector got = field(dilate_vector(d, s, x));
            const double denom = std::max(d.weighted_norm(expected), kResidualFloor);
            const double residual = d.weighted_norm(got - expected) / denom;
            worst = std::max(worst, std::isnan(residual) ? std::numeric_limits<double>::infinity() : residual);
        }
    }
    return worst;
}

double check_quantizer_discrete_homogeneity(const Dilation& d, const QuantizerParams& p, const SampleSpec& spec,
                                            std::optional<double> step) {
    spec.validate();
    const double a = step.value_or(p.radial_step());
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> log_radius(std::log(spec.r_lo), std::log(spec.r_hi));

    double worst = 0.0;
    int accepted = 0;
    const long max_attempts = 100L * spec.count;
    for (long attempt = 0; accepted < spec.count && attempt < max_attempts; ++attempt) {
        const Vector x = dilate_vector(d, log_radius(rng), sample_unit_sphere(d, rng));
        if (quantizer_boundary_distance(d, p, x) < spec.boundary_margin) continue;
        ++accepted;
        const Vector qx = hom_quantize(d, p, x);
        for (int k = -3; k <= 3; ++k) {
            if (k == 0) continue;
            const double s = k * a;
            const Vector expected = dilate_vector(d, s, qx);
            const Vector got = hom_quantize(d, p, dilate_vector(d, s, x));
            const double denom = std::max(d.weighted_norm(expected), kResidualFloor);
            worst = std::max(worst, d.weighted_norm(got - expected) / denom);
        }
    }
    if (accepted < spec.count) {
        throw Error(ErrorCode::InvalidArgument, "boundary margin rejects too many samples");
    }
    return worst;
}

SectorResult check_hom_sector(const VectorField& phi_map, const Dilation& d, const SectorSpec& sector,
                              const SampleSpec& spec) {
    if (sector.k1().rows() != d.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "sector matrices do not match the dilation dimension");
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (const Vector& x : sample_points(d, spec)) {
        const Vector px = phi(d, x);
        const Vector pf = phi(d, phi_map(x));
        const Vector lower = pf - sector.k1() * px;
        const Vector upper = pf - sector.k2() * px;
        worst = std::max(worst, lower.dot(d.weight() * upper));
    }
    return {worst <= 1e-10, worst};
}

RatioBounds ratio_bounds_on_domain(const ScalarField& f1, double nu1, const ScalarField& f2, double nu2,
                                   const FundamentalDomain& fd, const SampleSpec& spec) {
    spec.validate();
    if (!(nu1 > 0.0 && nu2 > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "homogeneity degrees must be positive");
    }
    const Dilation& d = fd.discrete.base();
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> log_radius(std::log(fd.rho), std::log(fd.rho) + fd.discrete.step());

    RatioBounds bounds{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (int i = 0; i < spec.count; ++i) {
        const Vector z = dilate_vector(d, log_radius(rng), sample_unit_sphere(d, rng));
        const double v1 = f1(z);
        if (!(v1 > 0.0)) {
            throw Error(ErrorCode::NonPositiveF1, "F1 must be positive on the fundamental domain");
        }
        const double ratio = f2(z) / std::pow(v1, nu2 / nu1);
        bounds.c_min = std::min(bounds.c_min, ratio);
        bounds.c_max = std::max(bounds.c_max, ratio);
    }
    return bounds;
}

double hom_sector_ratio(const Dilation& d, const QuantizerParams& p, const Vector& x) {
    const Vector px = phi(d, x);
    const double base = d.weighted_norm(px);
    if (base == 0.0) return 0.0;
    return d.weighted_norm(phi(d, hom_quantize(d, p, x)) - px) / base;
}

SectorMargin sector_margin(const Dilation& d, const QuantizerParams& p, const SampleSpec& spec) {
    SectorMargin margin{epsilon_tilde(p), 0.0};
    for (const Vector& x : sample_points(d, spec)) {
        margin.empirical_max = std::max(margin.empirical_max, hom_sector_ratio(d, p, x));
    }
    return margin;
}

LocalityResult check_sector_locality(const Dilation& d, const QuantizerParams& p, const SampleSpec& spec) {
    const FundamentalDomain fd{DiscreteDilation(d, p.radial_step()), 1.0};
    LocalityResult result;
    for (const Vector& x : sample_points(d, spec)) {
        if (quantizer_boundary_distance(d, p, x) < spec.boundary_margin) continue;
        result.global_max = std::max(result.global_max, hom_sector_ratio(d, p, x));
        result.local_max = std::max(result.local_max, hom_sector_ratio(d, p, project_to_domain(fd, x)));
    }
    return result;
}

}  // namespace homq

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "homq/quantizer.hpp"

namespace homq {

using VectorField = std::function<Vector(const Vector&)>;
using ScalarField = std::function<double(const Vector&)>;

/// Deterministic sampling plan. Radii are in homogeneous-norm units.
struct SampleSpec {
    int count = 10000;
    double r_lo = 1e-2;
    double r_hi = 1e2;
    std::uint64_t seed = 42;
    double boundary_margin = 1e-6;

    void validate() const;
};

/// Sector [K1, K2] with K2 - K1 positive definite.
class SectorSpec {
public:
    /// Throws InvalidSector if K1, K2 are not symmetric or K2 - K1 is not
    /// positive definite.
    SectorSpec(Matrix k1, Matrix k2);

    /// K1 = L - kappa I, K2 = L + kappa I.
    static SectorSpec symmetric(const Matrix& center, double kappa);

    const Matrix& k1() const { return k1_; }
    const Matrix& k2() const { return k2_; }

private:
    Matrix k1_;
    Matrix k2_;
};

struct SectorResult {
    bool holds = false;
    double worst = 0.0;  // max of the Phi-coordinate inner-product condition
};

struct RatioBounds {
    double c_min = 0.0;
    double c_max = 0.0;
};

struct SectorMargin {
    double epsilon_tilde = 0.0;
    double empirical_max = 0.0;  // max |Phi(q_h(x)) - Phi(x)| / |Phi(x)|
};

struct LocalityResult {
    double local_max = 0.0;   // sector ratio on the fundamental domain
    double global_max = 0.0;  // same ratio over the full radius range
};

/// Uniform direction on the unit P-sphere.
Vector sample_unit_sphere(const Dilation& d, std::mt19937_64& rng);

/// spec.count points with homogeneous norms log-uniform in [r_lo, r_hi].
std::vector<Vector> sample_points(const Dilation& d, const SampleSpec& spec);

/// Max over samples and s in {-2, -1, 1, 2} of
/// |f(d(s) x) - e^{mu s} d(s) f(x)| / max(|e^{mu s} d(s) f(x)|, 1e-12).
double check_field_homogeneity(const VectorField& field, const Dilation& d, double mu, const SampleSpec& spec);

/// Max relative residual of q_h(d(s_k) x) = d(s_k) q_h(x) for s_k = k a,
/// k in {-3..3}, over samples at least spec.boundary_margin away from cell
/// boundaries. The step a defaults to -ln(nu).
double check_quantizer_discrete_homogeneity(const Dilation& d, const QuantizerParams& p, const SampleSpec& spec,
                                            std::optional<double> step = std::nullopt);

/// Evaluates <Phi(phi(x)) - K1 Phi(x), Phi(phi(x)) - K2 Phi(x)>_P at every
/// sample; holds when the maximum is <= 1e-10.
SectorResult check_hom_sector(const VectorField& phi_map, const Dilation& d, const SectorSpec& sector,
                              const SampleSpec& spec);

/// Sampled inf / sup of F2(z) / F1(z)^{nu2/nu1} over the annulus of fd.
/// Throws NonPositiveF1 if F1 is not positive at a sample.
RatioBounds ratio_bounds_on_domain(const ScalarField& f1, double nu1, const ScalarField& f2, double nu2,
                                   const FundamentalDomain& fd, const SampleSpec& spec);

/// |Phi(q_h(x)) - Phi(x)| / |Phi(x)|, i.e. |q_h(x) -~ x|_d / |x|_d.
double hom_sector_ratio(const Dilation& d, const QuantizerParams& p, const Vector& x);

/// Reports epsilon_tilde against the sampled maximum of hom_sector_ratio.
SectorMargin sector_margin(const Dilation& d, const QuantizerParams& p, const SampleSpec& spec);

/// Compares the sector ratio of q_h measured on the fundamental domain
/// (samples projected by the seed group of step -ln nu) with the ratio over
/// the whole radius range. Boundary-adjacent samples are skipped.
LocalityResult check_sector_locality(const Dilation& d, const QuantizerParams& p, const SampleSpec& spec);

}  // namespace homq

#pragma once

#include <cmath>
#include <optional>

#include "homq/homgeo.hpp"

namespace homq {

/// Parameters of the homogeneous polar-spherical quantizer.
///
/// The radial part is the logarithmic quantizer with levels nu^i xi0 and
/// cells I_i = [nu^i xi0 / (1 + delta), nu^i xi0 / (1 - delta)); the angular
/// part rounds every spherical angle to the nearest multiple of delta_angle.
class QuantizerParams {
public:
    /// xi0 defaults to 2 / (1 + nu), which aligns I_0 with [1, 1/nu).
    /// Throws ValidationError naming the offending field.
    QuantizerParams(double nu, double delta_angle, int dim, std::optional<double> xi0 = std::nullopt);

    double nu() const { return nu_; }
    double xi0() const { return xi0_; }
    double delta() const { return (1.0 - nu_) / (1.0 + nu_); }
    double delta_angle() const { return delta_angle_; }
    int dim() const { return dim_; }

    /// Dilation step -ln(nu) of the seed group under which q_h is homogeneous.
    double radial_step() const { return -std::log(nu_); }

private:
    double nu_;
    double xi0_;
    double delta_angle_;
    int dim_;
};

struct LogLevel {
    double value = 0.0;
    std::optional<long> level;  // empty for z = 0
};

/// Radius followed by n-1 angles; theta_i in [0, pi] for i <= n-2 and the
/// last angle in [0, 2 pi).
struct SphericalCoords {
    double radius = 0.0;
    Vector angles;
};

/// Logarithmic radial quantizer. Throws NegativeInput for z < 0.
LogLevel log_quantize(const QuantizerParams& p, double z);

/// Euclidean polar-spherical coordinates. Throws DimensionTooSmall for n < 2.
SphericalCoords to_spherical(const Vector& y);
Vector from_spherical(const SphericalCoords& c);

/// Rounds one angle to the grid; the last angle is wrapped modulo 2 pi.
double round_angle(double theta, double delta_angle, bool wrap);

/// Spherical quantizer on the unit P-sphere. Throws NotOnSphere when
/// | |u|_P - 1 | > 1e-8.
Vector spherical_quantize(const Dilation& d, const QuantizerParams& p, const Vector& u);

/// q_h(x) = d(ln q_log(|x|_d)) q_s(pi_d(x)); q_h(0) = 0.
Vector hom_quantize(const Dilation& d, const QuantizerParams& p, const Vector& x,
                    const HomNormConfig& cfg = {});

/// Distance (as a fraction of one cell) from x to the nearest radial or
/// angular cell boundary of q_h. Points closer than a small margin are where
/// the discrete homogeneity identity may fail pointwise.
double quantizer_boundary_distance(const Dilation& d, const QuantizerParams& p, const Vector& x,
                                   const HomNormConfig& cfg = {});

/// beta(Delta) = 2 sqrt(1 - cos^{2(n-1)}(Delta / 2)).
double beta(int dim, double delta_angle);
double beta(const QuantizerParams& p);

/// Homogeneous sector constant (1 + delta) beta + delta.
double epsilon_tilde(const QuantizerParams& p);

/// Chord bound sqrt(2 - 2 (2 cos^{2(n-1)}(Delta/2) - 1)) on |q_s(u) - u|.
double spherical_error_bound(int dim, double delta_angle);

}  // namespace homq

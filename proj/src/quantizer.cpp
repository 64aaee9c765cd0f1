#include "homq/quantizer.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

namespace homq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_dim(const Dilation& d, const QuantizerParams& p, const Vector& x) {
    if (d.dim() != p.dim() || x.size() != d.dim()) {
        std::ostringstream msg;
        msg << "dilation dim " << d.dim() << ", quantizer dim " << p.dim() << ", vector size " << x.size();
        throw Error(ErrorCode::DimensionMismatch, msg.str());
    }
}

// Distance of t from the nearest integer, in [0, 0.5].
double distance_to_integer(double t) {
    const double f = t - std::floor(t);
    return std::min(f, 1.0 - f);
}

}  // namespace

QuantizerParams::QuantizerParams(double nu, double delta_angle, int dim, std::optional<double> xi0)
    : nu_(nu), xi0_(xi0.value_or(2.0 / (1.0 + nu))), delta_angle_(delta_angle), dim_(dim) {
    if (!(nu > 0.0 && nu < 1.0)) {
        throw Error(ErrorCode::ValidationError, "nu must lie in (0, 1)");
    }
    if (!(delta_angle > 0.0 && delta_angle <= std::numbers::pi)) {
        throw Error(ErrorCode::ValidationError, "delta_angle must lie in (0, pi]");
    }
    if (!(xi0_ > 0.0) || !std::isfinite(xi0_)) {
        throw Error(ErrorCode::ValidationError, "xi0 must be positive and finite");
    }
    if (dim < 1) {
        throw Error(ErrorCode::ValidationError, "dim must be positive");
    }
}

LogLevel log_quantize(const QuantizerParams& p, double z) {
    if (z < 0.0 || std::isnan(z)) {
        throw Error(ErrorCode::NegativeInput, "radial quantizer input must be nonnegative");
    }
    if (z == 0.0) return {};

    const double nu = p.nu();
    const double delta = p.delta();
    // z in I_i  <=>  i in [A, A + 1) with A = log_nu(z (1 + delta) / xi0).
    long i = static_cast<long>(std::ceil(std::log(z * (1.0 + delta) / p.xi0()) / std::log(nu)));
    for (int guard = 0; guard < 4; ++guard) {
        const double value = std::pow(nu, static_cast<double>(i)) * p.xi0();
        // Membership in [v / (1 + delta), v / (1 - delta)) written as the sector inequality.
        if (value - z > delta * z) {
            ++i;
        } else if (z - value >= delta * z) {
            --i;
        } else {
            return {value, i};
        }
    }
    return {std::pow(nu, static_cast<double>(i)) * p.xi0(), i};
}

SphericalCoords to_spherical(const Vector& y) {
    const auto n = y.size();
    if (n < 2) {
        throw Error(ErrorCode::DimensionTooSmall, "spherical coordinates need n >= 2");
    }
    // tail[i] = sum_{j >= i} y_j^2
    Vector tail(n + 1);
    tail(n) = 0.0;
    for (auto i = n - 1; i >= 0; --i) tail(i) = tail(i + 1) + y(i) * y(i);

    SphericalCoords c;
    c.radius = std::sqrt(tail(0));
    c.angles.resize(n - 1);
    for (Eigen::Index i = 0; i + 2 < n; ++i) {
        const double rest = std::sqrt(tail(i + 1));
        c.angles(i) = (rest == 0.0 && y(i) == 0.0) ? 0.0 : std::atan2(rest, y(i));
    }
    const double a = y(n - 1);
    const double b = y(n - 2);
    double last = (a == 0.0 && b == 0.0) ? 0.0 : std::atan2(a, b) + 0.0;
    if (last < 0.0) last += kTwoPi;
    if (last >= kTwoPi) last = 0.0;
    c.angles(n - 2) = last;
    return c;
}

Vector from_spherical(const SphericalCoords& c) {
    const auto n = c.angles.size() + 1;
    if (n < 2) {
        throw Error(ErrorCode::DimensionTooSmall, "spherical coordinates need n >= 2");
    }
    Vector y(n);
    double sines = c.radius;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        y(k) = sines * std::cos(c.angles(k));
        sines *= std::sin(c.angles(k));
    }
    y(n - 1) = sines;
    return y;
}

double round_angle(double theta, double delta_angle, bool wrap) {
    double q = std::floor(theta / delta_angle + 0.5) * delta_angle;
    if (wrap) {
        q = std::fmod(q, kTwoPi);
        if (q < 0.0) q += kTwoPi;
    }
    return q;
}

Vector spherical_quantize(const Dilation& d, const QuantizerParams& p, const Vector& u) {
    require_dim(d, p, u);
    const double nu = d.weighted_norm(u);
    if (std::abs(nu - 1.0) > 1e-8) {
        std::ostringstream msg;
        msg << "|u|_P = " << nu << " is not on the unit sphere";
        throw Error(ErrorCode::NotOnSphere, msg.str());
    }
    if (u.size() == 1) return u;

    SphericalCoords c = to_spherical(d.weight_sqrt() * u);
    const auto m = c.angles.size();
    for (Eigen::Index k = 0; k < m; ++k) {
        c.angles(k) = round_angle(c.angles(k), p.delta_angle(), k == m - 1);
    }
    c.radius = 1.0;
    return d.weight_inv_sqrt() * from_spherical(c);
}

Vector hom_quantize(const Dilation& d, const QuantizerParams& p, const Vector& x, const HomNormConfig& cfg) {
    require_dim(d, p, x);
    if (d.weighted_norm(x) <= cfg.zero_threshold) return Vector::Zero(x.size());
    const double r = hom_norm(d, x, cfg);
    const LogLevel radial = log_quantize(p, r);
    const Vector direction = dilate_vector(d, -std::log(r), x);
    return dilate_vector(d, std::log(radial.value), spherical_quantize(d, p, direction));
}

double quantizer_boundary_distance(const Dilation& d, const QuantizerParams& p, const Vector& x,
                                   const HomNormConfig& cfg) {
    require_dim(d, p, x);
    if (d.weighted_norm(x) <= cfg.zero_threshold) return 0.0;
    const double r = hom_norm(d, x, cfg);
    double dist = distance_to_integer(std::log(r * (1.0 + p.delta()) / p.xi0()) / std::log(p.nu()));
    if (x.size() == 1) return dist;

    const Vector w = d.weight_sqrt() * dilate_vector(d, -std::log(r), x);
    const SphericalCoords c = to_spherical(w);
    const auto m = c.angles.size();
    for (Eigen::Index k = 0; k < m; ++k) {
        const double theta = c.angles(k);
        dist = std::min(dist, distance_to_integer(theta / p.delta_angle() + 0.5));
        if (k + 1 < m) {
            // Near a pole the remaining angles are ill-conditioned.
            dist = std::min(dist, std::min(theta, std::numbers::pi - theta) / p.delta_angle());
        }
    }
    return dist;
}

double beta(int dim, double delta_angle) {
    const double c = std::pow(std::cos(0.5 * delta_angle), 2.0 * (dim - 1));
    return 2.0 * std::sqrt(std::max(0.0, 1.0 - c));
}

double beta(const QuantizerParams& p) { return beta(p.dim(), p.delta_angle()); }

double epsilon_tilde(const QuantizerParams& p) {
    const double delta = p.delta();
    return (1.0 + delta) * beta(p) + delta;
}

double spherical_error_bound(int dim, double delta_angle) {
    const double c = std::pow(std::cos(0.5 * delta_angle), 2.0 * (dim - 1));
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * (2.0 * c - 1.0)));
}

}  // namespace homq

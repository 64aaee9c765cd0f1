#include "homq/homgeo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace homq {

namespace {

struct Residual {
    double value;       // |d(-s) x|_P - 1
    double derivative;  // d/ds of the above, negative by monotonicity
};

Residual norm_residual(const Dilation& d, const Vector& x, double s) {
    const Vector y = dilate_vector(d, -s, x);
    const Vector py = d.weight() * y;
    const double ny = std::sqrt(y.dot(py));
    const double slope = -(py.dot(d.generator() * y)) / ny;
    return {ny - 1.0, slope};
}

}  // namespace

double hom_norm(const Dilation& d, const Vector& x, const HomNormConfig& cfg) {
    const double nx = d.weighted_norm(x);
    if (nx <= cfg.zero_threshold) return 0.0;
    if (!std::isfinite(nx)) return nx;

    // |x|^{1/eta_max} <= |x|_d <= |x|^{1/eta_min} for |x| >= 1, reversed below 1.
    const double log_nx = std::log(nx);
    double lo = std::min(log_nx / d.eta_max(), log_nx / d.eta_min());
    double hi = std::max(log_nx / d.eta_max(), log_nx / d.eta_min());
    const double pad = 1e-8 * (1.0 + std::abs(lo) + std::abs(hi));
    lo -= pad;
    hi += pad;
    for (int widen = 0; norm_residual(d, x, lo).value < 0.0 && widen < 60; ++widen) lo -= 1.0 + std::abs(lo);
    for (int widen = 0; norm_residual(d, x, hi).value > 0.0 && widen < 60; ++widen) hi += 1.0 + std::abs(hi);

    double s = std::clamp(log_nx / (0.5 * (d.eta_min() + d.eta_max())), lo, hi);
    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        const Residual res = norm_residual(d, x, s);
        double next = s - res.value / res.derivative;
        if (std::abs(res.value) <= cfg.rel_tol) {
            // One polishing step; Newton is already in its quadratic regime here.
            return std::exp(std::isfinite(next) && std::abs(next - s) <= std::abs(hi - lo) ? next : s);
        }
        if (res.value > 0.0) {
            lo = s;
        } else {
            hi = s;
        }
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == s) break;
        s = next;
    }
    std::ostringstream msg;
    msg << "homogeneous norm solver did not reach tolerance " << cfg.rel_tol << " within "
        << cfg.max_iter << " iterations";
    throw Error(ErrorCode::NoConvergence, msg.str());
}

Vector hom_project(const Dilation& d, const Vector& x, const HomNormConfig& cfg) {
    if (d.weighted_norm(x) <= cfg.zero_threshold) {
        throw Error(ErrorCode::ZeroVector, "cannot project the zero vector onto the unit sphere");
    }
    const double r = hom_norm(d, x, cfg);
    return dilate_vector(d, -std::log(r), x);
}

Vector phi(const Dilation& d, const Vector& x, const HomNormConfig& cfg) {
    const double r = hom_norm(d, x, cfg);
    if (r == 0.0) return Vector::Zero(x.size());
    return r * dilate_vector(d, -std::log(r), x);
}

Vector phi_inv(const Dilation& d, const Vector& y) {
    const double ny = d.weighted_norm(y);
    if (ny == 0.0) return Vector::Zero(y.size());
    return dilate_vector(d, std::log(ny), y) / ny;
}

long projection_index(const FundamentalDomain& fd, const Vector& x, const HomNormConfig& cfg) {
    const Dilation& d = fd.discrete.base();
    if (d.weighted_norm(x) <= cfg.zero_threshold) {
        throw Error(ErrorCode::ZeroVector, "projection index is undefined at the origin");
    }
    const double a = fd.discrete.step();
    const double r = hom_norm(d, x, cfg);
    long k = static_cast<long>(std::floor(std::log(r / fd.rho) / a));
    // Membership rho <= e^{-k a} r < rho e^a decides; the closed form only seeds k.
    for (int guard = 0; guard < 4; ++guard) {
        const double projected = std::exp(-static_cast<double>(k) * a) * r;
        if (projected < fd.rho) {
            --k;
        } else if (projected >= fd.rho * std::exp(a)) {
            ++k;
        } else {
            break;
        }
    }
    return k;
}

Vector project_to_domain(const FundamentalDomain& fd, const Vector& x, const HomNormConfig& cfg) {
    const long k = projection_index(fd, x, cfg);
    return dilate_vector(fd.discrete.base(), -fd.discrete.seed(k), x);
}

Vector tilde_add(const Dilation& d, const Vector& x, const Vector& y, const HomNormConfig& cfg) {
    return phi_inv(d, phi(d, x, cfg) + phi(d, y, cfg));
}

Vector tilde_sub(const Dilation& d, const Vector& x, const Vector& y, const HomNormConfig& cfg) {
    return phi_inv(d, phi(d, x, cfg) - phi(d, y, cfg));
}

Vector tilde_scale(const Dilation& d, double lambda, const Vector& x) {
    if (lambda == 0.0) return Vector::Zero(x.size());
    const double sign = lambda > 0.0 ? 1.0 : -1.0;
    return sign * dilate_vector(d, std::log(std::abs(lambda)), x);
}

double hom_inner(const Dilation& d, const Vector& x, const Vector& y, const HomNormConfig& cfg) {
    return phi(d, x, cfg).dot(d.weight() * phi(d, y, cfg));
}

Vector matrix_tilde_apply(const Dilation& d, const Matrix& h, const Vector& x, const HomNormConfig& cfg) {
    return phi_inv(d, h * phi(d, x, cfg));
}

double distance_bound_alpha1(const Dilation& d, double vartheta) {
    if (!(vartheta >= 0.0)) {
        throw Error(ErrorCode::NegativeInput, "vartheta must be nonnegative");
    }
    const double hi = d.eta_max();
    const double lo = d.eta_min();
    const double grow = (std::pow(vartheta + 1.0, hi) - 1.0) / hi;
    const double shrink = (1.0 - std::pow(std::max(0.0, 1.0 - vartheta), lo)) / lo;
    const double alpha2_bar = d.generator_norm() * std::max(grow, shrink);
    const double r = alpha2_bar + 2.0 * vartheta;
    const double alpha1_bar = std::max(std::pow(r, 1.0 / hi), std::pow(r, 1.0 / lo));
    return alpha1_bar * alpha1_bar;
}

double distance_lower_bound_raw(const Dilation& d, double vartheta) {
    if (!(vartheta >= 0.0)) {
        throw Error(ErrorCode::NegativeInput, "vartheta must be nonnegative");
    }
    return 1.0 - std::max(std::pow(1.0 + vartheta, d.eta_max()), std::pow(1.0 + vartheta, d.eta_min()));
}

}  // namespace homq

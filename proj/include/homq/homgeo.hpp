#pragma once

#include "homq/lindil.hpp"

namespace homq {

/// Solver settings for the canonical homogeneous norm.
struct HomNormConfig {
    double rel_tol = 1e-12;      // on |d(-ln r) x|_P - 1
    int max_iter = 200;
    double zero_threshold = 1e-12;  // |x|_P at or below this is treated as 0
};

/// Annulus {z : rho <= |z|_d < rho e^a} of a discrete dilation.
struct FundamentalDomain {
    DiscreteDilation discrete;
    double rho = 1.0;
};

/// Canonical homogeneous norm |x|_d = e^s, where s solves |d(-s) x|_P = 1.
///
/// The root is bracketed with the monotonicity bounds on |d(s)| and then
/// located by Newton steps on s, falling back to bisection whenever a step
/// leaves the bracket. Non-finite input is passed through as inf or NaN.
/// Throws NoConvergence if max_iter is exhausted.
double hom_norm(const Dilation& d, const Vector& x, const HomNormConfig& cfg = {});

/// pi_d(x) = d(-ln |x|_d) x, the projection onto the unit P-sphere.
/// Throws ZeroVector for |x|_P <= zero_threshold.
Vector hom_project(const Dilation& d, const Vector& x, const HomNormConfig& cfg = {});

/// Phi_d(x) = |x|_d pi_d(x) and its inverse Phi_d^{-1}(y) = |y|^{-1} d(ln |y|) y.
/// Both map 0 to 0.
Vector phi(const Dilation& d, const Vector& x, const HomNormConfig& cfg = {});
Vector phi_inv(const Dilation& d, const Vector& y);

/// Unique k with rho <= e^{-k a} |x|_d < rho e^a.
long projection_index(const FundamentalDomain& fd, const Vector& x, const HomNormConfig& cfg = {});

/// d(-k a) x for k = projection_index(fd, x).
Vector project_to_domain(const FundamentalDomain& fd, const Vector& x, const HomNormConfig& cfg = {});

// Homogeneous vector space operations, all computed through Phi_d.
Vector tilde_add(const Dilation& d, const Vector& x, const Vector& y, const HomNormConfig& cfg = {});
Vector tilde_sub(const Dilation& d, const Vector& x, const Vector& y, const HomNormConfig& cfg = {});
Vector tilde_scale(const Dilation& d, double lambda, const Vector& x);
double hom_inner(const Dilation& d, const Vector& x, const Vector& y, const HomNormConfig& cfg = {});
Vector matrix_tilde_apply(const Dilation& d, const Matrix& h, const Vector& x, const HomNormConfig& cfg = {});

/// Upper comparison function alpha_1 between the Phi-coordinate relative
/// distance vartheta = |Phi(y) - Phi(x)| / |Phi(x)| and the homogeneous
/// relative distance <y - x, y - x>_d / <x, x>_d. Throws NegativeInput.
double distance_bound_alpha1(const Dilation& d, double vartheta);

/// The inner lower-bound expression 1 - max{(1+v)^eta_max, (1+v)^eta_min}.
/// It is nonpositive for every v >= 0, so it is exposed for reporting only.
double distance_lower_bound_raw(const Dilation& d, double vartheta);

}  // namespace homq

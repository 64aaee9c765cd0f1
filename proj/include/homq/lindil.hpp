#pragma once

#include <utility>

#include "homq/types.hpp"

namespace homq {

/// Linear continuous dilation d(s) = exp(s G) that is strictly monotone with
/// respect to the weighted norm |x|_P = sqrt(x' P x).
///
/// Construct through make_dilation(); a Dilation object always satisfies
/// P = P' > 0 and P G + G' P > 0. The monotonicity constants eta_min and
/// eta_max bound the growth of |d(s)| in the P-weighted operator norm.
class Dilation {
public:
    const Matrix& generator() const { return generator_; }
    const Matrix& weight() const { return weight_; }
    /// P^{1/2} and P^{-1/2} (symmetric square roots).
    const Matrix& weight_sqrt() const { return weight_sqrt_; }
    const Matrix& weight_inv_sqrt() const { return weight_inv_sqrt_; }
    double eta_min() const { return eta_min_; }
    double eta_max() const { return eta_max_; }
    /// P-weighted operator norm of the generator.
    double generator_norm() const { return generator_norm_; }
    int dim() const { return static_cast<int>(generator_.rows()); }
    bool is_diagonal() const { return diagonal_; }

    /// |x|_P
    double weighted_norm(const Vector& x) const;

private:
    friend Dilation make_dilation(const Matrix& generator, const Matrix& weight);
    Dilation() = default;

    Matrix generator_;
    Matrix weight_;
    Matrix weight_sqrt_;
    Matrix weight_inv_sqrt_;
    double eta_min_ = 0.0;
    double eta_max_ = 0.0;
    double generator_norm_ = 0.0;
    bool diagonal_ = false;
};

/// Absolute tolerance on the smallest eigenvalue for positive-definiteness
/// and monotonicity checks.
inline constexpr double kEigenTolerance = 1e-10;

/// Validates (G, P) and caches the monotonicity constants.
/// Throws Error with NotSymmetric, NotPositiveDefinite, NotMonotone or
/// DimensionMismatch.
Dilation make_dilation(const Matrix& generator, const Matrix& weight);

/// Convenience overload with P = I.
Dilation make_dilation(const Matrix& generator);

/// exp(A) by scaling and squaring with the degree-13 Pade approximant.
Matrix matrix_exponential(const Matrix& a);

/// d(s) = exp(s G). Diagonal generators take an elementwise fast path.
Matrix dilate(const Dilation& d, double s);

/// d(s) x without forming the matrix when G is diagonal.
Vector dilate_vector(const Dilation& d, double s, const Vector& x);

/// (lower, upper) with lower |x|_P <= |d(s) x|_P <= upper |x|_P.
std::pair<double, double> dilation_norm_bounds(const Dilation& d, double s);

/// P-weighted induced 2-norm |P^{1/2} M P^{-1/2}|_2.
double weighted_operator_norm(const Dilation& d, const Matrix& m);

/// P-weighted minimal gain inf_{u != 0} |M u|_P / |u|_P.
double weighted_min_gain(const Dilation& d, const Matrix& m);

/// Additive seed group S = {k a | k in Z} over a continuous dilation.
class DiscreteDilation {
public:
    DiscreteDilation(Dilation base, double step);

    const Dilation& base() const { return base_; }
    double step() const { return step_; }
    double seed(long k) const { return static_cast<double>(k) * step_; }
    Matrix at(long k) const { return dilate(base_, seed(k)); }

private:
    Dilation base_;
    double step_;
};

}  // namespace homq

#include "homq/lindil.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <sstream>

namespace homq {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::NotMonotone: return "NotMonotone";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::NegativeInput: return "NegativeInput";
        case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
        case ErrorCode::NotOnSphere: return "NotOnSphere";
        case ErrorCode::InvalidSector: return "InvalidSector";
        case ErrorCode::NonPositiveF1: return "NonPositiveF1";
        case ErrorCode::NotHomogeneous: return "NotHomogeneous";
        case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorCode::UnknownSuite: return "UnknownSuite";
    }
    return "Unknown";
}

namespace {

bool is_diagonal_matrix(const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j && m(i, j) != 0.0) return false;
        }
    }
    return true;
}

// Coefficients of the [13/13] Pade approximant to exp (Higham 2005).
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

double Dilation::weighted_norm(const Vector& x) const {
    return std::sqrt(std::max(0.0, x.dot(weight_ * x)));
}

Dilation make_dilation(const Matrix& generator, const Matrix& weight) {
    const auto n = generator.rows();
    if (n < 1 || generator.cols() != n || weight.rows() != n || weight.cols() != n) {
        std::ostringstream msg;
        msg << "generator is " << generator.rows() << "x" << generator.cols() << ", weight is "
            << weight.rows() << "x" << weight.cols() << "; expected equal square matrices";
        throw Error(ErrorCode::DimensionMismatch, msg.str());
    }
    if (!generator.allFinite() || !weight.allFinite()) {
        throw Error(ErrorCode::InvalidArgument, "generator and weight must be finite");
    }

    const double scale = weight.cwiseAbs().maxCoeff();
    if ((weight - weight.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw Error(ErrorCode::NotSymmetric, "weight matrix P is not symmetric");
    }
    const Matrix sym_weight = 0.5 * (weight + weight.transpose());

    Eigen::SelfAdjointEigenSolver<Matrix> weight_eig(sym_weight);
    const Vector lambda = weight_eig.eigenvalues();
    if (lambda.minCoeff() <= kEigenTolerance) {
        std::ostringstream msg;
        msg << "smallest eigenvalue of P is " << lambda.minCoeff();
        throw Error(ErrorCode::NotPositiveDefinite, msg.str());
    }

    const Matrix lmi = sym_weight * generator + generator.transpose() * sym_weight;
    const double lmi_min = Eigen::SelfAdjointEigenSolver<Matrix>(lmi, Eigen::EigenvaluesOnly)
                               .eigenvalues()
                               .minCoeff();
    if (lmi_min <= kEigenTolerance) {
        std::ostringstream msg;
        msg << "P G + G' P is not positive definite (smallest eigenvalue " << lmi_min << ")";
        throw Error(ErrorCode::NotMonotone, msg.str());
    }

    Dilation d;
    d.generator_ = generator;
    d.weight_ = sym_weight;
    const Matrix& basis = weight_eig.eigenvectors();
    d.weight_sqrt_ = basis * lambda.cwiseSqrt().asDiagonal() * basis.transpose();
    d.weight_inv_sqrt_ = basis * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * basis.transpose();

    const Matrix similar = d.weight_sqrt_ * generator * d.weight_inv_sqrt_;
    const Matrix sym = 0.5 * (similar + similar.transpose());
    const Vector eta = Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly).eigenvalues();
    d.eta_min_ = eta.minCoeff();
    d.eta_max_ = eta.maxCoeff();
    d.generator_norm_ = Eigen::JacobiSVD<Matrix>(similar).singularValues()(0);
    d.diagonal_ = is_diagonal_matrix(generator);
    return d;
}

Dilation make_dilation(const Matrix& generator) {
    return make_dilation(generator, Matrix::Identity(generator.rows(), generator.rows()));
}

Matrix matrix_exponential(const Matrix& a) {
    const auto n = a.rows();
    const Matrix identity = Matrix::Identity(n, n);
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();

    int squarings = 0;
    if (norm1 > kTheta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    }
    const Matrix scaled = a / std::ldexp(1.0, squarings);

    const Matrix a2 = scaled * scaled;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    const auto& b = kPade13;

    const Matrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
    const Matrix u = scaled * (u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * identity);
    const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                     b[2] * a2 + b[0] * identity;

    Matrix result = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

Matrix dilate(const Dilation& d, double s) {
    if (d.is_diagonal()) {
        return (s * d.generator().diagonal()).array().exp().matrix().asDiagonal();
    }
    return matrix_exponential(s * d.generator());
}

Vector dilate_vector(const Dilation& d, double s, const Vector& x) {
    if (d.is_diagonal()) {
        return ((s * d.generator().diagonal()).array().exp() * x.array()).matrix();
    }
    return matrix_exponential(s * d.generator()) * x;
}

std::pair<double, double> dilation_norm_bounds(const Dilation& d, double s) {
    const double a = std::exp(d.eta_min() * s);
    const double b = std::exp(d.eta_max() * s);
    return s >= 0.0 ? std::make_pair(a, b) : std::make_pair(b, a);
}

double weighted_operator_norm(const Dilation& d, const Matrix& m) {
    const Matrix similar = d.weight_sqrt() * m * d.weight_inv_sqrt();
    return Eigen::JacobiSVD<Matrix>(similar).singularValues()(0);
}

double weighted_min_gain(const Dilation& d, const Matrix& m) {
    const Matrix similar = d.weight_sqrt() * m * d.weight_inv_sqrt();
    const Vector sv = Eigen::JacobiSVD<Matrix>(similar).singularValues();
    return sv(sv.size() - 1);
}

DiscreteDilation::DiscreteDilation(Dilation base, double step) : base_(std::move(base)), step_(step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw Error(ErrorCode::InvalidArgument, "discrete dilation step must be positive and finite");
    }
}

}  // namespace homq

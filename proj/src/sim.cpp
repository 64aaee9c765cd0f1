#include "homq/sim.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace homq {

HomPlant make_hom_plant(VectorField drift, Matrix input, double degree, Dilation dilation) {
    if (input.rows() != dilation.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "input matrix rows must equal the state dimension");
    }
    SampleSpec spec;
    spec.count = 200;
    spec.r_lo = 1e-1;
    spec.r_hi = 1e1;
    const double residual = check_field_homogeneity(drift, dilation, degree, spec);
    if (!(residual <= 1e-6)) {
        std::ostringstream msg;
        msg << "drift is not homogeneous of degree " << degree << " (residual " << residual << ")";
        throw Error(ErrorCode::NotHomogeneous, msg.str());
    }
    return HomPlant{std::move(drift), std::move(input), degree, std::move(dilation)};
}

HomPlant example_plant() {
    const Matrix generator = Vector::LinSpaced(3, 3.0, 1.0).asDiagonal();
    Dilation d = make_dilation(generator);
    VectorField drift = [](const Vector& x) {
        Vector f(3);
        f << x(1) * x(2) * x(2) + x(1) * x(1), x(0), x(1) + x(2) * x(2);
        return f;
    };
    Matrix b = Matrix::Zero(3, 1);
    b(0, 0) = 1.0;
    return make_hom_plant(std::move(drift), std::move(b), 1.0, std::move(d));
}

HomFeedback example_feedback() {
    Matrix k(1, 3);
    k << -5.5055, -15.8387, -16.3807;
    return {k, 4.0};
}

Vector hom_feedback_eval(const HomFeedback& fb, const Dilation& d, const Vector& x, const HomNormConfig& cfg) {
    const double r = hom_norm(d, x, cfg);
    if (r == 0.0) return Vector::Zero(fb.gain.rows());
    return std::pow(r, fb.norm_power) * (fb.gain * dilate_vector(d, -std::log(r), x));
}

Trajectory simulate(const HomPlant& plant, const HomFeedback& fb, const std::optional<QuantizerSetup>& quant,
                    const Vector& x0, double h, double t_end, const HomNormConfig& cfg) {
    const Dilation& d = plant.dilation;
    if (!(h > 0.0) || !(t_end >= h) || !std::isfinite(t_end)) {
        throw Error(ErrorCode::InvalidArgument, "need h > 0 and t_end >= h");
    }
    if (x0.size() != d.dim() || fb.gain.cols() != d.dim() || fb.gain.rows() != plant.input.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "x0, gain and input matrix dimensions disagree");
    }

    auto measure = [&](const Vector& x) -> Vector {
        return quant ? hom_quantize(quant->dilation, quant->params, x, cfg) : x;
    };
    auto rhs = [&](const Vector& x) -> Vector {
        if (!x.allFinite()) return Vector::Constant(x.size(), std::numeric_limits<double>::quiet_NaN());
        return plant.drift(x) + plant.input * hom_feedback_eval(fb, d, measure(x), cfg);
    };

    const long steps = std::lround(t_end / h);
    Trajectory traj;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.quantized_states.reserve(steps + 1);
    traj.controls.reserve(steps + 1);
    traj.hom_norms.reserve(steps + 1);

    auto record = [&](long k, const Vector& x) {
        const Vector xq = measure(x);
        traj.times.push_back(static_cast<double>(k) * h);
        traj.states.push_back(x);
        traj.quantized_states.push_back(xq);
        traj.controls.push_back(hom_feedback_eval(fb, d, xq, cfg));
        traj.hom_norms.push_back(hom_norm(d, x, cfg));
    };

    Vector x = x0;
    bool at_rest = d.weighted_norm(x) <= cfg.zero_threshold;
    if (at_rest) x.setZero();
    record(0, x);
    for (long k = 1; k <= steps; ++k) {
        if (!at_rest) {
            const Vector k1 = rhs(x);
            const Vector k2 = rhs(x + 0.5 * h * k1);
            const Vector k3 = rhs(x + 0.5 * h * k2);
            const Vector k4 = rhs(x + h * k3);
            x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (!x.allFinite()) {
                traj.status = SimStatus::NonFiniteState;
                return traj;
            }
            if (d.weighted_norm(x) <= cfg.zero_threshold) {
                at_rest = true;
                x.setZero();
            }
        }
        record(k, x);
    }
    return traj;
}

SettlingMetrics settling_metrics(const Trajectory& traj, double threshold) {
    if (traj.size() == 0) throw Error(ErrorCode::EmptyTrajectory, "trajectory has no samples");
    if (!(threshold > 0.0)) throw Error(ErrorCode::InvalidArgument, "threshold must be positive");

    SettlingMetrics m;
    const double initial = traj.states.front().norm();
    double peak = 0.0;
    for (const Vector& x : traj.states) peak = std::max(peak, x.norm());
    m.overshoot = initial > 0.0 ? peak / initial : 0.0;

    // Walk back from the end to find the last excursion above threshold.
    size_t first_settled = traj.size();
    while (first_settled > 0 && traj.states[first_settled - 1].norm() <= threshold) --first_settled;
    if (first_settled < traj.size()) m.t_enter = traj.times[first_settled];
    return m;
}

}  // namespace homq

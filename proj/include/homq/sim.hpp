#pragma once

#include <optional>
#include <vector>

#include "homq/homcheck.hpp"

namespace homq {

/// x' = f(x) + B u with f homogeneous of degree mu under the dilation.
struct HomPlant {
    VectorField drift;
    Matrix input;  // B, n x m
    double degree;
    Dilation dilation;
};

/// Builds a plant after checking f(d(s)x) = e^{mu s} d(s) f(x) on samples
/// (relative residual <= 1e-6); throws NotHomogeneous otherwise.
HomPlant make_hom_plant(VectorField drift, Matrix input, double degree, Dilation dilation);

/// u(x) = |x|_d^{norm_power} K d(-ln |x|_d) x.
struct HomFeedback {
    Matrix gain;  // K, m x n
    double norm_power = 0.0;
};

struct QuantizerSetup {
    Dilation dilation;
    QuantizerParams params;
};

enum class SimStatus { Completed, NonFiniteState };

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
    std::vector<Vector> quantized_states;
    std::vector<Vector> controls;
    std::vector<double> hom_norms;
    SimStatus status = SimStatus::Completed;

    size_t size() const { return times.size(); }
};

struct SettlingMetrics {
    std::optional<double> t_enter;  // empty when the trajectory never settles
    double overshoot = 0.0;         // max_t |x(t)| / |x(0)|
};

/// The three-state plant x1' = x2 x3^2 + x2^2 + u, x2' = x1, x3' = x2 + x3^2
/// with B = e1, G_d = diag(3, 2, 1), P = I and degree 1.
HomPlant example_plant();

/// The matching feedback: K = [-5.5055, -15.8387, -16.3807], norm power 4.
HomFeedback example_feedback();

Vector hom_feedback_eval(const HomFeedback& fb, const Dilation& d, const Vector& x, const HomNormConfig& cfg = {});

/// Fixed-step RK4 on x' = f(x) + B u(x_hat), x_hat = q_h(x) when a quantizer is
/// given (re-evaluated at every stage), else x_hat = x. Records
/// round(t_end / h) + 1 samples. A non-finite state stops the run and returns
/// the partial trajectory with status NonFiniteState.
Trajectory simulate(const HomPlant& plant, const HomFeedback& fb, const std::optional<QuantizerSetup>& quant,
                    const Vector& x0, double h, double t_end, const HomNormConfig& cfg = {});

/// Euclidean-norm settling time and overshoot. Throws EmptyTrajectory.
SettlingMetrics settling_metrics(const Trajectory& traj, double threshold);

}  // namespace homq

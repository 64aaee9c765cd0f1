#include "homq/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>

#include "homq/sim.hpp"

namespace homq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Property {
    std::string name;
    double bound;
    std::function<double()> worst;
    bool expect_above = false;  // negative controls pass when worst exceeds bound
};

PropertyResult evaluate(const Property& p) {
    PropertyResult r{p.name, false, kInf, p.bound};
    try {
        r.worst = p.worst();
    } catch (const std::exception&) {
        return r;
    }
    r.passed = p.expect_above ? r.worst > p.bound : r.worst <= p.bound;
    return r;
}

double nan_to_inf(double v) { return std::isnan(v) ? kInf : v; }

Matrix mat2(double a, double b, double c, double e) {
    Matrix m(2, 2);
    m << a, b, c, e;
    return m;
}

std::vector<Dilation> test_dilations() {
    std::vector<Dilation> out;
    out.push_back(make_dilation(Matrix::Identity(2, 2)));
    out.push_back(make_dilation(Vector::LinSpaced(3, 3.0, 1.0).asDiagonal().toDenseMatrix()));
    out.push_back(make_dilation(mat2(1.5, 0.6, 0.0, 1.0)));
    out.push_back(make_dilation(mat2(2.0, -1.5, 1.0, 1.0)));
    return out;
}

Dilation diag321() { return make_dilation(Vector::LinSpaced(3, 3.0, 1.0).asDiagonal().toDenseMatrix()); }

Vector random_vector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = g(rng);
    return v;
}

// Random point with homogeneous norm log-uniform in [1e-2, 1e2].
Vector random_point(const Dilation& d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> s(std::log(1e-2), std::log(1e2));
    return dilate_vector(d, s(rng), sample_unit_sphere(d, rng));
}

double rel(const Vector& got, const Vector& expected) {
    return nan_to_inf((got - expected).norm() / std::max(expected.norm(), 1e-12));
}

// ---- dilation ----

std::vector<Property> dilation_suite(const CheckOptions& o) {
    std::vector<Property> ps;
    ps.push_back({"dilation.group_law", 1e-9, [o] {
                      std::mt19937_64 rng(o.seed);
                      std::uniform_real_distribution<double> u(-2.0, 2.0);
                      double worst = 0.0;
                      for (const Dilation& d : test_dilations()) {
                          for (int i = 0; i < 100; ++i) {
                              const double s = u(rng), t = u(rng);
                              const Matrix expected = dilate(d, s + t);
                              const Matrix got = dilate(d, s) * dilate(d, t);
                              worst = std::max(worst, nan_to_inf((got - expected).norm() / expected.norm()));
                          }
                      }
                      return worst;
                  }});
    ps.push_back({"dilation.commutation", 1e-10, [o] {
                      std::mt19937_64 rng(o.seed + 1);
                      std::uniform_real_distribution<double> u(-2.0, 2.0);
                      double worst = 0.0;
                      for (const Dilation& d : test_dilations()) {
                          const Matrix& g = d.generator();
                          for (int i = 0; i < 100; ++i) {
                              const Matrix e = dilate(d, u(rng));
                              const double scale = g.norm() * e.norm();
                              worst = std::max(worst, nan_to_inf((g * e - e * g).norm() / scale));
                          }
                      }
                      return worst;
                  }});
    ps.push_back({"dilation.norm_sandwich", 1e-9, [o] {
                      std::mt19937_64 rng(o.seed + 2);
                      std::uniform_real_distribution<double> u(-3.0, 3.0);
                      double worst = 0.0;
                      for (const Dilation& d : test_dilations()) {
                          for (int i = 0; i < 1000; ++i) {
                              const Vector x = random_vector(d.dim(), rng);
                              const double s = u(rng);
                              const auto [lo, hi] = dilation_norm_bounds(d, s);
                              const double nx = d.weighted_norm(x);
                              const double ndx = d.weighted_norm(dilate_vector(d, s, x));
                              worst = std::max({worst, (lo * nx - ndx) / ndx, (ndx - hi * nx) / ndx});
                          }
                      }
                      return nan_to_inf(worst);
                  }});
    ps.push_back({"dilation.limits", 1e-12, [o] {
                      std::mt19937_64 rng(o.seed + 3);
                      double worst = 0.0;
                      for (const Dilation& d : test_dilations()) {
                          for (int i = 0; i < 100; ++i) {
                              const Vector x = random_vector(d.dim(), rng);
                              const double nx = d.weighted_norm(x);
                              const double shrunk = d.weighted_norm(dilate_vector(d, -40.0, x)) / nx;
                              const double grown = nx / d.weighted_norm(dilate_vector(d, 40.0, x));
                              worst = std::max({worst, shrunk, grown});
                          }
                      }
                      return nan_to_inf(worst);
                  }});
    ps.push_back({"dilation.operator_norm_bounds", 1e-9, [o] {
                      std::mt19937_64 rng(o.seed + 4);
                      std::uniform_real_distribution<double> u(-3.0, 3.0);
                      double worst = 0.0;
                      for (const Dilation& d : test_dilations()) {
                          for (int i = 0; i < 100; ++i) {
                              const double s = u(rng);
                              const Matrix e = dilate(d, s);
                              const auto [lo, hi] = dilation_norm_bounds(d, s);
                              worst = std::max({worst, weighted_operator_norm(d, e) / hi - 1.0,
                                                1.0 - weighted_min_gain(d, e) / lo});
                          }
                      }
                      return nan_to_inf(worst);
                  }});
    return ps;
}

// ---- norm ----

template <class F>
double over_points(const CheckOptions& o, std::uint64_t salt, int per_generator, F&& residual) {
    std::mt19937_64 rng(o.seed + salt);
    double worst = 0.0;
    for (const Dilation& d : test_dilations()) {
        for (int i = 0; i < per_generator; ++i) worst = std::max(worst, nan_to_inf(residual(d, rng)));
    }
    return worst;
}

std::vector<Property> norm_suite(const CheckOptions& o) {
    std::vector<Property> ps;
    ps.push_back({"norm.defining_equation", 1e-12, [o] {
                      return over_points(o, 10, 1000, [](const Dilation& d, std::mt19937_64& rng) {
                          const Vector x = random_point(d, rng);
                          const double r = hom_norm(d, x);
                          return std::abs(d.weighted_norm(dilate_vector(d, -std::log(r), x)) - 1.0);
                      });
                  }});
    ps.push_back({"norm.homogeneity", 1e-7, [o] {
                      return over_points(o, 11, 1000, [](const Dilation& d, std::mt19937_64& rng) {
                          std::uniform_real_distribution<double> u(-3.0, 3.0);
                          const Vector x = random_point(d, rng);
                          const double s = u(rng);
                          const double expected = std::exp(s) * hom_norm(d, x);
                          return std::abs(hom_norm(d, dilate_vector(d, s, x)) - expected) / expected;
                      });
                  }});
    ps.push_back({"norm.analytic_oracle", 1e-12, [] {
                      Vector x(3);
                      x << 8.0, 0.0, 0.0;
                      return std::abs(hom_norm(diag321(), x) - 2.0);
                  }});
    ps.push_back({"norm.monotonicity_sandwich", 1e-8, [o] {
                      return over_points(o, 12, 1000, [](const Dilation& d, std::mt19937_64& rng) {
                          const Vector x = random_point(d, rng);
                          const double nx = d.weighted_norm(x);
                          const double r = hom_norm(d, x);
                          const double a = std::pow(nx, 1.0 / d.eta_max());
                          const double b = std::pow(nx, 1.0 / d.eta_min());
                          const double lo = std::min(a, b), hi = std::max(a, b);
                          return std::max(lo - r, r - hi) / r;
                      });
                  }});
    ps.push_back({"norm.phi_round_trip", 1e-8, [o] {
                      return over_points(o, 13, 500, [](const Dilation& d, std::mt19937_64& rng) {
                          const Vector x = random_point(d, rng);
                          return rel(phi_inv(d, phi(d, x)), x);
                      });
                  }});
    ps.push_back({"norm.phi_preserves_norm", 1e-8, [o] {
                      return over_points(o, 14, 500, [](const Dilation& d, std::mt19937_64& rng) {
                          const Vector x = random_point(d, rng);
                          const double r = hom_norm(d, x);
                          return std::abs(d.weighted_norm(phi(d, x)) - r) / r;
                      });
                  }});
    ps.push_back({"norm.vector_space_axioms", 1e-7, [o] {
                      return over_points(o, 15, 200, [](const Dilation& d, std::mt19937_64& rng) {
                          std::uniform_real_distribution<double> u(-3.0, 3.0);
                          const Vector x = random_point(d, rng);
                          const Vector y = random_point(d, rng);
                          const double lambda = u(rng);
                          const Vector sum = tilde_add(d, x, y);
                          const double commute = rel(phi(d, tilde_add(d, y, x)), phi(d, sum));
                          const double inverse = rel(phi(d, tilde_sub(d, sum, y)), phi(d, x));
                          const double distribute =
                              rel(phi(d, tilde_scale(d, lambda, sum)),
                                  phi(d, tilde_add(d, tilde_scale(d, lambda, x), tilde_scale(d, lambda, y))));
                          const double inner = std::abs(hom_inner(d, x, x) - std::pow(hom_norm(d, x), 2)) /
                                               std::pow(hom_norm(d, x), 2);
                          return std::max({commute, inverse, distribute, inner});
                      });
                  }});
    ps.push_back({"norm.projection_unique", 1e-12, [o] {
                      return over_points(o, 16, 500, [](const Dilation& d, std::mt19937_64& rng) {
                          const FundamentalDomain fd{DiscreteDilation(d, 0.5), 1.0};
                          const Vector x = random_point(d, rng);
                          const double z = hom_norm(d, project_to_domain(fd, x));
                          return std::max({0.0, 1.0 - z, z / std::exp(0.5) - 1.0});
                      });
                  }});
    ps.push_back({"norm.alpha1_distance_bound", 1.0 + 1e-9, [o] {
                      return over_points(o, 17, 1000, [](const Dilation& d, std::mt19937_64& rng) {
                          std::uniform_real_distribution<double> u(-6.0, 0.0);
                          const Vector x = random_point(d, rng);
                          const Vector px = phi(d, x);
                          const Vector py = px + std::exp(u(rng)) * d.weighted_norm(px) *
                                                     d.weight_inv_sqrt() * random_vector(d.dim(), rng).normalized();
                          const Vector y = phi_inv(d, py);
                          const double vartheta = d.weighted_norm(py - px) / d.weighted_norm(px);
                          const double lhs = std::pow(hom_norm(d, y - x) / hom_norm(d, x), 2);
                          return lhs / distance_bound_alpha1(d, vartheta);
                      });
                  }});
    return ps;
}

// ---- quantizer ----

double grid_offset(const QuantizerParams& p, double r) {
    const double i = std::round(std::log(r / p.xi0()) / std::log(p.nu()));
    const double level = std::pow(p.nu(), i) * p.xi0();
    return std::abs(r - level) / level;
}

std::vector<Property> quantizer_suite(const CheckOptions& o) {
    std::vector<Property> ps;
    ps.push_back({"quantizer.radial_sector", 0.0, [o] {
                      const QuantizerParams p(o.nu, o.delta_angle, 1);
                      std::mt19937_64 rng(o.seed + 20);
                      std::uniform_real_distribution<double> u(std::log(1e-6), std::log(1e6));
                      double worst = -kInf;
                      for (int i = 0; i < 10000; ++i) {
                          const double z = std::exp(u(rng));
                          worst = std::max(worst, std::abs(log_quantize(p, z).value - z) - p.delta() * z);
                      }
                      return nan_to_inf(worst);
                  }});
    for (int n : {2, 3, 4}) {
        ps.push_back({"quantizer.spherical_error_n" + std::to_string(n), spherical_error_bound(n, o.delta_angle) + 1e-10,
                      [o, n] {
                          const QuantizerParams p(o.nu, o.delta_angle, n);
                          const Dilation d = make_dilation(Matrix::Identity(n, n));
                          std::mt19937_64 rng(o.seed + 21 + n);
                          double worst = 0.0;
                          for (int i = 0; i < 10000; ++i) {
                              const Vector u = sample_unit_sphere(d, rng);
                              worst = std::max(worst, nan_to_inf((spherical_quantize(d, p, u) - u).norm()));
                          }
                          return worst;
                      }});
    }
    ps.push_back({"quantizer.discrete_homogeneity_identity", 1e-7, [o] {
                      const QuantizerParams p(o.nu, o.delta_angle, 3);
                      SampleSpec spec;
                      spec.count = 1000;
                      spec.seed = o.seed + 30;
                      return check_quantizer_discrete_homogeneity(make_dilation(Matrix::Identity(3, 3)), p, spec);
                  }});
    ps.push_back({"quantizer.discrete_homogeneity_diag", 1e-7, [o] {
                      const QuantizerParams p(o.nu, o.delta_angle, 3);
                      SampleSpec spec;
                      spec.count = 1000;
                      spec.seed = o.seed + 31;
                      return check_quantizer_discrete_homogeneity(diag321(), p, spec);
                  }});
    ps.push_back({"quantizer.discrete_homogeneity_detects_wrong_step", 1e-3,
                  [o] {
                      const QuantizerParams p(o.nu, o.delta_angle, 3);
                      SampleSpec spec;
                      spec.count = 200;
                      spec.seed = o.seed + 32;
                      return check_quantizer_discrete_homogeneity(diag321(), p, spec, 1.0);
                  },
                  true});
    ps.push_back({"quantizer.hom_sector_bound", 0.0, [o] {
                      const QuantizerParams p(o.nu, o.delta_angle, 3);
                      SampleSpec spec;
                      spec.seed = o.seed + 33;
                      const SectorMargin m = sector_margin(diag321(), p, spec);
                      return m.empirical_max / m.epsilon_tilde - 1.0 - 1e-8;
                  }});
    ps.push_back({"quantizer.idempotence", 1e-9, [o] {
                      const QuantizerParams p(o.nu, o.delta_angle, 3);
                      const Dilation d = diag321();
                      SampleSpec spec;
                      spec.count = 1000;
                      spec.seed = o.seed + 34;
                      double worst = 0.0;
                      for (const Vector& x : sample_points(d, spec)) {
                          const Vector q = hom_quantize(d, p, x);
                          worst = std::max(worst, rel(hom_quantize(d, p, q), q));
                      }
                      return worst;
                  }});
    ps.push_back({"quantizer.output_norm_on_grid", 1e-9, [o] {
                      const QuantizerParams p(o.nu, o.delta_angle, 3);
                      const Dilation d = diag321();
                      SampleSpec spec;
                      spec.count = 1000;
                      spec.seed = o.seed + 35;
                      double worst = 0.0;
                      for (const Vector& x : sample_points(d, spec)) {
                          worst = std::max(worst, nan_to_inf(grid_offset(p, hom_norm(d, hom_quantize(d, p, x)))));
                      }
                      return worst;
                  }});
    return ps;
}

// ---- sector ----

VectorField closed_loop_field() {
    const HomPlant plant = example_plant();
    const HomFeedback fb = example_feedback();
    return [plant, fb](const Vector& x) -> Vector {
        return plant.drift(x) + plant.input * hom_feedback_eval(fb, plant.dilation, x);
    };
}

std::vector<Property> sector_suite(const CheckOptions& o) {
    std::vector<Property> ps;
    ps.push_back({"sector.identity_map", 1e-10, [o] {
                      SampleSpec spec;
                      spec.count = 1000;
                      spec.seed = o.seed + 40;
                      const Dilation d = diag321();
                      const SectorSpec sector = SectorSpec::symmetric(Matrix::Identity(3, 3), 0.1);
                      return check_hom_sector([](const Vector& x) { return x; }, d, sector, spec).worst;
                  }});
    ps.push_back({"sector.quantizer_in_sector", 1e-10, [o] {
                      const QuantizerParams p(o.nu, o.delta_angle, 3);
                      const Dilation d = diag321();
                      SampleSpec spec;
                      spec.count = 2000;
                      spec.seed = o.seed + 41;
                      const SectorSpec sector = SectorSpec::symmetric(Matrix::Identity(3, 3), epsilon_tilde(p));
                      return check_hom_sector([&](const Vector& x) { return hom_quantize(d, p, x); }, d, sector, spec)
                          .worst;
                  }});
    ps.push_back({"sector.locality", 1e-7, [o] {
                      const QuantizerParams p(o.nu, o.delta_angle, 3);
                      SampleSpec spec;
                      spec.count = 2000;
                      spec.r_lo = 1e-1;
                      spec.r_hi = 1e2;
                      spec.seed = o.seed + 42;
                      const LocalityResult r = check_sector_locality(diag321(), p, spec);
                      return nan_to_inf(std::abs(r.local_max - r.global_max));
                  }});
    ps.push_back({"sector.epsilon_margin", 0.0, [o] {
                      const QuantizerParams p(o.nu, o.delta_angle, 3);
                      SampleSpec spec;
                      spec.count = 2000;
                      spec.seed = o.seed + 43;
                      const SectorMargin m = sector_margin(diag321(), p, spec);
                      return nan_to_inf(m.empirical_max - m.epsilon_tilde);
                  }});
    ps.push_back({"sector.plant_homogeneity", 1e-7, [o] {
                      const HomPlant plant = example_plant();
                      SampleSpec spec;
                      spec.count = 1000;
                      spec.seed = o.seed + 44;
                      return check_field_homogeneity(plant.drift, plant.dilation, plant.degree, spec);
                  }});
    ps.push_back({"sector.closed_loop_homogeneity", 1e-7, [o] {
                      SampleSpec spec;
                      spec.count = 500;
                      spec.seed = o.seed + 45;
                      return check_field_homogeneity(closed_loop_field(), diag321(), 1.0, spec);
                  }});
    return ps;
}

// ---- sim ----

Vector ones3() { return Vector::Ones(3); }

std::vector<Property> sim_suite(const CheckOptions& o) {
    std::vector<Property> ps;
    ps.push_back({"sim.equilibrium", 0.0, [o] {
                      const QuantizerSetup q{diag321(), QuantizerParams(o.nu, o.delta_angle, 3)};
                      const Trajectory t =
                          simulate(example_plant(), example_feedback(), q, Vector::Zero(3), 1e-3, 0.5);
                      double worst = 0.0;
                      for (const Vector& x : t.states) worst = std::max(worst, x.cwiseAbs().maxCoeff());
                      return worst;
                  }});
    ps.push_back({"sim.scaling_symmetry", 1e-4, [] {
                      const HomPlant plant = example_plant();
                      const HomFeedback fb = example_feedback();
                      const double h = 1e-3, t_end = 1.0;
                      const Trajectory base = simulate(plant, fb, std::nullopt, ones3(), h, t_end);
                      double worst = 0.0;
                      for (double s : {-std::log(2.0), std::log(2.0)}) {
                          const double c = std::exp(-plant.degree * s);
                          const Trajectory scaled = simulate(plant, fb, std::nullopt,
                                                             dilate_vector(plant.dilation, s, ones3()), h * c, t_end * c);
                          if (scaled.size() != base.size()) return kInf;
                          for (size_t k = 0; k < base.size(); ++k) {
                              worst = std::max(worst, rel(scaled.states[k], dilate_vector(plant.dilation, s, base.states[k])));
                          }
                      }
                      return worst;
                  }});
    ps.push_back({"sim.quantized_norm_on_grid", 1e-9, [o] {
                      const QuantizerParams p(o.nu, o.delta_angle, 3);
                      const QuantizerSetup q{diag321(), p};
                      const Trajectory t = simulate(example_plant(), example_feedback(), q, ones3(), 1e-3, 2.0);
                      double worst = 0.0;
                      for (const Vector& xq : t.quantized_states) {
                          worst = std::max(worst, nan_to_inf(grid_offset(p, hom_norm(q.dilation, xq))));
                      }
                      return worst;
                  }});
    ps.push_back({"sim.step_halving", 1e-6, [] {
                      const HomPlant plant = example_plant();
                      const HomFeedback fb = example_feedback();
                      const Trajectory coarse = simulate(plant, fb, std::nullopt, ones3(), 1e-3, 1.0);
                      const Trajectory fine = simulate(plant, fb, std::nullopt, ones3(), 5e-4, 1.0);
                      return rel(coarse.states.back(), fine.states.back());
                  }});
    return ps;
}

using SuiteBuilder = std::vector<Property> (*)(const CheckOptions&);

const std::map<std::string, SuiteBuilder>& builders() {
    static const std::map<std::string, SuiteBuilder> table = {{"dilation", dilation_suite},
                                                              {"norm", norm_suite},
                                                              {"quantizer", quantizer_suite},
                                                              {"sector", sector_suite},
                                                              {"sim", sim_suite}};
    return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"dilation", "norm", "quantizer", "sector", "sim", "all"};
    return names;
}

std::vector<PropertyResult> run_suite(const std::string& suite, const CheckOptions& opts) {
    std::vector<Property> props;
    if (suite == "all") {
        for (const auto& [name, build] : builders()) {
            auto more = build(opts);
            props.insert(props.end(), more.begin(), more.end());
        }
    } else {
        const auto it = builders().find(suite);
        if (it == builders().end()) throw Error(ErrorCode::UnknownSuite, "unknown suite `" + suite + "`");
        props = it->second(opts);
    }
    std::vector<PropertyResult> results;
    results.reserve(props.size());
    for (const Property& p : props) results.push_back(evaluate(p));
    std::sort(results.begin(), results.end(),
              [](const PropertyResult& a, const PropertyResult& b) { return a.name < b.name; });
    return results;
}

}  // namespace homq

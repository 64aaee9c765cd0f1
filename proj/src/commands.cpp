#include "homq/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>

namespace homq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void put(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

void put_vector(std::ostream& out, const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out << ',';
        put(out, v(i));
    }
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
    return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "failed writing " + path);
}

// Distinct grid values of an angle: [0, pi] for polar angles, [0, 2 pi)
// (wrapped) for the last one.
std::vector<double> angle_grid(double delta_angle, bool last) {
    std::vector<double> grid;
    const double limit = last ? kTwoPi : std::numbers::pi;
    for (long j = 0;; ++j) {
        const double raw = static_cast<double>(j) * delta_angle;
        if (last ? !(raw - 0.5 * delta_angle < limit) : !(raw - 0.5 * delta_angle <= limit)) break;
        const double value = round_angle(raw, delta_angle, last);
        if (last && j > 0 && std::min(value, kTwoPi - value) < 1e-9) continue;
        grid.push_back(value);
    }
    return grid;
}

Vector angle_pair(double polar, double azimuth) {
    Vector v(2);
    v << polar, azimuth;
    return v;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    const Eigen::Index n = traj.size() ? traj.states.front().size() : 0;
    const Eigen::Index m = traj.size() ? traj.controls.front().size() : 0;
    out << 't';
    for (Eigen::Index i = 1; i <= n; ++i) out << ",x" << i;
    for (Eigen::Index i = 1; i <= n; ++i) out << ",q" << i;
    for (Eigen::Index i = 1; i <= m; ++i) out << ",u" << i;
    out << ",hnorm\n";
    for (size_t k = 0; k < traj.size(); ++k) {
        put(out, traj.times[k]);
        put_vector(out, traj.states[k]);
        put_vector(out, traj.quantized_states[k]);
        put_vector(out, traj.controls[k]);
        out << ',';
        put(out, traj.hom_norms[k]);
        out << '\n';
    }
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_path) {
    validate_config(cfg);
    const HomPlant plant = config_plant(cfg);
    std::optional<QuantizerSetup> quant;
    if (cfg.quantized) quant = QuantizerSetup{config_dilation(cfg), config_quantizer(cfg)};

    std::ofstream out = open_output(out_path);
    const Trajectory traj = simulate(plant, config_feedback(cfg), quant, cfg.x0, cfg.step, cfg.t_end);
    write_trajectory_csv(out, traj);
    finish_output(out, out_path);
    return traj.status == SimStatus::Completed ? kExitOk : kExitBlowUp;
}

std::vector<Seed> enumerate_seeds(const Dilation& d, const QuantizerParams& p, long lo, long hi) {
    const int n = d.dim();
    if (n != 2 && n != 3) {
        throw Error(ErrorCode::UnsupportedDimension, "seed export supports n = 2 or n = 3 only");
    }
    if (lo > hi) throw Error(ErrorCode::InvalidArgument, "level range is empty");

    std::vector<Vector> angles;
    const std::vector<double> azimuths = angle_grid(p.delta_angle(), true);
    if (n == 2) {
        for (double phi : azimuths) angles.push_back(Vector::Constant(1, phi));
    } else {
        for (double polar : angle_grid(p.delta_angle(), false)) {
            if (std::abs(std::sin(polar)) < 1e-12) {
                angles.push_back(angle_pair(polar, 0.0));
                continue;
            }
            for (double phi : azimuths) angles.push_back(angle_pair(polar, phi));
        }
    }

    std::vector<Seed> seeds;
    seeds.reserve(angles.size() * static_cast<size_t>(hi - lo + 1));
    for (long i = lo; i <= hi; ++i) {
        const double radius = std::pow(p.nu(), static_cast<double>(i)) * p.xi0();
        for (size_t j = 0; j < angles.size(); ++j) {
            const Vector direction = d.weight_inv_sqrt() * from_spherical({1.0, angles[j]});
            Seed s;
            s.level = i;
            s.angle_index = static_cast<long>(j);
            s.coords = dilate_vector(d, std::log(radius), direction);
            s.hnorm = hom_norm(d, s.coords);
            seeds.push_back(std::move(s));
        }
    }
    return seeds;
}

void write_seeds_csv(std::ostream& out, const std::vector<Seed>& seeds) {
    const Eigen::Index n = seeds.empty() ? 0 : seeds.front().coords.size();
    out << "level,angle_index";
    for (Eigen::Index i = 1; i <= n; ++i) out << ",s" << i;
    out << ",hnorm\n";
    for (const Seed& s : seeds) {
        out << s.level << ',' << s.angle_index;
        put_vector(out, s.coords);
        out << ',';
        put(out, s.hnorm);
        out << '\n';
    }
}

int cmd_seeds(const RunConfig& cfg, long lo, long hi, const std::string& out_path) {
    validate_config(cfg);
    const std::vector<Seed> seeds = enumerate_seeds(config_dilation(cfg), config_quantizer(cfg), lo, hi);
    std::ofstream out = open_output(out_path);
    write_seeds_csv(out, seeds);
    finish_output(out, out_path);
    return kExitOk;
}

std::pair<long, long> parse_level_range(const std::string& text) {
    const size_t sep = text.find("..");
    if (sep == std::string::npos) {
        throw Error(ErrorCode::ParseError, "level range must look like lo..hi, got `" + text + "`");
    }
    auto parse = [&](size_t begin, size_t end) {
        long v = 0;
        const char* first = text.data() + begin;
        const char* last = text.data() + end;
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (first == last || ec != std::errc() || ptr != last) {
            throw Error(ErrorCode::ParseError, "invalid level bound in `" + text + "`");
        }
        return v;
    };
    return {parse(0, sep), parse(sep + 2, text.size())};
}

int cmd_check(const std::string& suite, const CheckOptions& opts, std::ostream& out) {
    const std::vector<PropertyResult> results = run_suite(suite, opts);
    bool all_passed = true;
    for (const PropertyResult& r : results) {
        all_passed = all_passed && r.passed;
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ' ';
        put(out, r.worst);
        out << ' ';
        put(out, r.bound);
        out << '\n';
    }
    return all_passed ? kExitOk : kExitFailure;
}

}  // namespace homq

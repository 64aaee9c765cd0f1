#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "homq/config.hpp"
#include "homq/suites.hpp"

namespace homq {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBlowUp = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitUsage = 4;

/// Header t,x1..xn,q1..qn,u1..um,hnorm then one row per sample.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Runs the configured simulation and writes the CSV. Returns kExitOk, or
/// kExitBlowUp after writing the partial trajectory of a diverging run.
/// Throws IoError if out_path cannot be written.
int cmd_simulate(const RunConfig& cfg, const std::string& out_path);

struct Seed {
    long level = 0;
    long angle_index = 0;
    Vector coords;
    double hnorm = 0.0;
};

/// Every d(ln(nu^i xi0)) q_s(direction) for lo <= i <= hi and every angular
/// grid direction. Throws UnsupportedDimension unless n is 2 or 3.
std::vector<Seed> enumerate_seeds(const Dilation& d, const QuantizerParams& p, long lo, long hi);

/// Header level,angle_index,s1..sn,hnorm.
void write_seeds_csv(std::ostream& out, const std::vector<Seed>& seeds);

/// Throws IoError, UnsupportedDimension or InvalidArgument (lo > hi).
int cmd_seeds(const RunConfig& cfg, long lo, long hi, const std::string& out_path);

/// Parses "lo..hi"; throws ParseError.
std::pair<long, long> parse_level_range(const std::string& text);

/// Prints `PASS|FAIL name worst bound` per property. Returns kExitOk when all
/// pass and kExitFailure otherwise; throws UnknownSuite.
int cmd_check(const std::string& suite, const CheckOptions& opts, std::ostream& out);

}  // namespace homq

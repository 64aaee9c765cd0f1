#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "homq/types.hpp"

namespace homq {

struct PropertyResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;
    double bound = 0.0;
};

/// Knobs of the check suites. nu and delta_angle parametrize every quantizer
/// fixture; an invalid nu makes the quantizer properties fail.
struct CheckOptions {
    std::uint64_t seed = 42;
    double nu = 0.7;
    double delta_angle = std::numbers::pi / 20.0;
};

/// dilation, norm, quantizer, sector, sim, or all.
const std::vector<std::string>& suite_names();

/// Runs one suite (or all of them) and returns results sorted by name.
/// Throws UnknownSuite. A property whose evaluation throws is reported as
/// failed with an infinite residual.
std::vector<PropertyResult> run_suite(const std::string& suite, const CheckOptions& opts = {});

}  // namespace homq

#pragma once

#include <cstdint>
#include <string>

#include "homq/sim.hpp"

namespace homq {

enum class PlantKind { Example, Linear };

/// Everything a CLI run needs. Matrices are stored row-major as parsed.
///
/// Document format: one `key = value` per line, `#` starts a comment,
/// matrices are rows separated by `;` with space-separated entries.
///
///   generator   required  n x n
///   gain        required  m x n
///   nu          required  (0, 1)
///   delta_angle required  (0, pi], radians
///   x0          required  n entries
///   weight      optional  n x n, default identity
///   norm_power  optional  default 0
///   step        optional  default 1e-4
///   t_end       optional  default 20
///   quantized   optional  default true
///   rng_seed    optional  default 42
///   plant       optional  `example` (default) or `linear`
///   drift       linear plant only, n x n
///   input       linear plant only, n x m
///   degree      linear plant only, default 0
struct RunConfig {
    Matrix generator;
    Matrix weight;
    Matrix gain;
    double norm_power = 0.0;
    double nu = 0.0;
    double delta_angle = 0.0;
    Vector x0;
    double step = 1e-4;
    double t_end = 20.0;
    bool quantized = true;
    std::int64_t rng_seed = 42;
    PlantKind plant = PlantKind::Example;
    Matrix drift;
    Matrix input;
    double degree = 0.0;
};

bool operator==(const RunConfig& a, const RunConfig& b);

/// Throws ParseError (with line and column) or ValidationError (naming the key).
RunConfig parse_config(const std::string& text);

/// Reads and parses a file; throws IoError if it cannot be read.
RunConfig load_config(const std::string& path);

/// Inverse of parse_config; numbers are written with 17 significant digits.
std::string serialize_config(const RunConfig& cfg);

/// Checks dimensions and the invariants of every type the config builds.
void validate_config(const RunConfig& cfg);

Dilation config_dilation(const RunConfig& cfg);
QuantizerParams config_quantizer(const RunConfig& cfg);
HomPlant config_plant(const RunConfig& cfg);
HomFeedback config_feedback(const RunConfig& cfg);

}  // namespace homq

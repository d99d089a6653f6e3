#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oedp/types.hpp"

namespace oedp {

enum class Mode { online, time_stretch, power_law };

std::string mode_name(Mode m);
Mode parse_mode(const std::string& s); // throws ConfigError

// User-facing knobs. Exactly one of phi/t must be set (t=0 means "derive
// from phi"); exact=true overrides epsilon with 1/n.
struct DetectorConfig {
    Mode mode = Mode::online;
    std::uint64_t n = 0;  // declared stream length
    double phi = 0.0;     // reporting fraction in (0,1]
    std::uint64_t t = 0;  // explicit threshold; 0 = use phi
    bool exact = false;   // epsilon := 1/n
    double epsilon = 0.0; // error fraction, 1/n <= eps < phi
    std::uint64_t m = 0;  // RAM budget in entries
    std::uint64_t b = 0;  // block size in entries
    double r = 2.0;       // level growth factor, > 1
    std::uint64_t q = 0;  // time-stretch bins per level; 0 = derive from alpha
    double alpha = 0.0;   // time-stretch factor
    double theta = 0.0;   // power-law exponent, > 1
    bool dynamic_thresholds = false;
};

// Everything computable from the config up front.
struct DerivedParams {
    std::uint64_t t = 0;      // occurrence threshold, ceil(phi*n)
    double phi = 0.0;         // effective fraction (t/n when t was given)
    double epsilon = 0.0;     // effective error fraction
    bool exact = false;       // epsilon == 1/n
    Count report_min = 0;     // smallest reportable consolidated count

    std::size_t levels = 0;                     // L for the chosen mode
    std::vector<std::uint64_t> level_capacity;  // per level, entries (see mode docs)

    // online mode: level-0 count line whose upward crossing triggers a
    // consolidation query, (phi - 1/m) * n; clamped at 0.
    double trigger_line = 0.0;

    // time-stretch mode
    std::uint64_t q = 0;      // bins per level (integer >= 2)
    double alpha_eff = 0.0;   // 1/(q-1): the stretch actually guaranteed
    std::vector<double> bin_capacity; // per level, sum-of-counts per bin

    // power-law mode; tau[0] unused (RAM is unbounded per key)
    std::vector<std::uint64_t> tau;  // per-level max units of one key, 1..L
    std::uint64_t tau_sum = 0;
    std::uint64_t sweep_trigger = 0; // RAM count that triggers a sweep
};

// Validate hard requirements and compute derived parameters.
// Throws ConfigError with a human-readable message on nonsense input.
DerivedParams derive_params(const DetectorConfig& cfg);

// Soft preconditions the algorithms need for their exactness guarantees.
// Returns one violated inequality per entry (empty = all good). The CLI
// refuses to run on violations; the library runs anyway (useful for tiny
// didactic streams).
std::vector<std::string> check_preconditions(const DetectorConfig& cfg,
                                             const DerivedParams& d);

// Recompute the power-law sweep trigger for a threshold vector (dynamic
// mode raises taus as it learns them).
std::uint64_t pl_sweep_trigger(std::uint64_t t, std::uint64_t tau_sum);

// Occurrence threshold ceil(phi * n), guarded against float noise on dyadic
// phi; never returns 0.
std::uint64_t threshold_for(double phi, std::uint64_t n);

} // namespace oedp

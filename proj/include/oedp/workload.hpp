#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "oedp/types.hpp"

namespace oedp {

// Deterministic RNG helpers: all draws go through these so streams are
// reproducible across platforms for a fixed seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
    std::uint64_t bounded(std::uint64_t n);

    // Uniform double in (0, 1] with 53 random bits (never exactly zero, so
    // inverse-CDF transforms stay finite).
    double unit();

  private:
    std::mt19937_64 eng_;
};

enum class Distribution { uniform, power_law, planted };
enum class ArrivalOrder { shuffled, adversarial_burst, round_robin };

std::string distribution_name(Distribution d);
Distribution parse_distribution(const std::string& s);
std::string order_name(ArrivalOrder o);
ArrivalOrder parse_order(const std::string& s);

struct PlantedKey {
    Key key = 0;
    Count count = 0;
};

struct StreamSpec {
    std::uint64_t n = 0;
    std::uint64_t universe = 0; // uniform/power_law: keys drawn from 1..universe
    Distribution dist = Distribution::uniform;
    double theta = 0.0;               // power_law tail exponent, > 1
    std::vector<PlantedKey> planted;  // planted: exact counts, padded with singletons
    ArrivalOrder order = ArrivalOrder::shuffled;
    std::uint64_t seed = 0;
};

// Produce exactly n keys honoring the distribution and arrival order.
// Throws ConfigError on infeasible specs.
std::vector<Key> generate_stream(const StreamSpec& spec);

struct TruthEvent {
    Key key = 0;
    TimeIndex first_seen = 0;
    TimeIndex trigger_time = 0; // index of the T-th occurrence
    Count flow = 0;             // trigger_time - first_seen
    TimeIndex deadline = 0;     // floor(trigger_time + alpha*flow)
};

struct GroundTruth {
    std::map<Key, Count> counts;
    std::vector<TruthEvent> events; // in trigger order
};

// Exact single-pass counting oracle. alpha stretches deadlines; pass 0 for
// modes that must report at the trigger itself.
GroundTruth oracle_events(const std::vector<Key>& stream, Count t, double alpha);

// Stream files: ".txt" holds one decimal key per line; anything else is
// packed little-endian 8-byte keys.
void write_stream(const std::string& path, const std::vector<Key>& stream);
std::vector<Key> read_stream(const std::string& path);

// FNV-1a 64-bit hash of a file's bytes, as 16 hex digits.
std::string hash_file(const std::string& path);

// Ground-truth CSV: key,first_seen,trigger_time,flow,deadline (with header).
void write_truth_csv(const std::string& path, const GroundTruth& truth);
std::vector<TruthEvent> read_truth_csv(const std::string& path);

} // namespace oedp

#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "oedp/block_store.hpp"
#include "oedp/config.hpp"
#include "oedp/mg_table.hpp"
#include "oedp/types.hpp"

namespace oedp {

// Tail probability of the count distribution: Prob(count > c) = c^-(theta-1).
// Throws ConfigError outside the domain c >= 1, theta > 1.
double tail_probability(Count c, double theta);

// Filter tuned for heavy-tailed key distributions: disk level i stores at
// most tau_i units of any one key, so a key's RAM count is never more than
// sum(tau) below its true frequency. A RAM count reaching T - sum(tau)
// sweeps that key's units off disk, pins the consolidated total in RAM, and
// reports the moment it hits the threshold. RAM overflow triggers a shuffle
// merge: consolidate levels 0..j into the shallowest level j with room and
// repack each key bottom-up under the tau caps.
//
// Thresholds are either fixed from the (theta, r, epsilon, n) closed form
// or learned per merge (each level's tau rises just enough to fully flush
// at least half the entries of the level above); learned taus only grow.
class PowerLawFilter {
  public:
    PowerLawFilter(const DetectorConfig& cfg, const DerivedParams& d, BlockStore& store);

    void insert(Key key);

    const std::vector<EventReport>& events() const { return events_; }
    TimeIndex now() const { return time_; }
    std::uint64_t sweep_count() const { return sweeps_; }
    std::uint64_t merge_count() const { return merges_; }

    const std::vector<std::uint64_t>& tau() const { return tau_; } // index 1..L
    std::uint64_t tau_sum() const { return tau_sum_; }
    std::uint64_t sweep_trigger() const { return trigger_; }
    // One tau-vector snapshot per merge (dynamic mode).
    const std::vector<std::vector<std::uint64_t>>& tau_trace() const { return tau_trace_; }

    std::uint64_t live_entries(std::size_t level) const { return live_entries_[level]; }
    std::uint64_t max_entries_seen(std::size_t level) const { return max_entries_[level]; }

    const MgTable& ram() const { return ram_; }

    // Test hook: true remaining total for a key (RAM plus all levels).
    Count consolidated_count(Key key);

  private:
    std::size_t level_run(std::size_t level) const { return level - 1; } // levels 1..L
    void sweep(Key key, MgEntry& e);
    void shuffle_merge(std::size_t from_level);
    void learn_taus(std::size_t j,
                    const std::map<Key, std::pair<Count, std::uint8_t>>& consolidated,
                    const std::vector<std::vector<Key>>& level_keys,
                    const std::vector<Key>& ram_keys);
    void refresh_trigger();

    DetectorConfig cfg_;
    DerivedParams d_;
    BlockStore& store_;
    MgTable ram_;

    std::vector<std::uint64_t> tau_;  // [0] unused
    std::uint64_t tau_sum_ = 0;
    std::uint64_t trigger_ = 0;
    std::vector<std::uint64_t> live_entries_; // [0] unused; tombstones excluded
    std::vector<std::uint64_t> max_entries_;

    std::vector<EventReport> events_;
    TimeIndex time_ = 0;
    std::uint64_t sweeps_ = 0;
    std::uint64_t merges_ = 0;
    std::vector<std::vector<std::uint64_t>> tau_trace_;
};

} // namespace oedp

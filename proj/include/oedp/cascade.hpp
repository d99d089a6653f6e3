#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "oedp/block_store.hpp"
#include "oedp/config.hpp"
#include "oedp/mg_table.hpp"
#include "oedp/types.hpp"

namespace oedp {

struct OfflineCandidate {
    Key key = 0;
    Count count = 0;
    bool was_reported = false;
};

// Cascaded counter levels with online event detection. Level 0 is a RAM
// table of m entries; levels 1..L-1 live in the block store with capacity
// ceil(r^i * m); one unbounded overflow run preserves reported keys whose
// units fall off the deepest counter level.
//
// Detection: when a key's RAM count first rises above (phi - 1/m) * n the
// detector pays for one cross-level consolidation and caches the result in
// the entry; each later occurrence advances the cached total for free, and
// the report fires the moment it reaches the reporting threshold. Losing
// the RAM entry drops the cache; the next rise above the line re-queries.
class CascadeDetector {
  public:
    CascadeDetector(const DetectorConfig& cfg, const DerivedParams& d, BlockStore& store);

    void insert(Key key); // feed the next stream item

    // All full-level scans summed per key, at or above the reporting
    // threshold; solves the offline approximate heavy-hitters problem.
    std::vector<OfflineCandidate> offline_candidates();

    const std::vector<EventReport>& events() const { return events_; }
    TimeIndex now() const { return time_; }
    std::uint64_t consolidation_queries() const { return queries_; }
    std::uint64_t flush_invocations() const { return flushes_; }
    std::uint64_t discarded_units() const { return discarded_units_; }

    const MgTable& ram() const { return ram_; }
    std::size_t level_run(std::size_t level) const { return level - 1; }
    std::size_t overflow_run() const { return d_.levels > 1 ? d_.levels - 1 : 0; }

    // Test hook: the key's total across RAM and every stored level,
    // ignoring the early-stop rule. Charged as query I/O.
    Count consolidated_count(Key key);

  private:
    void flush_batch(std::size_t level, const std::vector<MgUnit>& units);
    std::pair<Count, bool> consolidate_query(Key key, const MgEntry& e);
    void merge_overflow(const std::vector<MgUnit>& units);

    DetectorConfig cfg_;
    DerivedParams d_;
    BlockStore& store_;
    MgTable ram_;
    TimeIndex time_ = 0;
    std::vector<EventReport> events_;
    std::uint64_t queries_ = 0;
    std::uint64_t flushes_ = 0;
    std::uint64_t discarded_units_ = 0;
    std::vector<MgUnit> spill_; // reused scratch for the RAM level
};

} // namespace oedp

#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <vector>

#include "oedp/block_store.hpp"
#include "oedp/config.hpp"
#include "oedp/types.hpp"

namespace oedp {

// Event detector with age-binned levels: every level splits into q bins
// rotated on a fullness schedule, so all reporting work rides along with
// flushes and each event surfaces within an alpha fraction of its flow
// time. Level 0's bins live in RAM; deeper bins are sorted runs; the final
// level is one consolidated run that only ever absorbs.
class TimeStretchFilter {
  public:
    TimeStretchFilter(const DetectorConfig& cfg, const DerivedParams& d, BlockStore& store);

    void insert(Key key);
    void finalize(); // end-of-stream scan so late events are not lost

    const std::vector<EventReport>& events() const { return events_; }
    TimeIndex now() const { return time_; }
    std::uint64_t flush_invocations() const { return flushes_; }

    // Item indices at which each level shifted, for schedule checks.
    const std::vector<std::vector<TimeIndex>>& shift_times() const { return shift_times_; }

    bool is_reported(Key key) const { return reported_.count(key) != 0; }

  private:
    struct RamBin {
        std::map<Key, Count> counts;
        Count total = 0;
    };

    std::size_t bin_run(std::size_t level, std::size_t bin) const; // bin is 0-based, 0 = b1
    Count ram_total(Key key) const;
    void shift_level(std::size_t level); // rotate + dump old b_q downward
    void scan_and_report(std::size_t deepest_level, TimeIndex report_time);
    void report(Key key, Count total, TimeIndex t);

    DetectorConfig cfg_;
    DerivedParams d_;
    BlockStore& store_;

    std::size_t final_level_; // single consolidated run, never shifts
    std::deque<RamBin> ram_bins_; // front() = b1
    std::vector<std::size_t> rotation_; // per bin level: physical index of b1
    std::vector<std::vector<Count>> bin_totals_; // per bin level, per physical run

    std::set<Key> reported_;
    std::vector<EventReport> events_;
    TimeIndex time_ = 0;
    std::uint64_t flushes_ = 0;
    std::vector<std::vector<TimeIndex>> shift_times_;
};

} // namespace oedp

#include "oedp/cascade.hpp"

#include <algorithm>
#include <map>

namespace oedp {

CascadeDetector::CascadeDetector(const DetectorConfig& cfg, const DerivedParams& d,
                                 BlockStore& store)
    : cfg_(cfg), d_(d), store_(store), ram_(cfg.m) {
    // Counter levels 1..L-1, then the unbounded overflow run (always last
    // so the file backend can lay regions out contiguously).
    for (std::size_t i = 1; i < d_.levels; ++i) store_.add_run(d_.level_capacity[i]);
    store_.add_run(0);
}

void CascadeDetector::insert(Key key) {
    time_ += 1;
    PhaseScope ph(store_.io(), IoPhase::insert);

    spill_.clear();
    ram_.insert(key, false, spill_);
    if (!spill_.empty()) flush_batch(1, spill_);

    MgEntry* e = ram_.find(key);
    if (e == nullptr || e->reported) return;

    if (e->cached) {
        // One more true occurrence of this key; the cached lower bound
        // advances for free.
        e->known_total += 1;
        if (e->known_total >= d_.report_min) {
            events_.push_back(EventReport{key, time_, time_, e->known_total});
            e->reported = true;
        }
        return;
    }

    const double line = d_.trigger_line;
    const double before = static_cast<double>(e->count - 1);
    const double after = static_cast<double>(e->count);
    if (before <= line && after > line) {
        const auto [total, seen_reported] = consolidate_query(key, *e);
        e->cached = true;
        e->known_total = total;
        if (seen_reported) {
            e->reported = true;
        } else if (total >= d_.report_min) {
            events_.push_back(EventReport{key, time_, time_, total});
            e->reported = true;
        }
    }
}

std::pair<Count, bool> CascadeDetector::consolidate_query(Key key, const MgEntry& e) {
    PhaseScope ph(store_.io(), IoPhase::query);
    queries_ += 1;
    Count total = e.count;
    bool seen = e.reported;
    for (std::size_t run = 0; run < store_.run_count() && !seen; ++run) {
        const auto rec = store_.point_query(run, key);
        if (rec) {
            total += rec->count;
            if (rec->flags & kFlagReported) seen = true;
        }
    }
    return {total, seen};
}

void CascadeDetector::flush_batch(std::size_t level, const std::vector<MgUnit>& units) {
    if (level >= d_.levels) {
        merge_overflow(units);
        return;
    }
    PhaseScope ph(store_.io(), IoPhase::flush);
    flushes_ += 1;

    const std::size_t run = level_run(level);
    MgTable tbl(d_.level_capacity[level]);
    for (const Record& r : store_.read_run(run)) {
        MgEntry e;
        e.count = r.count;
        e.reported = (r.flags & kFlagReported) != 0;
        tbl.load(r.key, e);
    }
    std::vector<MgUnit> deeper;
    for (const MgUnit& u : units) tbl.insert(u.key, u.reported, deeper);
    store_.write_run(run, tbl.drain());
    if (!deeper.empty()) flush_batch(level + 1, deeper);
}

void CascadeDetector::merge_overflow(const std::vector<MgUnit>& units) {
    // Only reported keys survive past the deepest counter level; everything
    // else is the structure's bounded counting error.
    std::map<Key, Count> add;
    for (const MgUnit& u : units) {
        if (u.reported)
            add[u.key] += 1;
        else
            discarded_units_ += 1;
    }
    if (add.empty()) return;

    PhaseScope ph(store_.io(), IoPhase::flush);
    const std::size_t run = overflow_run();
    std::vector<Record> merged = store_.read_run(run);
    for (Record& r : merged) {
        auto it = add.find(r.key);
        if (it != add.end()) {
            r.count += it->second;
            add.erase(it);
        }
    }
    for (const auto& [key, count] : add)
        merged.push_back(Record{key, count, kFlagReported});
    std::sort(merged.begin(), merged.end(),
              [](const Record& a, const Record& b) { return a.key < b.key; });
    store_.write_run(run, merged);
}

Count CascadeDetector::consolidated_count(Key key) {
    PhaseScope ph(store_.io(), IoPhase::query);
    Count total = ram_.estimate(key);
    for (std::size_t run = 0; run < store_.run_count(); ++run) {
        const auto rec = store_.point_query(run, key);
        if (rec) total += rec->count;
    }
    return total;
}

std::vector<OfflineCandidate> CascadeDetector::offline_candidates() {
    PhaseScope ph(store_.io(), IoPhase::query);
    std::map<Key, std::pair<Count, bool>> sums;
    for (const auto& [key, e] : ram_.entries()) {
        auto& slot = sums[key];
        slot.first += e.count;
        slot.second = slot.second || e.reported;
    }
    for (std::size_t run = 0; run < store_.run_count(); ++run) {
        for (const Record& r : store_.read_run(run)) {
            auto& slot = sums[r.key];
            slot.first += r.count;
            slot.second = slot.second || (r.flags & kFlagReported) != 0;
        }
    }
    std::vector<OfflineCandidate> out;
    for (const auto& [key, slot] : sums)
        if (slot.first >= d_.report_min)
            out.push_back(OfflineCandidate{key, slot.first, slot.second});
    return out;
}

} // namespace oedp

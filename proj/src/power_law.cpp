#include "oedp/power_law.hpp"

#include <algorithm>
#include <cmath>

namespace oedp {

double tail_probability(Count c, double theta) {
    if (c < 1) throw ConfigError("tail probability needs c >= 1");
    if (!(theta > 1.0)) throw ConfigError("tail probability needs theta > 1");
    return std::pow(static_cast<double>(c), -(theta - 1.0));
}

PowerLawFilter::PowerLawFilter(const DetectorConfig& cfg, const DerivedParams& d,
                               BlockStore& store)
    : cfg_(cfg), d_(d), store_(store), ram_(cfg.m) {
    tau_ = d_.tau; // all zeros in dynamic mode
    tau_sum_ = d_.tau_sum;
    live_entries_.assign(d_.levels + 1, 0);
    max_entries_.assign(d_.levels + 1, 0);
    for (std::size_t i = 1; i <= d_.levels; ++i) store_.add_run(d_.level_capacity[i]);
    refresh_trigger();
}

void PowerLawFilter::refresh_trigger() { trigger_ = pl_sweep_trigger(d_.t, tau_sum_); }

void PowerLawFilter::insert(Key key) {
    time_ += 1;
    PhaseScope ph(store_.io(), IoPhase::insert);

    MgEntry* e = ram_.find(key);
    if (e != nullptr) {
        e->count += 1;
    } else {
        if (ram_.size() >= ram_.capacity()) {
            shuffle_merge(0);
            if (ram_.size() >= ram_.capacity()) throw ClogError(0);
        }
        MgEntry fresh;
        fresh.count = 1;
        ram_.load(key, fresh);
        e = ram_.find(key);
    }

    if (e->reported) return;
    if (e->pinned) {
        // A pinned count is the key's exact total: the sweep consolidated
        // everything and merges skip pinned entries from then on.
        if (e->count >= d_.report_min) {
            events_.push_back(EventReport{key, time_, time_, e->count});
            e->reported = true;
        }
        return;
    }
    if (e->count >= trigger_) sweep(key, *e);
}

void PowerLawFilter::sweep(Key key, MgEntry& e) {
    PhaseScope ph(store_.io(), IoPhase::sweep);
    sweeps_ += 1;

    Count total = e.count;
    bool seen_reported = false;
    for (std::size_t level = 1; level <= d_.levels; ++level) {
        const std::size_t run = level_run(level);
        const auto rec = store_.point_query(run, key);
        if (!rec || rec->count == 0) continue;
        total += rec->count;
        if (rec->flags & kFlagReported) seen_reported = true;
        store_.patch_record(run, key, Record{key, 0, rec->flags}); // tombstone
        live_entries_[level] -= 1;
    }

    e.count = total;
    e.pinned = true;
    if (seen_reported) {
        e.reported = true;
    } else if (total >= d_.report_min) {
        events_.push_back(EventReport{key, time_, time_, total});
        e.reported = true;
    }
}

void PowerLawFilter::shuffle_merge(std::size_t from_level) {
    PhaseScope ph(store_.io(), IoPhase::flush);
    merges_ += 1;

    // Distinct unpinned keys above the target plus everything on the
    // intermediate levels must fit in the target's free slots.
    std::uint64_t moving = 0;
    if (from_level == 0) {
        for (const auto& [key, e] : ram_.entries())
            if (!e.pinned) moving += 1;
    } else {
        moving = live_entries_[from_level];
    }
    std::size_t j = 0;
    std::uint64_t need = moving;
    for (std::size_t cand = from_level + 1; cand <= d_.levels; ++cand) {
        const std::uint64_t free_slots =
            d_.level_capacity[cand] > live_entries_[cand]
                ? d_.level_capacity[cand] - live_entries_[cand]
                : 0;
        if (free_slots >= need) {
            j = cand;
            break;
        }
        need += live_entries_[cand];
    }
    if (j == 0) throw ClogError(static_cast<int>(d_.levels));

    // Consolidate levels 0..j. Pinned RAM keys take no part.
    std::map<Key, std::pair<Count, std::uint8_t>> consolidated;
    std::vector<Key> ram_keys;
    for (const auto& [key, e] : ram_.entries()) {
        if (e.pinned) continue;
        auto& slot = consolidated[key];
        slot.first += e.count;
        if (e.reported) slot.second |= kFlagReported;
        ram_keys.push_back(key);
    }
    std::vector<std::vector<Key>> level_keys(j + 1);
    for (std::size_t level = 1; level <= j; ++level) {
        for (const Record& r : store_.read_run(level_run(level))) {
            if (r.count == 0) continue; // tombstone left by a sweep
            auto& slot = consolidated[r.key];
            slot.first += r.count;
            slot.second |= r.flags;
            level_keys[level].push_back(r.key);
        }
    }

    for (auto& [key, slot] : consolidated) {
        if (slot.first >= d_.report_min && !(slot.second & kFlagReported)) {
            events_.push_back(EventReport{key, time_, time_, slot.first});
            slot.second |= kFlagReported;
        }
    }

    if (cfg_.dynamic_thresholds) learn_taus(j, consolidated, level_keys, ram_keys);

    // Bottom-up repack: deepest involved level first, tau-capped per level,
    // remainder back into RAM.
    std::vector<std::vector<Record>> placed(j + 1);
    std::vector<std::pair<Key, std::pair<Count, std::uint8_t>>> leftovers;
    for (const auto& [key, slot] : consolidated) {
        Count rem = slot.first;
        for (std::size_t y = j; y >= 1 && rem > 0; --y) {
            const Count amount = std::min<Count>(rem, tau_[y]);
            if (amount > 0) placed[y].push_back(Record{key, amount, slot.second});
            rem -= amount;
        }
        if (rem > 0) leftovers.emplace_back(key, std::make_pair(rem, slot.second));
    }
    for (std::size_t y = 1; y <= j; ++y)
        if (placed[y].size() > d_.level_capacity[y]) throw ClogError(static_cast<int>(y));

    for (std::size_t y = 1; y <= j; ++y) {
        store_.write_run(level_run(y), placed[y]); // already key-sorted (map order)
        live_entries_[y] = placed[y].size();
        max_entries_[y] = std::max(max_entries_[y], live_entries_[y]);
    }

    // RAM keeps pinned entries plus repack remainders.
    auto& entries = ram_.entries();
    for (auto it = entries.begin(); it != entries.end();)
        it = it->second.pinned ? std::next(it) : entries.erase(it);
    if (entries.size() + leftovers.size() > ram_.capacity()) throw ClogError(0);
    for (const auto& [key, slot] : leftovers) {
        MgEntry e;
        e.count = slot.first;
        e.reported = (slot.second & kFlagReported) != 0;
        ram_.load(key, e);
    }

    if (cfg_.dynamic_thresholds) tau_trace_.push_back(tau_);
}

void PowerLawFilter::learn_taus(std::size_t j,
                                const std::map<Key, std::pair<Count, std::uint8_t>>& consolidated,
                                const std::vector<std::vector<Key>>& level_keys,
                                const std::vector<Key>& ram_keys) {
    // For y = j..1: raise tau_y just enough that at least half the keys
    // present on the level above would flush their entire consolidated
    // count to depth >= y.
    std::uint64_t below = 0; // sum of tau_{y+1..j} as updated
    for (std::size_t y = j; y >= 1; --y) {
        const std::vector<Key>& above = (y == 1) ? ram_keys : level_keys[y - 1];
        if (!above.empty()) {
            std::vector<Count> sorted;
            sorted.reserve(above.size());
            for (Key k : above) sorted.push_back(consolidated.at(k).first);
            std::sort(sorted.begin(), sorted.end());
            const Count median = sorted[(sorted.size() - 1) / 2]; // smallest covering half
            const std::uint64_t needed = median > below ? median - below : 0;
            if (needed > tau_[y]) tau_[y] = needed;
        }
        below += tau_[y];
    }
    tau_sum_ = 0;
    for (std::size_t y = 1; y <= d_.levels; ++y) tau_sum_ += tau_[y];
    refresh_trigger();
}

Count PowerLawFilter::consolidated_count(Key key) {
    PhaseScope ph(store_.io(), IoPhase::query);
    Count total = ram_.estimate(key);
    for (std::size_t level = 1; level <= d_.levels; ++level) {
        const auto rec = store_.point_query(level_run(level), key);
        if (rec) total += rec->count;
    }
    return total;
}

} // namespace oedp

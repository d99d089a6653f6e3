#include "oedp/time_stretch.hpp"

#include <algorithm>

namespace oedp {

TimeStretchFilter::TimeStretchFilter(const DetectorConfig& cfg, const DerivedParams& d,
                                     BlockStore& store)
    : cfg_(cfg), d_(d), store_(store) {
    final_level_ = std::max<std::size_t>(1, d_.levels - 1);
    for (std::size_t i = 0; i < d_.q; ++i) ram_bins_.emplace_back();

    // Bin runs for levels 1..final-1. A bin's nominal capacity is a count
    // budget (r^i*m/q); entry counts can transiently exceed it by the sum
    // of upstream bin sizes, bounded by the geometric factor r/(r-1).
    for (std::size_t level = 1; level < final_level_; ++level) {
        const double slack_cap = d_.bin_capacity[level] * cfg_.r / (cfg_.r - 1.0) + 1.0;
        for (std::size_t b = 0; b < d_.q; ++b)
            store_.add_run(static_cast<std::uint64_t>(slack_cap) + 1);
        rotation_.push_back(0);
        bin_totals_.emplace_back(d_.q, 0);
    }
    store_.add_run(0); // consolidated final level

    shift_times_.resize(final_level_);
}

std::size_t TimeStretchFilter::bin_run(std::size_t level, std::size_t bin) const {
    return (level - 1) * d_.q + (rotation_[level - 1] + bin) % d_.q;
}

Count TimeStretchFilter::ram_total(Key key) const {
    Count c = 0;
    for (const RamBin& b : ram_bins_) {
        const auto it = b.counts.find(key);
        if (it != b.counts.end()) c += it->second;
    }
    return c;
}

void TimeStretchFilter::report(Key key, Count total, TimeIndex t) {
    events_.push_back(EventReport{key, t, t, total});
    reported_.insert(key);
}

void TimeStretchFilter::insert(Key key) {
    time_ += 1;
    PhaseScope ph(store_.io(), IoPhase::insert);

    RamBin& front = ram_bins_.front();
    front.counts[key] += 1;
    front.total += 1;

    // Keys whose whole history still sits in RAM can hit the threshold long
    // before any flush touches them; this check costs no I/O.
    if (reported_.count(key) == 0) {
        const Count c = ram_total(key);
        if (c >= d_.report_min) report(key, c, time_);
    }

    if (static_cast<double>(front.total) >= d_.bin_capacity[0]) {
        PhaseScope fl(store_.io(), IoPhase::flush);
        std::size_t lvl = 0;
        std::size_t touched;
        while (true) {
            shift_level(lvl);
            const std::size_t recv = lvl + 1;
            if (recv >= final_level_) {
                touched = final_level_;
                break;
            }
            const Count recv_total = bin_totals_[recv - 1][rotation_[recv - 1]];
            if (static_cast<double>(recv_total) >= d_.bin_capacity[recv]) {
                lvl = recv;
                continue;
            }
            touched = recv;
            break;
        }
        scan_and_report(touched, time_);
    }
}

void TimeStretchFilter::shift_level(std::size_t level) {
    flushes_ += 1;
    shift_times_[level].push_back(time_);

    std::vector<Record> dumped;
    if (level == 0) {
        RamBin old_bq = std::move(ram_bins_.back());
        ram_bins_.pop_back();
        ram_bins_.emplace_front();
        dumped.reserve(old_bq.counts.size());
        for (const auto& [key, count] : old_bq.counts)
            dumped.push_back(Record{key, count,
                                    reported_.count(key) ? kFlagReported : std::uint8_t{0}});
    } else {
        const std::size_t phys = (rotation_[level - 1] + d_.q - 1) % d_.q;
        const std::size_t run = (level - 1) * d_.q + phys;
        dumped = store_.read_run(run);
        store_.write_run(run, {});
        rotation_[level - 1] = phys; // the emptied run becomes the new b1
        bin_totals_[level - 1][phys] = 0;
    }
    if (dumped.empty()) return;

    // Merge the dumped bin into the next level's newest bin (or the final
    // consolidated run, which never rotates).
    const std::size_t target = level + 1;
    const std::size_t run = target >= final_level_ ? (final_level_ - 1) * d_.q
                                                   : bin_run(target, 0);
    std::vector<Record> merged = store_.read_run(run);
    Count units = 0;
    std::map<Key, Record> add;
    for (const Record& r : dumped) {
        add[r.key] = r;
        units += r.count;
    }
    for (Record& r : merged) {
        auto it = add.find(r.key);
        if (it != add.end()) {
            r.count += it->second.count;
            r.flags |= it->second.flags;
            add.erase(it);
        }
    }
    for (const auto& [key, r] : add) merged.push_back(r);
    std::sort(merged.begin(), merged.end(),
              [](const Record& a, const Record& b) { return a.key < b.key; });
    store_.write_run(run, merged);
    if (target < final_level_) bin_totals_[target - 1][rotation_[target - 1]] += units;
}

void TimeStretchFilter::scan_and_report(std::size_t deepest_level, TimeIndex report_time) {
    std::map<Key, Count> sums;
    for (const RamBin& b : ram_bins_)
        for (const auto& [key, count] : b.counts) sums[key] += count;

    const std::size_t bin_limit = std::min(deepest_level, final_level_ - 1);
    for (std::size_t level = 1; level <= bin_limit; ++level)
        for (std::size_t b = 0; b < d_.q; ++b)
            for (const Record& r : store_.read_run(bin_run(level, b))) sums[r.key] += r.count;
    if (deepest_level >= final_level_)
        for (const Record& r : store_.read_run((final_level_ - 1) * d_.q)) sums[r.key] += r.count;

    for (const auto& [key, total] : sums)
        if (total >= d_.report_min && reported_.count(key) == 0)
            report(key, total, report_time);
}

void TimeStretchFilter::finalize() {
    PhaseScope ph(store_.io(), IoPhase::flush);
    scan_and_report(final_level_, time_);
}

} // namespace oedp

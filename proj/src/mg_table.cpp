#include "oedp/mg_table.hpp"

namespace oedp {

MgTable::MgTable(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw ConfigError("counter table needs at least one slot");
}

void MgTable::insert(Key key, bool reported, std::vector<MgUnit>& spill) {
    auto it = entries_.find(key);
    if (it != entries_.end()) {
        it->second.count += 1;
        it->second.reported = it->second.reported || reported;
        return;
    }
    if (entries_.size() < capacity_) {
        MgEntry e;
        e.count = 1;
        e.reported = reported;
        entries_.emplace(key, e);
        return;
    }
    // Full and absent: shed one unit from every unpinned entry and forward
    // the incoming item alongside them. Conservation: stored + spilled
    // counts stay equal to the number of insertions.
    decrement_steps_ += 1;
    bool emitted_incoming = false;
    for (auto cur = entries_.begin(); cur != entries_.end();) {
        if (!emitted_incoming && key < cur->first) {
            spill.push_back(MgUnit{key, reported});
            emitted_incoming = true;
        }
        if (cur->second.pinned) {
            ++cur;
            continue;
        }
        spill.push_back(MgUnit{cur->first, cur->second.reported});
        cur->second.count -= 1;
        if (cur->second.count == 0)
            cur = entries_.erase(cur);
        else
            ++cur;
    }
    if (!emitted_incoming) spill.push_back(MgUnit{key, reported});
}

void MgTable::load(Key key, const MgEntry& entry) {
    auto it = entries_.find(key);
    if (it != entries_.end()) {
        it->second.count += entry.count;
        it->second.reported = it->second.reported || entry.reported;
        it->second.pinned = it->second.pinned || entry.pinned;
        return;
    }
    if (entries_.size() >= capacity_) throw CapacityError("counter table overfull during load");
    entries_.emplace(key, entry);
}

Count MgTable::estimate(Key key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.count;
}

MgEntry* MgTable::find(Key key) {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

const MgEntry* MgTable::find(Key key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<Record> MgTable::snapshot() const {
    std::vector<Record> out;
    out.reserve(entries_.size());
    for (const auto& [key, e] : entries_) {
        Record r;
        r.key = key;
        r.count = e.count;
        r.flags = static_cast<std::uint8_t>((e.reported ? kFlagReported : 0) |
                                            (e.pinned ? kFlagPinned : 0));
        out.push_back(r);
    }
    return out;
}

std::vector<Record> MgTable::drain() {
    std::vector<Record> out = snapshot();
    entries_.clear();
    return out;
}

} // namespace oedp

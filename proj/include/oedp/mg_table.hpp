#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "oedp/types.hpp"

namespace oedp {

// One decremented unit of count forwarded out of a table, tagged with the
// reported status of the entry it came from (the incoming item keeps its own).
struct MgUnit {
    Key key = 0;
    bool reported = false;
};

struct MgEntry {
    Count count = 0;
    bool reported = false;
    bool pinned = false;
    // Cached lower bound on the key's true frequency, valid while the entry
    // lives; refreshed by deeper-level lookups and advanced per occurrence.
    bool cached = false;
    Count known_total = 0;
};

// Bounded counter table with the classic three-way insert: increment a
// present key, claim a free slot, or decrement every unpinned entry by one
// and forward the shed units (plus the incoming item) to the caller.
// Guarantees count(k) <= freq(k) <= count(k) + decrement_steps().
class MgTable {
  public:
    explicit MgTable(std::size_t capacity);

    // Feed one occurrence. On the decrement case, one unit per decremented
    // entry plus the incoming item are appended to `spill` (sorted by key).
    void insert(Key key, bool reported, std::vector<MgUnit>& spill);

    // Place an entry verbatim (loading a stored run for a merge). Throws
    // CapacityError when the table is full and the key is absent.
    void load(Key key, const MgEntry& entry);

    bool contains(Key key) const { return entries_.count(key) != 0; }
    Count estimate(Key key) const;
    MgEntry* find(Key key);
    const MgEntry* find(Key key) const;
    void erase(Key key) { entries_.erase(key); }

    std::size_t size() const { return entries_.size(); }
    std::size_t capacity() const { return capacity_; }
    std::uint64_t decrement_steps() const { return decrement_steps_; }

    // Sorted contents; drain() also empties the table.
    std::vector<Record> snapshot() const;
    std::vector<Record> drain();

    const std::map<Key, MgEntry>& entries() const { return entries_; }
    std::map<Key, MgEntry>& entries() { return entries_; }

  private:
    std::size_t capacity_;
    std::uint64_t decrement_steps_ = 0;
    std::map<Key, MgEntry> entries_;
};

} // namespace oedp

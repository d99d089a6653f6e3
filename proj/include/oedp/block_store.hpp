#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "oedp/io_stats.hpp"
#include "oedp/types.hpp"

namespace oedp {

// Serialize records into whole blocks of `block_entries` records each; the
// last block is zero-padded. Little-endian, 24 bytes per record.
std::vector<std::uint8_t> encode_records(const std::vector<Record>& recs,
                                         std::size_t block_entries);
std::vector<Record> decode_records(const std::uint8_t* bytes, std::size_t n_records);

// A set of sorted runs stored in block-granular storage. All data transfers
// are charged to the attached IoStats in whole blocks; run sizes/capacities
// are metadata and free. Capacity 0 means unbounded.
class BlockStore {
  public:
    BlockStore(std::size_t block_entries, IoStats* stats);
    virtual ~BlockStore() = default;

    std::size_t add_run(std::uint64_t capacity_entries);
    std::size_t run_count() const { return runs_.size(); }
    std::uint64_t run_size(std::size_t run) const { return runs_.at(run).size; }
    std::uint64_t run_capacity(std::size_t run) const { return runs_.at(run).capacity; }
    std::size_t block_entries() const { return block_entries_; }
    std::uint64_t run_blocks(std::size_t run) const;
    IoStats& io() { return *stats_; }

    // Whole-run scan; charges ceil(size/B) reads (nothing for an empty run).
    std::vector<Record> read_run(std::size_t run);

    // Replace the run's contents with `recs` (must be sorted by key);
    // charges ceil(n/B) writes. Throws CapacityError beyond capacity.
    void write_run(std::size_t run, const std::vector<Record>& recs);

    // Binary search over blocks; charges one read per block touched.
    std::optional<Record> point_query(std::size_t run, Key key);

    // Overwrite the record for `key` in place (same key only). Charges the
    // binary-search reads plus one block write. Returns false if absent.
    bool patch_record(std::size_t run, Key key, const Record& rec);

  protected:
    virtual void backend_add_run(std::uint64_t capacity_entries) = 0;
    virtual std::vector<Record> backend_read(std::size_t run, std::uint64_t first,
                                             std::uint64_t count) = 0;
    virtual void backend_write(std::size_t run, std::uint64_t first,
                               const std::vector<Record>& recs) = 0;
    virtual void backend_resize(std::size_t run, std::uint64_t new_size) = 0;

  private:
    struct RunMeta {
        std::uint64_t capacity = 0;
        std::uint64_t size = 0;
    };

    // Locate the block that could contain `key`; charges each probe.
    std::optional<std::uint64_t> locate_block(std::size_t run, Key key,
                                              std::vector<Record>* block_out);

    std::size_t block_entries_;
    IoStats* stats_;
    std::vector<RunMeta> runs_;
};

// RAM-resident backend: the canonical simulation target.
class MemoryBlockStore final : public BlockStore {
  public:
    MemoryBlockStore(std::size_t block_entries, IoStats* stats) : BlockStore(block_entries, stats) {}

    // Test access without touching the I/O counters.
    const std::vector<Record>& peek_run(std::size_t run) const { return data_.at(run); }

  protected:
    void backend_add_run(std::uint64_t) override { data_.emplace_back(); }
    std::vector<Record> backend_read(std::size_t run, std::uint64_t first,
                                     std::uint64_t count) override;
    void backend_write(std::size_t run, std::uint64_t first,
                       const std::vector<Record>& recs) override;
    void backend_resize(std::size_t run, std::uint64_t new_size) override;

  private:
    std::vector<std::vector<Record>> data_;
};

// Single-file backend. Each bounded run owns a fixed block region sized by
// its capacity; one unbounded run is permitted as the final region. A header
// block records the geometry so the file is self-describing.
class FileBlockStore final : public BlockStore {
  public:
    FileBlockStore(const std::string& path, std::size_t block_entries, IoStats* stats);
    ~FileBlockStore() override;

    void sync(); // rewrite the header with current run sizes

  protected:
    void backend_add_run(std::uint64_t capacity_entries) override;
    std::vector<Record> backend_read(std::size_t run, std::uint64_t first,
                                     std::uint64_t count) override;
    void backend_write(std::size_t run, std::uint64_t first,
                       const std::vector<Record>& recs) override;
    void backend_resize(std::size_t run, std::uint64_t) override { (void)run; }

  private:
    std::uint64_t run_origin_byte(std::size_t run) const;

    std::string path_;
    mutable std::fstream file_;
    std::vector<std::uint64_t> region_blocks_; // per bounded run; unbounded last
    std::vector<std::uint64_t> sizes_;         // mirrored for the header
    bool has_unbounded_ = false;
};

} // namespace oedp

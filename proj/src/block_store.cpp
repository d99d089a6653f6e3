#include "oedp/block_store.hpp"

#include <algorithm>
#include <cstring>

namespace oedp {

namespace {

void put_u64(std::uint8_t* p, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint64_t get_u64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

void encode_one(std::uint8_t* p, const Record& r) {
    put_u64(p, r.key);
    put_u64(p + 8, r.count);
    p[16] = r.flags;
    std::memset(p + 17, 0, 7);
}

Record decode_one(const std::uint8_t* p) {
    Record r;
    r.key = get_u64(p);
    r.count = get_u64(p + 8);
    r.flags = p[16];
    return r;
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

} // namespace

std::vector<std::uint8_t> encode_records(const std::vector<Record>& recs,
                                         std::size_t block_entries) {
    const std::uint64_t blocks = recs.empty() ? 0 : ceil_div(recs.size(), block_entries);
    std::vector<std::uint8_t> out(blocks * block_entries * kRecordBytes, 0);
    for (std::size_t i = 0; i < recs.size(); ++i) encode_one(out.data() + i * kRecordBytes, recs[i]);
    return out;
}

std::vector<Record> decode_records(const std::uint8_t* bytes, std::size_t n_records) {
    std::vector<Record> out(n_records);
    for (std::size_t i = 0; i < n_records; ++i) out[i] = decode_one(bytes + i * kRecordBytes);
    return out;
}

BlockStore::BlockStore(std::size_t block_entries, IoStats* stats)
    : block_entries_(block_entries), stats_(stats) {
    if (block_entries_ == 0) throw ConfigError("block size must be at least one record");
    if (stats_ == nullptr) throw ConfigError("block store requires an I/O counter");
}

std::size_t BlockStore::add_run(std::uint64_t capacity_entries) {
    backend_add_run(capacity_entries);
    runs_.push_back(RunMeta{capacity_entries, 0});
    return runs_.size() - 1;
}

std::uint64_t BlockStore::run_blocks(std::size_t run) const {
    return ceil_div(runs_.at(run).size, block_entries_);
}

std::vector<Record> BlockStore::read_run(std::size_t run) {
    const std::uint64_t size = runs_.at(run).size;
    if (size == 0) return {};
    stats_->add_reads(ceil_div(size, block_entries_));
    return backend_read(run, 0, size);
}

void BlockStore::write_run(std::size_t run, const std::vector<Record>& recs) {
    RunMeta& meta = runs_.at(run);
    if (meta.capacity != 0 && recs.size() > meta.capacity)
        throw CapacityError("run written past its capacity");
    for (std::size_t i = 1; i < recs.size(); ++i)
        if (recs[i - 1].key >= recs[i].key) throw IoError("run contents must be sorted by key");
    if (!recs.empty()) stats_->add_writes(ceil_div(recs.size(), block_entries_));
    backend_write(run, 0, recs);
    backend_resize(run, recs.size());
    meta.size = recs.size();
}

std::optional<std::uint64_t> BlockStore::locate_block(std::size_t run, Key key,
                                                      std::vector<Record>* block_out) {
    const std::uint64_t size = runs_.at(run).size;
    if (size == 0) return std::nullopt;
    std::uint64_t lo = 0;
    std::uint64_t hi = ceil_div(size, block_entries_) - 1;
    while (lo <= hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        const std::uint64_t first = mid * block_entries_;
        const std::uint64_t count = std::min<std::uint64_t>(block_entries_, size - first);
        std::vector<Record> block = backend_read(run, first, count);
        stats_->add_reads(1);
        if (key < block.front().key) {
            if (mid == 0) return std::nullopt;
            hi = mid - 1;
        } else if (key > block.back().key) {
            lo = mid + 1;
        } else {
            *block_out = std::move(block);
            return mid;
        }
    }
    return std::nullopt;
}

std::optional<Record> BlockStore::point_query(std::size_t run, Key key) {
    std::vector<Record> block;
    const auto blk = locate_block(run, key, &block);
    if (!blk) return std::nullopt;
    const auto it = std::lower_bound(block.begin(), block.end(), key,
                                     [](const Record& r, Key k) { return r.key < k; });
    if (it == block.end() || it->key != key) return std::nullopt;
    return *it;
}

bool BlockStore::patch_record(std::size_t run, Key key, const Record& rec) {
    if (rec.key != key) throw IoError("patch must keep the record key");
    std::vector<Record> block;
    const auto blk = locate_block(run, key, &block);
    if (!blk) return false;
    const auto it = std::lower_bound(block.begin(), block.end(), key,
                                     [](const Record& r, Key k) { return r.key < k; });
    if (it == block.end() || it->key != key) return false;
    *it = rec;
    backend_write(run, *blk * block_entries_, block);
    stats_->add_writes(1);
    return true;
}

std::vector<Record> MemoryBlockStore::backend_read(std::size_t run, std::uint64_t first,
                                                   std::uint64_t count) {
    const auto& v = data_.at(run);
    return std::vector<Record>(v.begin() + static_cast<std::ptrdiff_t>(first),
                               v.begin() + static_cast<std::ptrdiff_t>(first + count));
}

void MemoryBlockStore::backend_write(std::size_t run, std::uint64_t first,
                                     const std::vector<Record>& recs) {
    auto& v = data_.at(run);
    if (v.size() < first + recs.size()) v.resize(first + recs.size());
    std::copy(recs.begin(), recs.end(), v.begin() + static_cast<std::ptrdiff_t>(first));
}

void MemoryBlockStore::backend_resize(std::size_t run, std::uint64_t new_size) {
    data_.at(run).resize(new_size);
}

namespace {
constexpr char kMagic[8] = {'O', 'E', 'D', 'P', 'B', 'L', 'K', '1'};
constexpr std::uint64_t kHeaderBytes = 4096;
} // namespace

FileBlockStore::FileBlockStore(const std::string& path, std::size_t block_entries, IoStats* stats)
    : BlockStore(block_entries, stats), path_(path) {
    file_.open(path_, std::ios::in | std::ios::out | std::ios::binary | std::ios::trunc);
    if (!file_) throw IoError("cannot open block store file: " + path_);
}

FileBlockStore::~FileBlockStore() {
    try {
        sync();
    } catch (...) {
        // best effort on teardown
    }
}

void FileBlockStore::backend_add_run(std::uint64_t capacity_entries) {
    if (has_unbounded_) throw IoError("an unbounded run must be the final run in the file");
    if (capacity_entries == 0) {
        has_unbounded_ = true;
        region_blocks_.push_back(0);
    } else {
        region_blocks_.push_back((capacity_entries + block_entries() - 1) / block_entries());
    }
}

std::uint64_t FileBlockStore::run_origin_byte(std::size_t run) const {
    std::uint64_t blocks = 0;
    for (std::size_t i = 0; i < run; ++i) blocks += region_blocks_[i];
    return kHeaderBytes + blocks * block_entries() * kRecordBytes;
}

std::vector<Record> FileBlockStore::backend_read(std::size_t run, std::uint64_t first,
                                                 std::uint64_t count) {
    std::vector<std::uint8_t> buf(count * kRecordBytes);
    file_.clear();
    file_.seekg(static_cast<std::streamoff>(run_origin_byte(run) + first * kRecordBytes));
    file_.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!file_) throw IoError("short read from block store file: " + path_);
    return decode_records(buf.data(), count);
}

void FileBlockStore::backend_write(std::size_t run, std::uint64_t first,
                                   const std::vector<Record>& recs) {
    // Whole-block payloads keep the on-disk image canonical (zero tail pad).
    const std::vector<std::uint8_t> buf = encode_records(recs, block_entries());
    file_.clear();
    file_.seekp(static_cast<std::streamoff>(run_origin_byte(run) + first * kRecordBytes));
    file_.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!file_) throw IoError("short write to block store file: " + path_);
}

void FileBlockStore::sync() {
    std::vector<std::uint8_t> hdr(kHeaderBytes, 0);
    std::memcpy(hdr.data(), kMagic, sizeof(kMagic));
    auto* p = hdr.data() + 8;
    auto emit = [&p](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) *p++ = static_cast<std::uint8_t>(v >> (8 * i));
    };
    emit(block_entries());
    emit(run_count());
    for (std::size_t i = 0; i < run_count(); ++i) {
        emit(run_capacity(i));
        emit(run_size(i));
    }
    file_.clear();
    file_.seekp(0);
    file_.write(reinterpret_cast<const char*>(hdr.data()), static_cast<std::streamsize>(hdr.size()));
    file_.flush();
    if (!file_) throw IoError("cannot write block store header: " + path_);
}

} // namespace oedp

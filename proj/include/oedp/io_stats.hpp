#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>

namespace oedp {

// Phase a block transfer is charged to. Detectors set the phase around the
// operation they are performing; nested scopes restore the outer phase.
enum class IoPhase : unsigned { insert = 0, flush = 1, query = 2, sweep = 3 };

inline constexpr std::size_t kIoPhaseCount = 4;
const char* io_phase_name(IoPhase p);

// Monotone counters of block reads/writes, broken down by phase.
// Metadata (run sizes, headers) is never charged; only data blocks count.
struct IoStats {
    std::array<std::uint64_t, kIoPhaseCount> reads{};
    std::array<std::uint64_t, kIoPhaseCount> writes{};
    IoPhase phase = IoPhase::insert;

    void add_reads(std::uint64_t blocks) { reads[static_cast<unsigned>(phase)] += blocks; }
    void add_writes(std::uint64_t blocks) { writes[static_cast<unsigned>(phase)] += blocks; }

    std::uint64_t total_reads() const;
    std::uint64_t total_writes() const;
    std::uint64_t total() const { return total_reads() + total_writes(); }

    // CSV: header then one line per phase plus a total line.
    void write_csv(std::ostream& os) const;

    bool operator==(const IoStats& other) const {
        return reads == other.reads && writes == other.writes;
    }
};

// RAII phase switch.
class PhaseScope {
  public:
    PhaseScope(IoStats& stats, IoPhase phase) : stats_(stats), prev_(stats.phase) {
        stats_.phase = phase;
    }
    ~PhaseScope() { stats_.phase = prev_; }
    PhaseScope(const PhaseScope&) = delete;
    PhaseScope& operator=(const PhaseScope&) = delete;

  private:
    IoStats& stats_;
    IoPhase prev_;
};

} // namespace oedp

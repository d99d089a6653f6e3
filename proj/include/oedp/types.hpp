#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace oedp {

using Key = std::uint64_t;
using Count = std::uint64_t;
using TimeIndex = std::uint64_t; // 1-based position in the stream

// Fixed-width disk record: 8-byte key, 8-byte count, 1-byte flags, 7 pad bytes.
struct Record {
    Key key = 0;
    Count count = 0;
    std::uint8_t flags = 0;
};

inline constexpr std::uint8_t kFlagReported = 0x01;
inline constexpr std::uint8_t kFlagPinned = 0x02;
inline constexpr std::size_t kRecordBytes = 24;

// An event: some key's running count reached the reporting threshold.
struct EventReport {
    Key key = 0;
    TimeIndex trigger_time = 0; // detector's best knowledge of the event time
    TimeIndex report_time = 0;  // when the detector emitted the report
    Count count = 0;            // consolidated count at emission
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Internal invariant violation in a block store (a bug, not an input error).
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Raised by the power-law filter when no level can absorb a merge or the RAM
// table is saturated with pinned entries.
struct ClogError : std::runtime_error {
    int level;
    explicit ClogError(int lvl)
        : std::runtime_error("structure clogged at level " + std::to_string(lvl)), level(lvl) {}
};

} // namespace oedp

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "oedp/block_store.hpp"
#include "oedp/config.hpp"
#include "oedp/io_stats.hpp"
#include "oedp/types.hpp"

namespace oedp {

// Outcome of feeding one stream through one detector.
struct RunResult {
    DerivedParams derived;
    std::vector<EventReport> events;
    IoStats io;

    std::uint64_t consolidation_queries = 0; // online mode
    std::uint64_t flushes = 0;
    std::uint64_t sweeps = 0; // power-law mode
    std::uint64_t merges = 0; // power-law mode

    // Power-law extras for threshold diagnostics.
    std::vector<std::uint64_t> final_tau;
    std::vector<std::vector<std::uint64_t>> tau_trace;
    std::vector<std::uint64_t> max_level_entries;

    // The power-law structure refuses pathological inputs instead of
    // degrading silently; a clog keeps the events reported so far.
    bool clogged = false;
    int clog_level = -1;
    std::string clog_message;
};

// Run the configured detector over the stream. When `store` is null a
// RAM-backed block store is created internally; a caller-provided store
// must be freshly constructed (the detector lays out its own runs).
RunResult run_detector(const DetectorConfig& cfg, const std::vector<Key>& stream,
                       BlockStore* store = nullptr);

} // namespace oedp

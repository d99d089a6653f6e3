#pragma once

#include <string>

#include "oedp/config.hpp"
#include "oedp/io_stats.hpp"

namespace oedp {

// Everything needed to reproduce a run: the detector configuration, the
// input stream (by path and content hash), and where the outputs went.
// Serialized as JSON so runs can be re-executed and compared byte for byte.
struct Manifest {
    DetectorConfig config;
    std::string stream_path;
    std::string stream_hash; // FNV-1a 64 of the stream file, hex
    std::string events_path;
    std::string io_path;
    std::string store;   // "memory" or "file"
    IoStats io;          // totals recorded by the run that wrote this manifest
    std::string verdict; // inline verification result, empty when not verified
};

void write_manifest(const std::string& path, const Manifest& m);
Manifest read_manifest(const std::string& path);

} // namespace oedp

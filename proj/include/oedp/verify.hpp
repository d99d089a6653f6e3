#pragma once

#include <map>
#include <string>
#include <vector>

#include "oedp/config.hpp"
#include "oedp/types.hpp"
#include "oedp/workload.hpp"

namespace oedp {

struct VerifyOutcome {
    bool pass = true;
    std::uint64_t false_negatives = 0;
    std::uint64_t false_positives = 0;
    std::uint64_t duplicates = 0;
    std::uint64_t mistimed = 0;
    std::vector<std::string> problems; // one line per violation (capped)
};

// Check a detector's reports against ground truth.
//   - duplicates: no key reported twice.
//   - exact runs: the report key set equals the truth event set; online and
//     power-law reports must carry report_time == the oracle trigger;
//     time-stretch reports must land by min(deadline, n).
//   - approximate runs: every truth event key must be reported; a reported
//     key under the reporting floor is a false positive (needs `counts`;
//     skipped when absent).
VerifyOutcome verify_events(Mode mode, const DerivedParams& d, std::uint64_t n,
                            const std::vector<EventReport>& events,
                            const std::vector<TruthEvent>& truth_events,
                            const std::map<Key, Count>* counts);

} // namespace oedp

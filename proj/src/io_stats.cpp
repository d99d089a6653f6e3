#include "oedp/io_stats.hpp"

#include <numeric>
#include <ostream>

namespace oedp {

const char* io_phase_name(IoPhase p) {
    switch (p) {
    case IoPhase::insert: return "insert";
    case IoPhase::flush: return "flush";
    case IoPhase::query: return "query";
    case IoPhase::sweep: return "sweep";
    }
    return "?";
}

std::uint64_t IoStats::total_reads() const {
    return std::accumulate(reads.begin(), reads.end(), std::uint64_t{0});
}

std::uint64_t IoStats::total_writes() const {
    return std::accumulate(writes.begin(), writes.end(), std::uint64_t{0});
}

void IoStats::write_csv(std::ostream& os) const {
    os << "phase,reads,writes\n";
    for (std::size_t i = 0; i < kIoPhaseCount; ++i) {
        os << io_phase_name(static_cast<IoPhase>(i)) << ',' << reads[i] << ',' << writes[i]
           << '\n';
    }
    os << "total," << total_reads() << ',' << total_writes() << '\n';
}

} // namespace oedp

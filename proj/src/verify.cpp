#include "oedp/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace oedp {

namespace {
constexpr std::size_t kMaxProblemLines = 20;

void note(VerifyOutcome& out, const std::string& line) {
    out.pass = false;
    if (out.problems.size() < kMaxProblemLines) out.problems.push_back(line);
}
} // namespace

VerifyOutcome verify_events(Mode mode, const DerivedParams& d, std::uint64_t n,
                            const std::vector<EventReport>& events,
                            const std::vector<TruthEvent>& truth_events,
                            const std::map<Key, Count>* counts) {
    VerifyOutcome out;

    std::map<Key, const TruthEvent*> truth_by_key;
    for (const TruthEvent& e : truth_events) truth_by_key.emplace(e.key, &e);

    std::set<Key> seen;
    for (const EventReport& e : events) {
        if (!seen.insert(e.key).second) {
            out.duplicates += 1;
            std::ostringstream os;
            os << "DUPLICATE: key " << e.key << " reported again at " << e.report_time;
            note(out, os.str());
            continue;
        }
        const auto t = truth_by_key.find(e.key);
        if (t == truth_by_key.end()) {
            // Not a true event. Fatal in exact runs; in approximate runs
            // fatal only below the reporting floor.
            if (d.exact) {
                out.false_positives += 1;
                std::ostringstream os;
                os << "FALSE POSITIVE: key " << e.key << " reported but never reaches "
                   << d.t;
                note(out, os.str());
            } else if (counts != nullptr) {
                const auto c = counts->find(e.key);
                const Count f = c == counts->end() ? 0 : c->second;
                if (f < d.report_min) {
                    out.false_positives += 1;
                    std::ostringstream os;
                    os << "FALSE POSITIVE: key " << e.key << " has final count " << f
                       << ", below the reporting floor " << d.report_min;
                    note(out, os.str());
                }
            }
            continue;
        }
        switch (mode) {
            case Mode::online:
            case Mode::power_law:
                if (d.exact && e.report_time != t->second->trigger_time) {
                    out.mistimed += 1;
                    std::ostringstream os;
                    os << "MISTIMED: key " << e.key << " reported at " << e.report_time
                       << ", event at " << t->second->trigger_time;
                    note(out, os.str());
                }
                break;
            case Mode::time_stretch: {
                const TimeIndex deadline = std::min<TimeIndex>(t->second->deadline, n);
                if (e.report_time > deadline) {
                    out.mistimed += 1;
                    std::ostringstream os;
                    os << "LATE: key " << e.key << " reported at " << e.report_time
                       << ", deadline " << deadline;
                    note(out, os.str());
                }
                break;
            }
        }
    }

    for (const TruthEvent& e : truth_events) {
        if (seen.count(e.key) == 0) {
            out.false_negatives += 1;
            std::ostringstream os;
            os << "FALSE NEGATIVE: key " << e.key << " reaches " << d.t << " at "
               << e.trigger_time << " but was never reported";
            note(out, os.str());
        }
    }
    return out;
}

} // namespace oedp

#pragma once

#include <string>
#include <vector>

#include "oedp/types.hpp"

namespace oedp {

// Events CSV: "key,trigger_time,report_time,count", one line per report, in
// emission order. trigger_time repeats report_time in modes that only learn
// of an event when a flush or merge surfaces it.
void write_events_csv(const std::string& path, const std::vector<EventReport>& events);
std::vector<EventReport> read_events_csv(const std::string& path);

} // namespace oedp

#include "oedp/events.hpp"

#include <fstream>
#include <sstream>

namespace oedp {

void write_events_csv(const std::string& path, const std::vector<EventReport>& events) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write events file: " + path);
    out << "key,trigger_time,report_time,count\n";
    for (const EventReport& e : events)
        out << e.key << ',' << e.trigger_time << ',' << e.report_time << ',' << e.count << '\n';
    if (!out) throw IoError("short write to events file: " + path);
}

std::vector<EventReport> read_events_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read events file: " + path);
    std::vector<EventReport> out;
    std::string line;
    if (!std::getline(in, line)) return out;
    if (line != "key,trigger_time,report_time,count")
        throw IoError("unexpected events header in " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        EventReport e;
        char c1, c2, c3;
        if (!(ls >> e.key >> c1 >> e.trigger_time >> c2 >> e.report_time >> c3 >> e.count) ||
            c1 != ',' || c2 != ',' || c3 != ',')
            throw IoError("bad events line: " + line);
        out.push_back(e);
    }
    return out;
}

} // namespace oedp

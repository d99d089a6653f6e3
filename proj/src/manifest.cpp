#include "oedp/manifest.hpp"

#include <fstream>

#include <json.hpp>

#include "oedp/types.hpp"

namespace oedp {

using nlohmann::json;

void write_manifest(const std::string& path, const Manifest& m) {
    json j;
    j["config"] = {
        {"mode", mode_name(m.config.mode)},
        {"n", m.config.n},
        {"phi", m.config.phi},
        {"t", m.config.t},
        {"exact", m.config.exact},
        {"epsilon", m.config.epsilon},
        {"m", m.config.m},
        {"b", m.config.b},
        {"r", m.config.r},
        {"q", m.config.q},
        {"alpha", m.config.alpha},
        {"theta", m.config.theta},
        {"dynamic_thresholds", m.config.dynamic_thresholds},
    };
    j["stream"] = {{"path", m.stream_path}, {"fnv1a64", m.stream_hash}};
    j["outputs"] = {{"events", m.events_path}, {"io", m.io_path}};
    j["store"] = m.store;
    json io;
    for (std::size_t p = 0; p < kIoPhaseCount; ++p) {
        io[io_phase_name(static_cast<IoPhase>(p))] = {{"reads", m.io.reads[p]},
                                                      {"writes", m.io.writes[p]}};
    }
    io["total_reads"] = m.io.total_reads();
    io["total_writes"] = m.io.total_writes();
    j["io"] = io;
    if (!m.verdict.empty()) j["verdict"] = m.verdict;

    std::ofstream out(path);
    if (!out) throw IoError("cannot write manifest: " + path);
    out << j.dump(2) << '\n';
}

Manifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read manifest: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw IoError("bad manifest " + path + ": " + e.what());
    }

    Manifest m;
    const json& c = j.at("config");
    m.config.mode = parse_mode(c.at("mode").get<std::string>());
    m.config.n = c.at("n").get<std::uint64_t>();
    m.config.phi = c.at("phi").get<double>();
    m.config.t = c.at("t").get<std::uint64_t>();
    m.config.exact = c.at("exact").get<bool>();
    m.config.epsilon = c.at("epsilon").get<double>();
    m.config.m = c.at("m").get<std::uint64_t>();
    m.config.b = c.at("b").get<std::uint64_t>();
    m.config.r = c.at("r").get<double>();
    m.config.q = c.at("q").get<std::uint64_t>();
    m.config.alpha = c.at("alpha").get<double>();
    m.config.theta = c.at("theta").get<double>();
    m.config.dynamic_thresholds = c.at("dynamic_thresholds").get<bool>();

    m.stream_path = j.at("stream").at("path").get<std::string>();
    m.stream_hash = j.at("stream").at("fnv1a64").get<std::string>();
    m.events_path = j.at("outputs").at("events").get<std::string>();
    m.io_path = j.at("outputs").at("io").get<std::string>();
    m.store = j.value("store", std::string("memory"));
    m.verdict = j.value("verdict", std::string());

    if (j.contains("io")) {
        const json& io = j.at("io");
        for (std::size_t p = 0; p < kIoPhaseCount; ++p) {
            const char* name = io_phase_name(static_cast<IoPhase>(p));
            if (!io.contains(name)) continue;
            m.io.reads[p] = io.at(name).at("reads").get<std::uint64_t>();
            m.io.writes[p] = io.at(name).at("writes").get<std::uint64_t>();
        }
    }
    return m;
}

} // namespace oedp

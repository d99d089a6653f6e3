#include "oedp/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace oedp {

std::uint64_t Rng::bounded(std::uint64_t n) {
    if (n == 0) throw ConfigError("bounded draw over empty range");
    // Discard the partial bucket at the bottom so v % n is exactly uniform:
    // (0 - n) % n is 2^64 mod n in wrapping arithmetic.
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t v = eng_();
        if (v >= threshold) return v % n;
    }
}

double Rng::unit() {
    const std::uint64_t bits = eng_() >> 11; // top 53 bits
    return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

std::string distribution_name(Distribution d) {
    switch (d) {
        case Distribution::uniform: return "uniform";
        case Distribution::power_law: return "power_law";
        case Distribution::planted: return "planted";
    }
    return "?";
}

Distribution parse_distribution(const std::string& s) {
    if (s == "uniform") return Distribution::uniform;
    if (s == "power_law" || s == "power-law" || s == "powerlaw") return Distribution::power_law;
    if (s == "planted") return Distribution::planted;
    throw ConfigError("unknown distribution: " + s);
}

std::string order_name(ArrivalOrder o) {
    switch (o) {
        case ArrivalOrder::shuffled: return "shuffled";
        case ArrivalOrder::adversarial_burst: return "burst";
        case ArrivalOrder::round_robin: return "round_robin";
    }
    return "?";
}

ArrivalOrder parse_order(const std::string& s) {
    if (s == "shuffled" || s == "shuffle") return ArrivalOrder::shuffled;
    if (s == "burst" || s == "adversarial" || s == "adversarial-burst")
        return ArrivalOrder::adversarial_burst;
    if (s == "round_robin" || s == "round-robin" || s == "roundrobin")
        return ArrivalOrder::round_robin;
    throw ConfigError("unknown arrival order: " + s);
}

namespace {

// Per-key exact counts, in a fixed key order that the arrival orders below
// treat as the canonical one.
std::vector<PlantedKey> draw_counts(const StreamSpec& spec, Rng& rng) {
    std::vector<PlantedKey> counts;
    switch (spec.dist) {
        case Distribution::uniform: {
            if (spec.universe == 0) throw ConfigError("uniform stream needs a universe size");
            // One draw per item; keys 1..u.
            std::unordered_map<Key, Count> tally;
            for (std::uint64_t i = 0; i < spec.n; ++i) tally[rng.bounded(spec.universe) + 1] += 1;
            counts.reserve(tally.size());
            for (const auto& [key, c] : tally) counts.push_back(PlantedKey{key, c});
            std::sort(counts.begin(), counts.end(),
                      [](const PlantedKey& a, const PlantedKey& b) { return a.key < b.key; });
            return counts;
        }
        case Distribution::power_law: {
            if (spec.universe == 0) throw ConfigError("power-law stream needs a universe size");
            if (!(spec.theta > 1.0)) throw ConfigError("power-law stream needs theta > 1");
            // Pareto tail with unit minimum: Prob(count > c) = c^-(theta-1),
            // drawn per key and rounded up to an integer.
            const double inv = -1.0 / (spec.theta - 1.0);
            Count total = 0;
            for (Key k = 1; k <= spec.universe; ++k) {
                const double x = std::pow(rng.unit(), inv);
                Count c = static_cast<Count>(std::ceil(x));
                if (c < 1) c = 1;
                if (c > spec.n) c = spec.n;
                counts.push_back(PlantedKey{k, c});
                total += c;
            }
            // Trim or pad to exactly n, touching the largest counts only so
            // the tail shape survives.
            if (total < spec.n) {
                auto big = std::max_element(
                    counts.begin(), counts.end(),
                    [](const PlantedKey& a, const PlantedKey& b) { return a.count < b.count; });
                big->count += spec.n - total;
            } else if (total > spec.n) {
                Count excess = total - spec.n;
                std::vector<std::size_t> by_size(counts.size());
                for (std::size_t i = 0; i < by_size.size(); ++i) by_size[i] = i;
                std::sort(by_size.begin(), by_size.end(), [&counts](std::size_t a, std::size_t b) {
                    return counts[a].count > counts[b].count;
                });
                for (std::size_t round = 0; excess > 0; ++round) {
                    bool any = false;
                    for (std::size_t idx : by_size) {
                        if (excess == 0) break;
                        if (counts[idx].count > 1) {
                            counts[idx].count -= 1;
                            excess -= 1;
                            any = true;
                        }
                    }
                    if (!any) throw ConfigError("power-law spec infeasible: universe exceeds n");
                }
                counts.erase(std::remove_if(counts.begin(), counts.end(),
                                            [](const PlantedKey& p) { return p.count == 0; }),
                             counts.end());
            }
            return counts;
        }
        case Distribution::planted: {
            Count total = 0;
            Key max_key = 0;
            for (const PlantedKey& p : spec.planted) {
                if (p.count == 0) throw ConfigError("planted counts must be positive");
                total += p.count;
                max_key = std::max(max_key, p.key);
            }
            if (total > spec.n) throw ConfigError("planted counts exceed n");
            counts = spec.planted;
            // Singleton fillers on fresh keys make up the difference.
            Key filler = max_key + 1;
            for (Count i = 0; i < spec.n - total; ++i)
                counts.push_back(PlantedKey{filler++, 1});
            return counts;
        }
    }
    throw ConfigError("unreachable distribution");
}

} // namespace

std::vector<Key> generate_stream(const StreamSpec& spec) {
    if (spec.n == 0) throw ConfigError("stream length must be positive");
    Rng rng(spec.seed);
    std::vector<PlantedKey> counts = draw_counts(spec, rng);

    std::vector<Key> stream;
    stream.reserve(spec.n);
    switch (spec.order) {
        case ArrivalOrder::shuffled: {
            for (const PlantedKey& p : counts)
                for (Count i = 0; i < p.count; ++i) stream.push_back(p.key);
            for (std::size_t i = stream.size(); i > 1; --i)
                std::swap(stream[i - 1], stream[rng.bounded(i)]);
            break;
        }
        case ArrivalOrder::adversarial_burst: {
            // Each key's occurrences arrive back to back, key order shuffled.
            for (std::size_t i = counts.size(); i > 1; --i)
                std::swap(counts[i - 1], counts[rng.bounded(i)]);
            for (const PlantedKey& p : counts)
                for (Count i = 0; i < p.count; ++i) stream.push_back(p.key);
            break;
        }
        case ArrivalOrder::round_robin: {
            // Cycle over keys still holding count, in canonical order.
            std::vector<PlantedKey> rem = counts;
            while (stream.size() < spec.n) {
                bool any = false;
                for (PlantedKey& p : rem) {
                    if (p.count == 0) continue;
                    stream.push_back(p.key);
                    p.count -= 1;
                    any = true;
                }
                if (!any) break;
            }
            break;
        }
    }
    if (stream.size() != spec.n) throw ConfigError("generated stream length mismatch");
    return stream;
}

GroundTruth oracle_events(const std::vector<Key>& stream, Count t, double alpha) {
    GroundTruth truth;
    std::unordered_map<Key, TimeIndex> first_seen;
    std::unordered_map<Key, Count> counts;
    first_seen.reserve(stream.size() / 4 + 16);
    counts.reserve(stream.size() / 4 + 16);
    for (std::size_t i = 0; i < stream.size(); ++i) {
        const Key key = stream[i];
        const TimeIndex now = static_cast<TimeIndex>(i + 1);
        const auto it = first_seen.try_emplace(key, now).first;
        Count& c = counts[key];
        c += 1;
        if (t != 0 && c == t) {
            TruthEvent ev;
            ev.key = key;
            ev.first_seen = it->second;
            ev.trigger_time = now;
            ev.flow = now - it->second;
            ev.deadline =
                now + static_cast<TimeIndex>(std::floor(
                          alpha * static_cast<double>(ev.flow) + 1e-9));
            truth.events.push_back(ev);
        }
    }
    for (const auto& [key, c] : counts) truth.counts[key] = c;
    return truth;
}

void write_stream(const std::string& path, const std::vector<Key>& stream) {
    const bool text = path.size() >= 4 && path.compare(path.size() - 4, 4, ".txt") == 0;
    std::ofstream out(path, text ? std::ios::out : (std::ios::out | std::ios::binary));
    if (!out) throw IoError("cannot write stream file: " + path);
    if (text) {
        for (Key k : stream) out << k << '\n';
    } else {
        std::vector<std::uint8_t> buf(stream.size() * 8);
        for (std::size_t i = 0; i < stream.size(); ++i)
            for (int b = 0; b < 8; ++b)
                buf[i * 8 + static_cast<std::size_t>(b)] =
                    static_cast<std::uint8_t>(stream[i] >> (8 * b));
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size()));
    }
    if (!out) throw IoError("short write to stream file: " + path);
}

std::vector<Key> read_stream(const std::string& path) {
    const bool text = path.size() >= 4 && path.compare(path.size() - 4, 4, ".txt") == 0;
    std::ifstream in(path, text ? std::ios::in : (std::ios::in | std::ios::binary));
    if (!in) throw IoError("cannot read stream file: " + path);
    std::vector<Key> stream;
    if (text) {
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            stream.push_back(std::stoull(line));
        }
    } else {
        std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(in)),
                                      std::istreambuf_iterator<char>());
        if (buf.size() % 8 != 0) throw IoError("stream file truncated: " + path);
        stream.resize(buf.size() / 8);
        for (std::size_t i = 0; i < stream.size(); ++i) {
            Key k = 0;
            for (int b = 0; b < 8; ++b)
                k |= static_cast<Key>(buf[i * 8 + static_cast<std::size_t>(b)]) << (8 * b);
            stream[i] = k;
        }
    }
    return stream;
}

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::in | std::ios::binary);
    if (!in) throw IoError("cannot read file for hashing: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<std::uint8_t>(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (got < static_cast<std::streamsize>(sizeof buf)) break;
    }
    std::ostringstream os;
    os << std::hex;
    for (int shift = 60; shift >= 0; shift -= 4) os << ((h >> shift) & 0xF);
    return os.str();
}

void write_truth_csv(const std::string& path, const GroundTruth& truth) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write truth file: " + path);
    out << "key,first_seen,trigger_time,flow,deadline\n";
    for (const TruthEvent& e : truth.events)
        out << e.key << ',' << e.first_seen << ',' << e.trigger_time << ',' << e.flow << ','
            << e.deadline << '\n';
    if (!out) throw IoError("short write to truth file: " + path);
}

std::vector<TruthEvent> read_truth_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read truth file: " + path);
    std::vector<TruthEvent> out;
    std::string line;
    if (!std::getline(in, line)) return out;
    if (line != "key,first_seen,trigger_time,flow,deadline")
        throw IoError("unexpected truth header in " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        TruthEvent e;
        char c1, c2, c3, c4;
        if (!(ls >> e.key >> c1 >> e.first_seen >> c2 >> e.trigger_time >> c3 >> e.flow >> c4 >>
              e.deadline) ||
            c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',')
            throw IoError("bad truth line: " + line);
        out.push_back(e);
    }
    return out;
}

} // namespace oedp

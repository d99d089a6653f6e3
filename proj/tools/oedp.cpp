// Command-line driver: generate streams, run detectors, verify reports
// against ground truth, and benchmark I/O cost across a parameter grid.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oedp/block_store.hpp"
#include "oedp/config.hpp"
#include "oedp/events.hpp"
#include "oedp/manifest.hpp"
#include "oedp/runner.hpp"
#include "oedp/types.hpp"
#include "oedp/verify.hpp"
#include "oedp/workload.hpp"

namespace {

using namespace oedp;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitClog = 4;

// "--epsilon exact" is sugar for epsilon = 1/n.
void apply_epsilon(DetectorConfig& cfg, const std::string& text) {
    if (text == "exact") {
        cfg.exact = true;
        cfg.epsilon = 0.0;
        return;
    }
    try {
        std::size_t used = 0;
        cfg.epsilon = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw ConfigError("epsilon must be a number or 'exact', got: " + text);
    }
    cfg.exact = false;
}

// "a:3,b:1" -> planted keys. Numeric names are used verbatim; otherwise
// names get sequential ids in order of first appearance.
std::vector<PlantedKey> parse_planted(const std::string& text) {
    std::vector<std::pair<std::string, Count>> raw;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 >= item.size())
            throw ConfigError("bad planted entry (want name:count): " + item);
        Count c = 0;
        try {
            c = std::stoull(item.substr(colon + 1));
        } catch (const std::exception&) {
            throw ConfigError("bad planted count in: " + item);
        }
        if (c == 0) throw ConfigError("planted count must be positive: " + item);
        raw.emplace_back(item.substr(0, colon), c);
    }
    if (raw.empty()) throw ConfigError("planted spec is empty");

    bool all_numeric = true;
    for (const auto& [name, c] : raw) {
        if (name.find_first_not_of("0123456789") != std::string::npos) {
            all_numeric = false;
            break;
        }
    }
    std::vector<PlantedKey> out;
    std::map<std::string, Key> ids;
    for (const auto& [name, c] : raw) {
        Key k;
        if (all_numeric) {
            k = std::stoull(name);
        } else {
            auto it = ids.find(name);
            if (it == ids.end()) it = ids.emplace(name, ids.size() + 1).first;
            k = it->second;
        }
        out.push_back({k, c});
    }
    return out;
}

std::vector<Key> load_prefix(const std::string& path, std::uint64_t& n) {
    std::vector<Key> stream = read_stream(path);
    if (n == 0) n = stream.size();
    if (n > stream.size()) {
        std::ostringstream os;
        os << "n=" << n << " exceeds stream length " << stream.size();
        throw ConfigError(os.str());
    }
    stream.resize(n);
    return stream;
}

std::map<Key, Count> count_keys(const std::vector<Key>& stream) {
    std::map<Key, Count> counts;
    for (Key k : stream) counts[k] += 1;
    return counts;
}

void write_io_csv(const std::string& path, const IoStats& io) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write io stats: " + path);
    io.write_csv(out);
}

void print_outcome(const VerifyOutcome& v) {
    for (const std::string& p : v.problems) std::cout << p << '\n';
    std::cout << "false_negatives: " << v.false_negatives << '\n'
              << "false_positives: " << v.false_positives << '\n'
              << "duplicates: " << v.duplicates << '\n'
              << "mistimed: " << v.mistimed << '\n'
              << (v.pass ? "PASS" : "FAIL") << '\n';
}

// ---- generate ----------------------------------------------------------
struct GenArgs {
    std::string dist = "uniform";
    std::uint64_t n = 0;
    std::uint64_t universe = 1024;
    double theta = 2.5;
    std::string planted;
    std::string order = "shuffled";
    std::uint64_t seed = 1;
    std::string output;
};

int cmd_generate(const GenArgs& a) {
    StreamSpec spec;
    spec.n = a.n;
    spec.universe = a.universe;
    spec.theta = a.theta;
    spec.order = parse_order(a.order);
    spec.seed = a.seed;
    if (!a.planted.empty()) {
        spec.dist = Distribution::planted;
        spec.planted = parse_planted(a.planted);
    } else {
        spec.dist = parse_distribution(a.dist);
    }
    const std::vector<Key> stream = generate_stream(spec);
    write_stream(a.output, stream);
    std::cout << a.output << " n=" << stream.size() << " fnv1a64=" << hash_file(a.output)
              << '\n';
    return kExitOk;
}

// ---- truth -------------------------------------------------------------
struct TruthArgs {
    std::string stream;
    double phi = 0.0;
    std::uint64_t t = 0;
    double alpha = 0.0;
    std::uint64_t n = 0;
    std::string output;
};

int cmd_truth(TruthArgs& a) {
    const std::vector<Key> stream = load_prefix(a.stream, a.n);
    const std::uint64_t t = a.t != 0 ? a.t : threshold_for(a.phi, a.n);
    if (t == 0) throw ConfigError("give --t or --phi");
    const GroundTruth truth = oracle_events(stream, t, a.alpha);
    write_truth_csv(a.output, truth);
    std::cout << a.output << " events=" << truth.events.size() << " t=" << t << '\n';
    return kExitOk;
}

// ---- run ---------------------------------------------------------------
struct RunArgs {
    std::string stream;
    std::string mode = "online";
    std::uint64_t n = 0;
    double phi = 0.0;
    std::uint64_t t = 0;
    std::string epsilon = "exact";
    std::uint64_t m = 0;
    std::uint64_t b = 64;
    double r = 2.0;
    std::uint64_t q = 0;
    double alpha = 0.0;
    double theta = 2.5;
    bool dynamic = false;
    std::string events_path = "events.csv";
    std::string io_path = "io.csv";
    std::string manifest_path = "manifest.json";
    std::string store = "memory";
    std::string store_path = "oedp.store";
    std::string truth_path;
    std::string from_manifest;
    bool force = false;
};

int cmd_run(RunArgs& a, bool events_set, bool io_set, bool manifest_set) {
    DetectorConfig cfg;
    std::string stream_path = a.stream;
    if (!a.from_manifest.empty()) {
        const Manifest prev = read_manifest(a.from_manifest);
        cfg = prev.config;
        if (stream_path.empty()) stream_path = prev.stream_path;
        if (!a.force && hash_file(stream_path) != prev.stream_hash)
            throw ConfigError("stream " + stream_path +
                              " no longer matches the manifest hash (use --force to run anyway)");
        a.store = prev.store;
        if (!events_set) a.events_path = prev.events_path + ".rerun";
        if (!io_set) a.io_path = prev.io_path + ".rerun";
        if (!manifest_set) a.manifest_path = a.from_manifest + ".rerun";
    } else {
        if (stream_path.empty()) throw ConfigError("run needs a stream file");
        cfg.mode = parse_mode(a.mode);
        cfg.n = a.n;
        cfg.phi = a.phi;
        cfg.t = a.t;
        apply_epsilon(cfg, a.epsilon);
        cfg.m = a.m;
        cfg.b = a.b;
        cfg.r = a.r;
        cfg.q = a.q;
        cfg.alpha = a.alpha;
        cfg.theta = a.theta;
        cfg.dynamic_thresholds = a.dynamic;
    }

    std::uint64_t n = cfg.n;
    const std::vector<Key> stream = load_prefix(stream_path, n);
    cfg.n = n;

    const DerivedParams d = derive_params(cfg);
    const std::vector<std::string> violations = check_preconditions(cfg, d);
    if (!violations.empty() && !a.force) {
        for (const std::string& v : violations)
            std::cerr << "precondition violated: " << v << '\n';
        return kExitConfig;
    }

    IoStats file_stats;
    std::unique_ptr<FileBlockStore> file_store;
    BlockStore* store = nullptr;
    if (a.store == "file") {
        file_store = std::make_unique<FileBlockStore>(a.store_path, cfg.b, &file_stats);
        store = file_store.get();
    } else if (a.store != "memory") {
        throw ConfigError("store must be 'memory' or 'file', got: " + a.store);
    }

    const RunResult result = run_detector(cfg, stream, store);
    if (file_store) file_store->sync();

    write_events_csv(a.events_path, result.events);
    write_io_csv(a.io_path, result.io);

    Manifest man;
    man.config = cfg;
    man.stream_path = stream_path;
    man.stream_hash = hash_file(stream_path);
    man.events_path = a.events_path;
    man.io_path = a.io_path;
    man.store = a.store;
    man.io = result.io;

    std::cout << "events: " << result.events.size() << '\n'
              << "io: " << result.io.total_reads() << " reads, " << result.io.total_writes()
              << " writes (" << static_cast<double>(result.io.total()) / static_cast<double>(n)
              << " blocks/item)\n";
    if (cfg.mode == Mode::online)
        std::cout << "consolidation queries: " << result.consolidation_queries << '\n';
    if (cfg.mode == Mode::power_law)
        std::cout << "sweeps: " << result.sweeps << ", merges: " << result.merges << '\n';

    int code = kExitOk;
    if (!a.truth_path.empty()) {
        const std::vector<TruthEvent> truth = read_truth_csv(a.truth_path);
        const std::map<Key, Count> counts = count_keys(stream);
        const VerifyOutcome v =
            verify_events(cfg.mode, d, n, result.events, truth, &counts);
        print_outcome(v);
        man.verdict = v.pass ? "pass" : "fail";
        if (!v.pass) code = kExitVerifyFail;
    }
    write_manifest(a.manifest_path, man);

    if (result.clogged) {
        std::cerr << result.clog_message << '\n';
        return kExitClog;
    }
    return code;
}

// ---- verify ------------------------------------------------------------
struct VerifyArgs {
    std::string events;
    std::string truth;
    std::string mode = "online";
    std::string stream;
    std::uint64_t n = 0;
    double phi = 0.0;
    std::uint64_t t = 0;
    std::string epsilon = "exact";
    std::uint64_t m = 256;
    std::uint64_t b = 64;
    double r = 2.0;
    std::uint64_t q = 2;
    double alpha = 0.0;
    double theta = 2.5;
};

int cmd_verify(const VerifyArgs& a) {
    DetectorConfig cfg;
    cfg.mode = parse_mode(a.mode);
    cfg.n = a.n;
    cfg.phi = a.phi;
    cfg.t = a.t;
    apply_epsilon(cfg, a.epsilon);
    cfg.m = a.m;
    cfg.b = a.b;
    cfg.r = a.r;
    cfg.q = a.q;
    cfg.alpha = a.alpha;
    cfg.theta = a.theta;
    const DerivedParams d = derive_params(cfg);

    const std::vector<EventReport> events = read_events_csv(a.events);
    const std::vector<TruthEvent> truth = read_truth_csv(a.truth);

    std::map<Key, Count> counts;
    const std::map<Key, Count>* counts_ptr = nullptr;
    if (!a.stream.empty()) {
        std::uint64_t n = a.n;
        counts = count_keys(load_prefix(a.stream, n));
        counts_ptr = &counts;
    }

    const VerifyOutcome v = verify_events(cfg.mode, d, cfg.n, events, truth, counts_ptr);
    print_outcome(v);
    return v.pass ? kExitOk : kExitVerifyFail;
}

// ---- bench -------------------------------------------------------------
struct BenchArgs {
    std::string stream;
    std::string mode = "online";
    std::vector<std::uint64_t> n_list;
    std::vector<std::uint64_t> b_list;
    std::vector<std::uint64_t> q_list;
    std::uint64_t m = 0;
    double r = 2.0;
    double phi = 0.0;
    std::uint64_t t = 0;
    std::string epsilon = "exact";
    double alpha = 0.0;
    double theta = 2.5;
    bool dynamic = false;
    std::string output;
};

int cmd_bench(const BenchArgs& a) {
    const std::vector<Key> full = read_stream(a.stream);
    const Mode mode = parse_mode(a.mode);

    std::vector<std::uint64_t> ns = a.n_list;
    if (ns.empty()) ns.push_back(full.size());
    std::vector<std::uint64_t> bs = a.b_list;
    if (bs.empty()) bs.push_back(64);
    std::vector<std::uint64_t> qs = a.q_list;
    if (mode != Mode::time_stretch)
        qs.assign(1, 0); // single pass; q is a time-stretch knob
    else if (qs.empty())
        qs.push_back(2);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!a.output.empty()) {
        file.open(a.output);
        if (!file) throw IoError("cannot write bench table: " + a.output);
        out = &file;
    }
    *out << "mode,n,m,b,r,param,blocks_per_item,queries,sweeps\n";

    for (std::uint64_t n : ns) {
        for (std::uint64_t b : bs) {
            for (std::uint64_t q : qs) {
                DetectorConfig cfg;
                cfg.mode = mode;
                cfg.n = n;
                cfg.phi = a.phi;
                cfg.t = a.t;
                apply_epsilon(cfg, a.epsilon);
                cfg.m = a.m;
                cfg.b = b;
                cfg.r = a.r;
                cfg.q = q;
                cfg.alpha = a.alpha;
                cfg.theta = a.theta;
                cfg.dynamic_thresholds = a.dynamic;

                std::uint64_t nn = n;
                std::vector<Key> stream = full;
                if (nn > stream.size()) {
                    std::ostringstream os;
                    os << "bench n=" << nn << " exceeds stream length " << stream.size();
                    throw ConfigError(os.str());
                }
                stream.resize(nn);

                const RunResult res = run_detector(cfg, stream);
                if (res.clogged)
                    std::cerr << "warning: cell n=" << n << " b=" << b << ": "
                              << res.clog_message << '\n';

                double param = 0.0;
                if (mode == Mode::time_stretch) param = static_cast<double>(q);
                else if (mode == Mode::power_law) param = a.theta;
                else param = res.derived.epsilon;

                *out << mode_name(mode) << ',' << n << ',' << a.m << ',' << b << ','
                     << a.r << ',' << param << ','
                     << static_cast<double>(res.io.total()) / static_cast<double>(n) << ','
                     << res.consolidation_queries << ',' << res.sweeps << '\n';
            }
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Streaming event detection over block storage"};
    app.require_subcommand(1);

    GenArgs gen;
    CLI::App* g = app.add_subcommand("generate", "Generate a deterministic stream file");
    g->add_option("--dist", gen.dist, "uniform | power_law | planted");
    g->add_option("--n", gen.n, "stream length")->required();
    g->add_option("--u,--universe", gen.universe, "key universe for drawn distributions");
    g->add_option("--theta", gen.theta, "power-law tail exponent");
    g->add_option("--planted", gen.planted, "exact counts, e.g. a:3,b:1");
    g->add_option("--order", gen.order, "shuffled | burst | round_robin");
    g->add_option("--seed", gen.seed, "RNG seed");
    g->add_option("-o,--output", gen.output, "stream file (.txt = one key per line)")
        ->required();

    TruthArgs tr;
    CLI::App* tc = app.add_subcommand("truth", "Compute ground-truth events for a stream");
    tc->add_option("stream", tr.stream, "stream file")->required();
    CLI::Option* tr_phi = tc->add_option("--phi", tr.phi, "reporting fraction");
    tc->add_option("--t", tr.t, "occurrence threshold")->excludes(tr_phi);
    tc->add_option("--alpha", tr.alpha, "deadline stretch factor");
    tc->add_option("--n", tr.n, "use only the first n items");
    tc->add_option("-o,--output", tr.output, "truth CSV")->required();

    RunArgs run;
    CLI::App* rc = app.add_subcommand("run", "Run a detector over a stream");
    rc->add_option("stream", run.stream, "stream file");
    rc->add_option("--mode", run.mode, "online | time-stretch | power-law");
    rc->add_option("--n", run.n, "use only the first n items");
    CLI::Option* rc_phi = rc->add_option("--phi", run.phi, "reporting fraction");
    rc->add_option("--t", run.t, "occurrence threshold")->excludes(rc_phi);
    rc->add_option("--epsilon", run.epsilon, "error fraction or 'exact'");
    rc->add_option("--m", run.m, "RAM budget in entries");
    rc->add_option("--b", run.b, "block size in entries");
    rc->add_option("--r", run.r, "level growth factor");
    rc->add_option("--q", run.q, "time-stretch bins per level");
    rc->add_option("--alpha", run.alpha, "time-stretch factor");
    rc->add_option("--theta", run.theta, "power-law exponent");
    rc->add_flag("--dynamic", run.dynamic, "learn power-law thresholds online");
    CLI::Option* rc_ev = rc->add_option("-o,--events", run.events_path, "events CSV");
    CLI::Option* rc_io = rc->add_option("--io", run.io_path, "I/O stats CSV");
    CLI::Option* rc_man = rc->add_option("--manifest", run.manifest_path, "manifest JSON");
    rc->add_option("--store", run.store, "memory | file");
    rc->add_option("--store-path", run.store_path, "backing file for --store file");
    rc->add_option("--truth", run.truth_path, "verify against this truth CSV");
    rc->add_option("--from-manifest", run.from_manifest, "re-run a recorded manifest");
    rc->add_flag("--force", run.force, "run despite precondition violations");

    VerifyArgs ver;
    CLI::App* vc = app.add_subcommand("verify", "Check an events CSV against ground truth");
    vc->add_option("--events", ver.events, "events CSV")->required();
    vc->add_option("--truth", ver.truth, "truth CSV")->required();
    vc->add_option("--mode", ver.mode, "online | time-stretch | power-law");
    vc->add_option("--stream", ver.stream, "recount final frequencies from this stream");
    vc->add_option("--n", ver.n, "stream length")->required();
    CLI::Option* vc_phi = vc->add_option("--phi", ver.phi, "reporting fraction");
    vc->add_option("--t", ver.t, "occurrence threshold")->excludes(vc_phi);
    vc->add_option("--epsilon", ver.epsilon, "error fraction or 'exact'");
    vc->add_option("--m", ver.m, "RAM budget (affects derived params only)");
    vc->add_option("--b", ver.b, "block size");
    vc->add_option("--r", ver.r, "level growth factor");
    vc->add_option("--q", ver.q, "time-stretch bins per level");
    vc->add_option("--alpha", ver.alpha, "time-stretch factor");
    vc->add_option("--theta", ver.theta, "power-law exponent");

    BenchArgs be;
    CLI::App* bc = app.add_subcommand("bench", "I/O cost table across a parameter grid");
    bc->add_option("stream", be.stream, "stream file")->required();
    bc->add_option("--mode", be.mode, "online | time-stretch | power-law");
    bc->add_option("--n", be.n_list, "stream prefix lengths")->delimiter(',');
    bc->add_option("--b", be.b_list, "block sizes")->delimiter(',');
    bc->add_option("--q", be.q_list, "time-stretch bin counts")->delimiter(',');
    bc->add_option("--m", be.m, "RAM budget in entries")->required();
    bc->add_option("--r", be.r, "level growth factor");
    CLI::Option* bc_phi = bc->add_option("--phi", be.phi, "reporting fraction");
    bc->add_option("--t", be.t, "occurrence threshold")->excludes(bc_phi);
    bc->add_option("--epsilon", be.epsilon, "error fraction or 'exact'");
    bc->add_option("--alpha", be.alpha, "time-stretch factor");
    bc->add_option("--theta", be.theta, "power-law exponent");
    bc->add_flag("--dynamic", be.dynamic, "learn power-law thresholds online");
    bc->add_option("-o,--output", be.output, "write the table here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (g->parsed()) return cmd_generate(gen);
        if (tc->parsed()) return cmd_truth(tr);
        if (rc->parsed())
            return cmd_run(run, rc_ev->count() > 0, rc_io->count() > 0,
                           rc_man->count() > 0);
        if (vc->parsed()) return cmd_verify(ver);
        if (bc->parsed()) return cmd_bench(be);
    } catch (const ClogError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitClog;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}

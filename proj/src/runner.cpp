#include "oedp/runner.hpp"

#include "oedp/cascade.hpp"
#include "oedp/power_law.hpp"
#include "oedp/time_stretch.hpp"

namespace oedp {

RunResult run_detector(const DetectorConfig& cfg, const std::vector<Key>& stream,
                       BlockStore* store) {
    RunResult result;
    result.derived = derive_params(cfg);

    IoStats local_stats;
    std::unique_ptr<MemoryBlockStore> local_store;
    if (store == nullptr) {
        local_store = std::make_unique<MemoryBlockStore>(cfg.b, &local_stats);
        store = local_store.get();
    }

    switch (cfg.mode) {
        case Mode::online: {
            CascadeDetector det(cfg, result.derived, *store);
            for (Key k : stream) det.insert(k);
            result.events = det.events();
            result.consolidation_queries = det.consolidation_queries();
            result.flushes = det.flush_invocations();
            break;
        }
        case Mode::time_stretch: {
            TimeStretchFilter det(cfg, result.derived, *store);
            for (Key k : stream) det.insert(k);
            det.finalize();
            result.events = det.events();
            result.flushes = det.flush_invocations();
            break;
        }
        case Mode::power_law: {
            PowerLawFilter det(cfg, result.derived, *store);
            try {
                for (Key k : stream) det.insert(k);
            } catch (const ClogError& e) {
                result.clogged = true;
                result.clog_level = e.level;
                result.clog_message = e.what();
            }
            result.events = det.events();
            result.sweeps = det.sweep_count();
            result.merges = det.merge_count();
            result.flushes = det.merge_count();
            result.final_tau = det.tau();
            result.tau_trace = det.tau_trace();
            result.max_level_entries.resize(result.derived.levels + 1);
            for (std::size_t i = 0; i <= result.derived.levels; ++i)
                result.max_level_entries[i] = det.max_entries_seen(i);
            break;
        }
    }

    result.io = store->io();
    return result;
}

} // namespace oedp

#include "oedp/config.hpp"

#include <cmath>
#include <sstream>

namespace oedp {

namespace {

// Ceil/floor with a small guard so values that are integral on paper but
// carry float noise (log2 of a power of two, phi*n for dyadic phi) land on
// the intended integer. The guard is far above double noise at the stream
// sizes involved and far below any legitimate fractional part.
constexpr long double kGuard = 1e-9L;

std::uint64_t ceil_guarded(long double x) {
    if (x <= 0) return 0;
    return static_cast<std::uint64_t>(std::ceil(x - kGuard));
}

std::uint64_t floor_guarded(long double x) {
    if (x <= 0) return 0;
    return static_cast<std::uint64_t>(std::floor(x + kGuard));
}

} // namespace

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::online: return "online";
        case Mode::time_stretch: return "time_stretch";
        case Mode::power_law: return "power_law";
    }
    return "?";
}

Mode parse_mode(const std::string& s) {
    if (s == "online") return Mode::online;
    if (s == "time_stretch" || s == "time-stretch" || s == "stretch")
        return Mode::time_stretch;
    if (s == "power_law" || s == "power-law" || s == "powerlaw") return Mode::power_law;
    throw ConfigError("unknown mode: " + s);
}

std::uint64_t threshold_for(double phi, std::uint64_t n) {
    const std::uint64_t t = ceil_guarded(static_cast<long double>(phi) * n);
    return t == 0 ? 1 : t;
}

std::uint64_t pl_sweep_trigger(std::uint64_t t, std::uint64_t tau_sum) {
    return t > tau_sum ? t - tau_sum : 1;
}

DerivedParams derive_params(const DetectorConfig& cfg) {
    if (cfg.n == 0) throw ConfigError("stream length n must be positive");
    if (cfg.m == 0) throw ConfigError("RAM budget m must be positive");
    if (cfg.b == 0) throw ConfigError("block size b must be positive");
    if (!(cfg.r > 1.0)) throw ConfigError("growth factor r must exceed 1");

    DerivedParams d;
    const long double n = static_cast<long double>(cfg.n);

    if (cfg.t != 0) {
        if (cfg.phi != 0.0) throw ConfigError("give either phi or t, not both");
        if (cfg.t > cfg.n) throw ConfigError("threshold t cannot exceed n");
        d.t = cfg.t;
        d.phi = static_cast<double>(static_cast<long double>(cfg.t) / n);
    } else {
        if (!(cfg.phi > 0.0 && cfg.phi <= 1.0)) throw ConfigError("phi must lie in (0,1]");
        d.phi = cfg.phi;
        d.t = ceil_guarded(static_cast<long double>(cfg.phi) * n);
        if (d.t == 0) d.t = 1;
    }

    if (cfg.exact) {
        d.epsilon = static_cast<double>(1.0L / n);
        d.exact = true;
    } else {
        if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive (or use exact mode)");
        d.epsilon = cfg.epsilon;
        d.exact = cfg.epsilon <= static_cast<double>(1.0L / n);
        if (d.exact) d.epsilon = static_cast<double>(1.0L / n);
    }
    if (static_cast<long double>(d.epsilon) * n < 1.0L - 1e-9L)
        throw ConfigError("epsilon below 1/n is unattainable");
    if (!(d.epsilon < d.phi) && !(d.exact && d.t >= 1))
        throw ConfigError("epsilon must be smaller than phi");

    if (d.exact) {
        d.report_min = d.t;
    } else {
        const long double floor_line = (static_cast<long double>(d.phi) -
                                        static_cast<long double>(d.epsilon)) * n;
        d.report_min = floor_guarded(floor_line) + 1; // strictly above (phi-eps)n
        if (d.report_min > d.t) d.report_min = d.t;   // never demand more than the event itself
    }

    const long double r = static_cast<long double>(cfg.r);
    const long double inv_em = 1.0L / (static_cast<long double>(d.epsilon) *
                                       static_cast<long double>(cfg.m));

    switch (cfg.mode) {
        case Mode::online:
        case Mode::time_stretch: {
            long double lvl = std::log(inv_em) / std::log(r);
            std::size_t extra = inv_em > 1.0L ? static_cast<std::size_t>(ceil_guarded(lvl)) : 0;
            d.levels = 1 + extra;
            d.level_capacity.resize(d.levels);
            for (std::size_t i = 0; i < d.levels; ++i)
                d.level_capacity[i] = ceil_guarded(std::pow(r, static_cast<long double>(i)) *
                                                   static_cast<long double>(cfg.m));
            break;
        }
        case Mode::power_law: {
            if (!(cfg.theta > 1.0)) throw ConfigError("theta must exceed 1");
            long double lvl = std::log(2.0L * inv_em) / std::log(r);
            d.levels = 2.0L * inv_em > 1.0L ? std::max<std::size_t>(1, ceil_guarded(lvl)) : 1;
            d.level_capacity.assign(d.levels + 1, 0);
            d.level_capacity[0] = cfg.m;
            d.tau.assign(d.levels + 1, 0);
            const long double inv_tm1 = 1.0L / (static_cast<long double>(cfg.theta) - 1.0L);
            const std::size_t L = d.levels;
            for (std::size_t i = 1; i <= L; ++i) {
                d.level_capacity[i] = ceil_guarded(
                    2.0L / (std::pow(r, static_cast<long double>(L - i)) *
                            static_cast<long double>(d.epsilon)));
                if (!cfg.dynamic_thresholds) {
                    // tau_L = (r*eps*n)^(1/(theta-1)), tau_i = r^(1/(theta-1)) * tau_{i+1}
                    const long double v = std::pow(
                        std::pow(r, static_cast<long double>(L - i + 1)) *
                            static_cast<long double>(d.epsilon) * n,
                        inv_tm1);
                    d.tau[i] = std::max<std::uint64_t>(1, floor_guarded(v));
                }
            }
            for (std::size_t i = 1; i <= L; ++i) d.tau_sum += d.tau[i];
            d.sweep_trigger = pl_sweep_trigger(d.t, d.tau_sum);
            break;
        }
    }

    if (cfg.mode == Mode::online) {
        const long double line =
            (static_cast<long double>(d.phi) - 1.0L / static_cast<long double>(cfg.m)) * n;
        d.trigger_line = line > 0 ? static_cast<double>(line) : 0.0;
    }

    if (cfg.mode == Mode::time_stretch) {
        if (cfg.q != 0) {
            if (cfg.q < 2) throw ConfigError("q must be at least 2");
            d.q = cfg.q;
        } else {
            if (!(cfg.alpha > 0.0)) throw ConfigError("time-stretch needs alpha > 0 or q >= 2");
            d.q = ceil_guarded((static_cast<long double>(cfg.alpha) + 1.0L) /
                               static_cast<long double>(cfg.alpha));
            if (d.q < 2) d.q = 2;
        }
        d.alpha_eff = 1.0 / static_cast<double>(d.q - 1);
        d.bin_capacity.resize(d.levels);
        for (std::size_t i = 0; i < d.levels; ++i)
            d.bin_capacity[i] =
                static_cast<double>(std::pow(r, static_cast<long double>(i)) *
                                    static_cast<long double>(cfg.m) /
                                    static_cast<long double>(d.q));
    }

    return d;
}

std::vector<std::string> check_preconditions(const DetectorConfig& cfg, const DerivedParams& d) {
    std::vector<std::string> out;
    auto violated = [&out](const std::string& s) { out.push_back(s); };
    const long double n = static_cast<long double>(cfg.n);

    switch (cfg.mode) {
        case Mode::online: {
            const long double line =
                (static_cast<long double>(d.phi) - 1.0L / static_cast<long double>(cfg.m)) * n;
            if (line < 1.0L) {
                std::ostringstream os;
                os << "(phi - 1/m)*n >= 1 violated: (" << d.phi << " - 1/" << cfg.m << ")*"
                   << cfg.n << " = " << static_cast<double>(line);
                violated(os.str());
            }
            break;
        }
        case Mode::time_stretch:
            if (cfg.m < 2 * d.q) {
                std::ostringstream os;
                os << "m >= 2q violated: m = " << cfg.m << ", q = " << d.q;
                violated(os.str());
            }
            break;
        case Mode::power_law:
            if (!cfg.dynamic_thresholds && d.t <= d.tau_sum) {
                std::ostringstream os;
                os << "t > sum(tau) violated: t = " << d.t << ", sum(tau) = " << d.tau_sum
                   << " (sweep trigger would be nonpositive)";
                violated(os.str());
            }
            break;
    }
    return out;
}

} // namespace oedp

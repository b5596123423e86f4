#include "pgd/randmodel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "pgd/colouring.hpp"
#include "pgd/guards.hpp"

namespace pgd {

Rng trial_stream(std::uint64_t seed, std::uint64_t trial) {
    // one splitmix64 step decorrelates (seed, trial) pairs
    Rng mix{seed ^ (trial * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull)};
    return Rng{mix.next()};
}

Field field_from_order(int q) {
    if (q < 2) throw std::invalid_argument("field order must be >= 2");
    int p = 2;
    while (q % p != 0) ++p;
    int e = 0;
    int rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    return Field::make(p, e);
}

std::vector<std::uint32_t> sample_pgp(const Geometry& geo, double p, Rng& rng) {
    if (p <= 0 || p > 1) throw std::invalid_argument("retention probability must be in (0,1]");
    std::vector<std::uint32_t> out;
    if (p >= 1) {
        out.resize(geo.num_points());
        for (std::uint32_t i = 0; i < geo.num_points(); ++i) out[i] = i;
        return out;
    }
    const auto threshold = static_cast<std::uint64_t>(p * 18446744073709551616.0);
    for (std::uint32_t i = 0; i < geo.num_points(); ++i)
        if (rng.next() < threshold) out.push_back(i);
    return out;
}

double markov(double mu, double x) {
    if (mu < 0) throw std::invalid_argument("markov: mu must be nonnegative");
    if (x <= 0) throw std::invalid_argument("markov: x must be positive");
    return mu / x;
}

double chernoff_upper(double mu, double delta) {
    if (mu < 0 || delta < 0 || delta > 1) throw std::invalid_argument("chernoff: bad arguments");
    return std::exp(-delta * delta * mu / 3.0);
}

double chernoff_lower(double mu, double delta) {
    if (mu < 0 || delta < 0 || delta > 1) throw std::invalid_argument("chernoff: bad arguments");
    return std::exp(-delta * delta * mu / 2.0);
}

namespace {

long long point_count(int n, int q) {
    BigInt c = flat_size(n, q);
    if (c > BigInt(std::uint64_t{1} << 62)) throw std::invalid_argument("geometry too large");
    return c.convert_to<long long>();
}

// Runs trials 0..trials-1 across `workers` threads; trial t writes only
// slot t, so the aggregation order (and hence every byte of output) is
// independent of the worker count.
template <class T, class Fn>
std::vector<T> run_trials(int trials, int workers, Fn fn) {
    std::vector<T> out(trials);
    workers = std::max(1, std::min(workers, trials));
    if (workers == 1) {
        for (int t = 0; t < trials; ++t) out[t] = fn(t);
        return out;
    }
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
            for (int t = w; t < trials; t += workers) out[t] = fn(t);
        });
    for (auto& th : threads) th.join();
    return out;
}

std::vector<std::uint64_t> sample_bitmap(const Geometry& geo, double p, Rng& rng,
                                         long long* size_out) {
    std::vector<std::uint64_t> bm((geo.num_points() + 63) / 64, 0);
    long long cnt = 0;
    if (p >= 1) {
        for (std::uint32_t i = 0; i < geo.num_points(); ++i) bm[i >> 6] |= std::uint64_t{1} << (i & 63);
        cnt = static_cast<long long>(geo.num_points());
    } else {
        const auto threshold = static_cast<std::uint64_t>(p * 18446744073709551616.0);
        for (std::uint32_t i = 0; i < geo.num_points(); ++i)
            if (rng.next() < threshold) {
                bm[i >> 6] |= std::uint64_t{1} << (i & 63);
                ++cnt;
            }
    }
    if (size_out) *size_out = cnt;
    return bm;
}

inline bool bit(const std::vector<std::uint64_t>& bm, std::uint32_t i) {
    return (bm[i >> 6] >> (i & 63)) & 1;
}

// Rank (and lazily colouring number) of flat traces keyed by the trace's
// position pattern inside the flat.  All rank-d flats of PG(n-1,q) look
// alike through their canonical basis, so a census over millions of flats
// touches only 2^m distinct local patterns, m = (q^d-1)/(q-1).
struct LocalTables {
    Geometry local;
    int m;
    std::vector<std::uint8_t> rank_table;

    LocalTables(int d, int q)
        : local(d, field_from_order(q)), m(static_cast<int>(local.num_points())) {
        if (m > 20) throw std::invalid_argument("flat too large for local-pattern tables");
        rank_table.resize(std::size_t{1} << m);
        std::vector<std::uint32_t> idxs;
        for (std::uint32_t mask = 0; mask < rank_table.size(); ++mask) {
            idxs.clear();
            for (int i = 0; i < m; ++i)
                if (mask & (1u << i)) idxs.push_back(i);
            rank_table[mask] = static_cast<std::uint8_t>(rank_of(local, idxs));
        }
    }

    int colouring_of(std::uint32_t mask, std::unordered_map<std::uint32_t, int>& cache) const {
        auto it = cache.find(mask);
        if (it != cache.end()) return it->second;
        std::vector<std::uint32_t> idxs;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) idxs.push_back(i);
        int k = colouring_number(restrict(local, idxs)).k;
        cache.emplace(mask, k);
        return k;
    }
};

// Streams all rank-d flats, splitting pivot profiles across workers, and
// feeds each flat's global point indices to `fn(worker, points)`.
void scan_flats(const Geometry& geo, int d, int workers,
                const std::function<void(int, const std::vector<std::uint32_t>&)>& fn) {
    auto profiles = pivot_profiles(geo.n(), d);
    workers = std::max(1, std::min<int>(workers, static_cast<int>(profiles.size())));
    auto work = [&](int w) {
        std::vector<std::uint32_t> pts;
        for (std::size_t pi = w; pi < profiles.size(); pi += workers) {
            for_each_flat_in_profile(geo.n(), geo.q(), profiles[pi], [&](const Flat& f) {
                pts = flat_points(geo, f);
                fn(w, pts);
            });
        }
    };
    if (workers == 1) {
        work(0);
        return;
    }
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
}

double census_threshold(int d, int q, double p) {
    return 0.5 * p * flat_size(d, q).convert_to<double>();
}

struct CensusAccum {
    std::uint64_t dense = 0, surviving = 0, dense_size = 0;
};

// Core census shared by the single-matroid and the multi-trial entry
// points: one pass over the flats, all trial bitmaps tested per flat.
std::vector<CensusResult> census_core(const Geometry& geo, int d, double p,
                                      const std::vector<std::vector<std::uint64_t>>& bitmaps,
                                      int workers) {
    if (d < 1 || d > geo.n()) throw std::invalid_argument("census rank out of range");
    if (qbinom(geo.n(), d, geo.q()) > BigInt(max_census_flats()))
        throw std::invalid_argument("census too large (PGD_MAX_CENSUS_FLATS)");
    LocalTables tables(d, geo.q());
    const int m = tables.m;
    const double thresh = census_threshold(d, geo.q(), p);
    const int trials = static_cast<int>(bitmaps.size());

    std::vector<std::vector<CensusAccum>> acc(std::max(1, workers),
                                              std::vector<CensusAccum>(trials));
    scan_flats(geo, d, workers, [&](int w, const std::vector<std::uint32_t>& pts) {
        for (int t = 0; t < trials; ++t) {
            std::uint32_t mask = 0;
            for (int i = 0; i < m; ++i)
                if (bit(bitmaps[t], pts[i])) mask |= 1u << i;
            int cnt = std::popcount(mask);
            bool dense_size = cnt >= thresh - 1e-9;
            bool surviving = tables.rank_table[mask] == d;
            CensusAccum& a = acc[w][t];
            a.dense_size += dense_size;
            a.surviving += surviving;
            a.dense += dense_size && surviving;
        }
    });

    std::vector<CensusResult> out(trials);
    for (int t = 0; t < trials; ++t) {
        out[t].threshold = thresh;
        for (const auto& wacc : acc) {
            out[t].dense_count += wacc[t].dense;
            out[t].surviving_rank_d += wacc[t].surviving;
            out[t].dense_size_count += wacc[t].dense_size;
        }
    }
    return out;
}

}  // namespace

// ---- experiments -----------------------------------------------------------

SizeExperimentResult run_size_experiment(const TrialConfig& cfg) {
    SizeExperimentResult res;
    res.cfg = cfg;
    const long long npts = point_count(cfg.n, cfg.q);
    res.center = cfg.p * static_cast<double>(npts);
    res.halfwidth = cfg.delta * res.center;
    res.chernoff_up = chernoff_upper(res.center, std::min(cfg.delta, 1.0));
    res.chernoff_lo = chernoff_lower(res.center, std::min(cfg.delta, 1.0));

    auto sizes = run_trials<long long>(cfg.trials, cfg.workers, [&](int t) {
        Rng rng = trial_stream(cfg.seed, t);
        long long cnt = 0;
        if (cfg.p >= 1) return npts;
        const auto threshold = static_cast<std::uint64_t>(cfg.p * 18446744073709551616.0);
        for (long long i = 0; i < npts; ++i)
            if (rng.next() < threshold) ++cnt;
        return cnt;
    });
    res.sizes = std::move(sizes);
    int in = 0;
    for (long long s : res.sizes) {
        bool ok = s >= res.center - res.halfwidth - 1e-9 && s <= res.center + res.halfwidth + 1e-9;
        res.in_band.push_back(ok);
        in += ok;
    }
    res.in_band_fraction = cfg.trials ? static_cast<double>(in) / cfg.trials : 0;
    return res;
}

RankExperimentResult run_rank_experiment(const TrialConfig& cfg) {
    RankExperimentResult res;
    res.cfg = cfg;
    Geometry geo(cfg.n, field_from_order(cfg.q));
    res.ranks = run_trials<int>(cfg.trials, cfg.workers, [&](int t) {
        Rng rng = trial_stream(cfg.seed, t);
        auto pts = sample_pgp(geo, cfg.p, rng);
        return rank_of(geo, pts);
    });
    int full = 0;
    for (int r : res.ranks) full += r == cfg.n;
    res.full_rank_fraction = cfg.trials ? static_cast<double>(full) / cfg.trials : 0;
    // ((q^n-1)/(q-1)) (1-p)^(q^(n-1)) in log space
    double hyperplane_pts = std::pow(static_cast<double>(cfg.q), cfg.n - 1);
    res.union_bound_log10 =
        std::log10(static_cast<double>(point_count(cfg.n, cfg.q))) +
        hyperplane_pts * std::log10(1.0 - cfg.p);
    return res;
}

ColouringExperimentResult run_colouring_experiment(const TrialConfig& cfg) {
    ColouringExperimentResult res;
    res.cfg = cfg;
    if (static_cast<std::uint64_t>(point_count(cfg.n, cfg.q)) > max_colouring_points())
        throw std::invalid_argument("too many points for exact colouring (PGD_MAX_COLOURING_POINTS)");
    Geometry geo(cfg.n, field_from_order(cfg.q));
    res.center = cfg.p * std::pow(static_cast<double>(cfg.q), cfg.n) / ((cfg.q - 1) * cfg.n);
    res.cols = run_trials<int>(cfg.trials, cfg.workers, [&](int t) {
        Rng rng = trial_stream(cfg.seed, t);
        auto pts = sample_pgp(geo, cfg.p, rng);
        if (pts.empty()) return 0;
        return colouring_number(restrict(geo, pts)).k;
    });
    int in = 0;
    for (int k : res.cols) {
        bool ok = k >= (1 - cfg.delta) * res.center - 1e-9 && k <= (1 + cfg.delta) * res.center + 1e-9;
        res.in_band.push_back(ok);
        in += ok;
    }
    res.in_band_fraction = cfg.trials ? static_cast<double>(in) / cfg.trials : 0;
    return res;
}

SmallFlatCheck check_small_flat(const SubMatroid& m, double p, double delta) {
    const Geometry& geo = *m.geo;
    BigInt total = 0;
    for (int d = 1; d <= geo.n(); ++d) total += qbinom(geo.n(), d, geo.q());
    if (total > BigInt(max_enum_flats()))
        throw std::invalid_argument("small-flat check above the flat enumeration guard");

    SmallFlatCheck res;
    const double bound = (1 + delta) * p * std::pow(static_cast<double>(geo.q()), geo.n()) /
                         ((geo.q() - 1) * static_cast<double>(geo.n()));
    std::vector<std::uint32_t> trace;
    for (int d = 1; d <= geo.n() && res.holds; ++d) {
        for_each_flat(geo.n(), geo.q(), d, [&](const Flat& f) {
            if (!res.holds) return;
            ++res.flats_checked;
            trace.clear();
            for (std::uint32_t i : flat_points(geo, f))
                if (m.contains(i)) trace.push_back(i);
            if (trace.empty()) return;
            int r = rank_of(geo, trace);
            if (static_cast<double>(trace.size()) > bound * r + 1e-9) {
                res.holds = false;
                res.violating = f;
                res.trace_size = static_cast<long long>(trace.size());
                res.trace_rank = r;
            }
        });
    }
    return res;
}

SmallFlatExperimentResult run_small_flat_experiment(const TrialConfig& cfg) {
    SmallFlatExperimentResult res;
    res.cfg = cfg;
    Geometry geo(cfg.n, field_from_order(cfg.q));
    auto holds = run_trials<char>(cfg.trials, cfg.workers, [&](int t) {
        Rng rng = trial_stream(cfg.seed, t);
        auto pts = sample_pgp(geo, cfg.p, rng);
        SubMatroid sub = restrict(geo, pts);
        return static_cast<char>(check_small_flat(sub, cfg.p, cfg.delta).holds);
    });
    int viol = 0;
    for (char h : holds) {
        res.holds.push_back(h != 0);
        viol += h == 0;
    }
    res.violation_fraction = cfg.trials ? static_cast<double>(viol) / cfg.trials : 0;
    return res;
}

CensusResult dense_flat_census(const SubMatroid& m, int d, double p) {
    return census_core(*m.geo, d, p, {m.bitmap}, 1)[0];
}

CensusExperimentResult run_census_experiment(const TrialConfig& cfg) {
    CensusExperimentResult res;
    res.cfg = cfg;
    Geometry geo(cfg.n, field_from_order(cfg.q));
    res.total_flats = qbinom(cfg.n, cfg.d, cfg.q);
    res.half_total = (res.total_flats + 1) / 2;

    std::vector<std::vector<std::uint64_t>> bitmaps(cfg.trials);
    for (int t = 0; t < cfg.trials; ++t) {
        Rng rng = trial_stream(cfg.seed, t);
        bitmaps[t] = sample_bitmap(geo, cfg.p, rng, nullptr);
    }
    res.per_trial = census_core(geo, cfg.d, cfg.p, bitmaps, cfg.workers);

    std::uint64_t dense_total = 0;
    for (const auto& r : res.per_trial) {
        if (BigInt(r.dense_count) >= res.half_total) ++res.trials_meeting_half_target;
        dense_total += r.dense_count;
    }
    double denom = res.total_flats.convert_to<double>() * cfg.trials;
    res.survival_frequency = denom > 0 ? dense_total / denom : 0;
    return res;
}

Claim1Result claim1_check(const SubMatroid& m, int d, int b, double p) {
    const Geometry& geo = *m.geo;
    if (qbinom(geo.n(), d, geo.q()) > BigInt(max_census_flats()))
        throw std::invalid_argument("census too large (PGD_MAX_CENSUS_FLATS)");
    LocalTables tables(d, geo.q());
    const double thresh = census_threshold(d, geo.q(), p);

    Claim1Result res;
    res.density_threshold = thresh / d;
    res.threshold_exceeds_b = res.density_threshold > b;
    res.min_col = 0;
    std::unordered_map<std::uint32_t, int> col_cache;
    scan_flats(geo, d, 1, [&](int, const std::vector<std::uint32_t>& pts) {
        std::uint32_t mask = 0;
        for (int i = 0; i < tables.m; ++i)
            if (m.contains(pts[i])) mask |= 1u << i;
        int cnt = std::popcount(mask);
        if (cnt < thresh - 1e-9 || tables.rank_table[mask] != d) return;
        ++res.dense_flats;
        int col = tables.colouring_of(mask, col_cache);
        if (col <= b) ++res.col_le_b;
        int edmonds_lb = (cnt + d - 1) / d;
        if (col < edmonds_lb) ++res.edmonds_bound_failures;
        if (res.min_col == 0 || col < res.min_col) res.min_col = col;
    });
    return res;
}

Claim1ExperimentResult run_claim1_experiment(const TrialConfig& cfg) {
    Claim1ExperimentResult res;
    res.cfg = cfg;
    Geometry geo(cfg.n, field_from_order(cfg.q));
    res.per_trial = run_trials<Claim1Result>(cfg.trials, cfg.workers, [&](int t) {
        Rng rng = trial_stream(cfg.seed, t);
        auto pts = sample_pgp(geo, cfg.p, rng);
        return claim1_check(restrict(geo, pts), cfg.d, cfg.b, cfg.p);
    });
    for (const auto& r : res.per_trial)
        if (r.col_le_b > 0) res.all_dense_exceed_b = false;
    return res;
}

// ---- serialization ---------------------------------------------------------

// The worker count is deliberately absent: results are worker-independent,
// so serialized output must not vary with it.
nlohmann::json to_json(const TrialConfig& cfg) {
    return {{"n", cfg.n},         {"q", cfg.q},     {"p", cfg.p},
            {"delta", cfg.delta}, {"d", cfg.d},     {"b", cfg.b},
            {"c", cfg.c},         {"trials", cfg.trials},
            {"seed", cfg.seed}};
}

nlohmann::json to_json(const SizeExperimentResult& r) {
    return {{"config", to_json(r.cfg)},
            {"center", r.center},
            {"halfwidth", r.halfwidth},
            {"in_band_fraction", r.in_band_fraction},
            {"chernoff_upper", r.chernoff_up},
            {"chernoff_lower", r.chernoff_lo}};
}

nlohmann::json to_json(const RankExperimentResult& r) {
    nlohmann::json j = {{"config", to_json(r.cfg)},
                        {"full_rank_fraction", r.full_rank_fraction}};
    if (std::isfinite(r.union_bound_log10))
        j["union_bound_log10"] = r.union_bound_log10;
    else
        j["union_bound_log10"] = "-inf";
    return j;
}

nlohmann::json to_json(const ColouringExperimentResult& r) {
    return {{"config", to_json(r.cfg)},
            {"center", r.center},
            {"in_band_fraction", r.in_band_fraction}};
}

nlohmann::json to_json(const SmallFlatExperimentResult& r) {
    return {{"config", to_json(r.cfg)}, {"violation_fraction", r.violation_fraction}};
}

nlohmann::json to_json(const CensusExperimentResult& r) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& t : r.per_trial)
        per.push_back({{"dense_count", t.dense_count},
                       {"surviving_rank_d", t.surviving_rank_d},
                       {"dense_size_count", t.dense_size_count}});
    return {{"config", to_json(r.cfg)},
            {"total_flats", r.total_flats.str()},
            {"half_total", r.half_total.str()},
            {"threshold", r.per_trial.empty() ? 0.0 : r.per_trial[0].threshold},
            {"trials_meeting_half_target", r.trials_meeting_half_target},
            {"survival_frequency", r.survival_frequency},
            {"per_trial", per}};
}

nlohmann::json to_json(const Claim1ExperimentResult& r) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& t : r.per_trial)
        per.push_back({{"dense_flats", t.dense_flats},
                       {"col_le_b", t.col_le_b},
                       {"edmonds_bound_failures", t.edmonds_bound_failures},
                       {"min_col", t.min_col}});
    return {{"config", to_json(r.cfg)},
            {"density_threshold", r.per_trial.empty() ? 0.0 : r.per_trial[0].density_threshold},
            {"all_dense_exceed_b", r.all_dense_exceed_b},
            {"per_trial", per}};
}

namespace {

std::string csv_header_rows(const TrialConfig&, const char* stat) {
    std::ostringstream os;
    os << "trial," << stat << ",in_band\n";
    return os.str();
}

}  // namespace

std::string to_csv(const SizeExperimentResult& r) {
    std::ostringstream os;
    os << csv_header_rows(r.cfg, "size");
    for (std::size_t t = 0; t < r.sizes.size(); ++t)
        os << t << ',' << r.sizes[t] << ',' << (r.in_band[t] ? 1 : 0) << '\n';
    return os.str();
}

std::string to_csv(const RankExperimentResult& r) {
    std::ostringstream os;
    os << "trial,rank,full_rank\n";
    for (std::size_t t = 0; t < r.ranks.size(); ++t)
        os << t << ',' << r.ranks[t] << ',' << (r.ranks[t] == r.cfg.n ? 1 : 0) << '\n';
    return os.str();
}

std::string to_csv(const ColouringExperimentResult& r) {
    std::ostringstream os;
    os << csv_header_rows(r.cfg, "colouring_number");
    for (std::size_t t = 0; t < r.cols.size(); ++t)
        os << t << ',' << r.cols[t] << ',' << (r.in_band[t] ? 1 : 0) << '\n';
    return os.str();
}

std::string to_csv(const CensusExperimentResult& r) {
    std::ostringstream os;
    os << "trial,dense_count,surviving_rank_d,dense_size_count,meets_half_target\n";
    for (std::size_t t = 0; t < r.per_trial.size(); ++t) {
        const auto& c = r.per_trial[t];
        os << t << ',' << c.dense_count << ',' << c.surviving_rank_d << ','
           << c.dense_size_count << ',' << (BigInt(c.dense_count) >= r.half_total ? 1 : 0) << '\n';
    }
    return os.str();
}

}  // namespace pgd

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "pgd/matroid.hpp"
#include "pgd/projgeom.hpp"

namespace pgd {

/// Counter-derived per-trial random stream (splitmix64).  Distinct trials
/// get statistically independent streams from the same master seed, so the
/// worker count can never change what a trial samples.
struct Rng {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

Rng trial_stream(std::uint64_t seed, std::uint64_t trial);

/// Builds GF(q) for a prime-power order.
Field field_from_order(int q);

/// Kelly-Oxley random restriction: each canonical point kept independently
/// with probability p.
std::vector<std::uint32_t> sample_pgp(const Geometry& geo, double p, Rng& rng);

double markov(double mu, double x);
double chernoff_upper(double mu, double delta);
double chernoff_lower(double mu, double delta);

struct TrialConfig {
    int n = 0;
    int q = 2;
    double p = 1.0;
    double delta = 0.1;
    int d = 0;
    int b = 1;
    double c = 1.0;
    int trials = 1;
    std::uint64_t seed = 0;
    int workers = 1;
};
nlohmann::json to_json(const TrialConfig& cfg);

// ---- Concentration experiments --------------------------------------------

struct SizeExperimentResult {
    TrialConfig cfg;
    double center = 0, halfwidth = 0;
    std::vector<long long> sizes;  // per trial
    std::vector<bool> in_band;
    double in_band_fraction = 0;
    double chernoff_up = 0, chernoff_lo = 0;
};
SizeExperimentResult run_size_experiment(const TrialConfig& cfg);

struct RankExperimentResult {
    TrialConfig cfg;
    std::vector<int> ranks;
    double full_rank_fraction = 0;
    double union_bound_log10 = 0;  // log10 of ((q^n-1)/(q-1)) (1-p)^(q^(n-1))
};
RankExperimentResult run_rank_experiment(const TrialConfig& cfg);

struct ColouringExperimentResult {
    TrialConfig cfg;
    double center = 0;
    std::vector<int> cols;
    std::vector<bool> in_band;
    double in_band_fraction = 0;
};
ColouringExperimentResult run_colouring_experiment(const TrialConfig& cfg);

// ---- Small-flat property (trace bound behind the colouring upper bound) ---

struct SmallFlatCheck {
    bool holds = true;
    std::uint64_t flats_checked = 0;
    std::optional<Flat> violating;  // first violating flat in enumeration order
    long long trace_size = 0;
    int trace_rank = 0;
};

/// True iff every flat F of the ambient geometry satisfies
/// |E cap F| <= (1+delta) p q^n / ((q-1)n) * r(E cap F).
SmallFlatCheck check_small_flat(const SubMatroid& m, double p, double delta);

struct SmallFlatExperimentResult {
    TrialConfig cfg;
    std::vector<bool> holds;
    double violation_fraction = 0;
};
SmallFlatExperimentResult run_small_flat_experiment(const TrialConfig& cfg);

// ---- Dense-flat census and the dense-colouring check -----------------------

struct CensusResult {
    std::uint64_t dense_count = 0;        // |Z_d|: dense and full local rank
    std::uint64_t surviving_rank_d = 0;   // trace rank = d
    std::uint64_t dense_size_count = 0;   // trace size >= threshold
    double threshold = 0;                 // (1/2) p (q^d-1)/(q-1)
};
CensusResult dense_flat_census(const SubMatroid& m, int d, double p);

struct CensusExperimentResult {
    TrialConfig cfg;
    BigInt total_flats;
    BigInt half_total;
    std::vector<CensusResult> per_trial;
    int trials_meeting_half_target = 0;  // dense_count >= half_total
    double survival_frequency = 0;     // dense_count summed / (flats * trials)
};
CensusExperimentResult run_census_experiment(const TrialConfig& cfg);

struct Claim1Result {
    std::uint64_t dense_flats = 0;
    std::uint64_t col_le_b = 0;             // dense flats with col(M|F) <= b
    std::uint64_t edmonds_bound_failures = 0;  // col < ceil(|trace|/d), never expected
    int min_col = 0;
    double density_threshold = 0;  // (1/2) p (q^d-1)/((q-1)d)
    bool threshold_exceeds_b = false;
};
Claim1Result claim1_check(const SubMatroid& m, int d, int b, double p);

struct Claim1ExperimentResult {
    TrialConfig cfg;
    std::vector<Claim1Result> per_trial;
    bool all_dense_exceed_b = true;
};
Claim1ExperimentResult run_claim1_experiment(const TrialConfig& cfg);

// ---- Serialization --------------------------------------------------------

nlohmann::json to_json(const SizeExperimentResult& r);
nlohmann::json to_json(const RankExperimentResult& r);
nlohmann::json to_json(const ColouringExperimentResult& r);
nlohmann::json to_json(const SmallFlatExperimentResult& r);
nlohmann::json to_json(const CensusExperimentResult& r);
nlohmann::json to_json(const Claim1ExperimentResult& r);

std::string to_csv(const SizeExperimentResult& r);
std::string to_csv(const RankExperimentResult& r);
std::string to_csv(const ColouringExperimentResult& r);
std::string to_csv(const CensusExperimentResult& r);

}  // namespace pgd

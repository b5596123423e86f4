#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pgd/projgeom.hpp"

namespace pgd {

/// Parameters of the density threshold.  The base of the iterated
/// logarithm in d = ceil(log log n) is configurable (natural log by
/// default).
struct ProofParams {
    int q = 2;
    double p = 1.0;
    int b = 1;
    double c = 1.0;
    double delta = 0.1;
    double log_base = 2.718281828459045;
};

int loglog_ceil(long long n, double log_base);

/// The three threshold conditions, evaluated at a given n with
/// d = ceil(log log n):
///   (a) d >= 3
///   (b) n * q^(-d^2) > c^2 (1+delta)^2 p^2 / (q-1)^2
///   (c) (1/2) p (q^d - 1) / ((q-1) d) > b
struct ThresholdConditions {
    int d = 0;
    bool d_ge_3 = false;
    bool flat_count = false;  // (b)
    bool density = false;     // (c)
    bool all() const { return d_ge_3 && flat_count && density; }
};
ThresholdConditions threshold_conditions(long long n, const ProofParams& pp);

/// Smallest n at which all three threshold conditions hold.
long long threshold_n0(const ProofParams& pp);

struct ChainStep {
    std::string name;
    std::string relation;  // "<" or "<="
    double lhs_log10 = 0, rhs_log10 = 0;
    std::string lhs, rhs;  // decimal scientific, 30 digits
    bool holds = false;
};

/// The dense-flat counting chain
///   l*C(ck,2)*C(q^n,d-2) < n(ck)^2/2 * q^(n(d-2))
///     <= c^2(1+delta)^2 p^2 / (2(q-1)^2 n) * q^(nd)
///     <= (1/2) q^(nd-d^2) <= (1/2) qbinom(n,d,q)
/// with k = (1+delta) p q^n / ((q-1)n), evaluated under both l-regimes:
/// l <= n (what the chain's second step implies) and l <= b*n (what the
/// transversal argument yields).  q-binomials are exact integers; the rest
/// is 100-digit floating point.
struct BoundChainReport {
    long long n = 0;
    ProofParams params;
    ThresholdConditions conds;
    std::string k;
    double k_log10 = 0;
    std::vector<ChainStep> steps_ell_n;   // l = n
    std::vector<ChainStep> steps_ell_bn;  // l = b*n
    bool power_lower_exact = false;      // q^(nd-d^2) <= qbinom(n,d,q), exact integers
};

BoundChainReport counting_bound_report(long long n, const ProofParams& pp);

nlohmann::json to_json(const BoundChainReport& r);

}  // namespace pgd

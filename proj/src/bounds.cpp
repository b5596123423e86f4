#include "pgd/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace pgd {

using BigFloat = boost::multiprecision::cpp_bin_float_100;

int loglog_ceil(long long n, double log_base) {
    if (n < 2) throw std::invalid_argument("log log n needs n >= 2");
    if (log_base <= 1) throw std::invalid_argument("log base must be > 1");
    double lb = std::log(log_base);
    double ll = std::log(std::log(static_cast<double>(n)) / lb) / lb;
    return static_cast<int>(std::ceil(ll));
}

ThresholdConditions threshold_conditions(long long n, const ProofParams& pp) {
    ThresholdConditions tc;
    tc.d = loglog_ceil(n, pp.log_base);
    tc.d_ge_3 = tc.d >= 3;
    // (b) as n > c^2 (1+delta)^2 p^2 / (q-1)^2 * q^(d^2)
    BigFloat rhs = BigFloat(pp.c) * pp.c * (1 + pp.delta) * (1 + pp.delta) * pp.p * pp.p /
                   ((pp.q - 1) * BigFloat(pp.q - 1));
    rhs *= pow(BigFloat(pp.q), tc.d * tc.d);
    tc.flat_count = BigFloat(n) > rhs;
    // (c)
    BigFloat density = BigFloat(pp.p) / 2 * BigFloat(flat_size(tc.d, pp.q)) / tc.d;
    tc.density = density > pp.b;
    return tc;
}

long long threshold_n0(const ProofParams& pp) {
    if (pp.q < 2 || pp.p <= 0 || pp.p > 1 || pp.b < 1 || pp.c < 1 || pp.delta <= 0)
        throw std::invalid_argument("threshold_n0: parameters out of range");
    const double lb = std::log(pp.log_base);
    // Walk the d-plateaus: within fixed d = ceil(log log n), condition (b)
    // is monotone in n and (c) is constant, so the first admissible n is
    // either the plateau's left edge or where (b) starts to hold.
    for (int d = 3; d <= 64; ++d) {
        // left edge: smallest n with log log n > d - 1
        double edge = std::exp(std::exp((d - 1) * lb) * lb);
        if (!std::isfinite(edge) || edge > 4.0e18)
            throw std::range_error("threshold_n0 exceeds the representable range");
        long long n_min = static_cast<long long>(std::floor(edge)) + 1;
        while (n_min > 2 && loglog_ceil(n_min - 1, pp.log_base) >= d) --n_min;
        while (loglog_ceil(n_min, pp.log_base) < d) ++n_min;

        ThresholdConditions at_min = threshold_conditions(n_min, pp);
        if (!at_min.density) continue;  // (c) fails for this whole plateau
        if (at_min.all()) return n_min;

        // (b) fails at the edge: jump to the first n past the bound, if it
        // still lies on this plateau
        BigFloat bound = BigFloat(pp.c) * pp.c * (1 + pp.delta) * (1 + pp.delta) * pp.p * pp.p /
                         ((pp.q - 1) * BigFloat(pp.q - 1)) * pow(BigFloat(pp.q), d * d);
        BigFloat cand_f = floor(bound) + 1;
        if (cand_f > BigFloat(4.0e18))
            throw std::range_error("threshold_n0 exceeds the representable range");
        long long cand = static_cast<long long>(cand_f.convert_to<double>());
        while (BigFloat(cand) <= bound) ++cand;
        if (loglog_ceil(cand, pp.log_base) == d && threshold_conditions(cand, pp).all())
            return cand;
    }
    throw std::range_error("threshold_n0 not found");
}

namespace {

BigInt big_binomial(const BigInt& n, int m) {
    if (m < 0) return 0;
    BigInt r = 1;
    for (int i = 0; i < m; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

std::string fstr(const BigFloat& x) { return x.str(30, std::ios_base::scientific); }

double flog10(const BigFloat& x) {
    if (x <= 0) return -std::numeric_limits<double>::infinity();
    return log10(x).convert_to<double>();
}

ChainStep make_step(std::string name, const BigFloat& lhs, const BigFloat& rhs, bool strict) {
    ChainStep s;
    s.name = std::move(name);
    s.relation = strict ? "<" : "<=";
    s.lhs = fstr(lhs);
    s.rhs = fstr(rhs);
    s.lhs_log10 = flog10(lhs);
    s.rhs_log10 = flog10(rhs);
    // the second chain step is an analytic equality, so the non-strict
    // comparison gets a sliver of relative slack against rounding in the
    // 100-digit evaluation
    s.holds = strict ? lhs < rhs : lhs <= rhs * (1 + BigFloat("1e-60"));
    return s;
}

}  // namespace

BoundChainReport counting_bound_report(long long n, const ProofParams& pp) {
    BoundChainReport rep;
    rep.n = n;
    rep.params = pp;
    rep.conds = threshold_conditions(n, pp);
    const int d = rep.conds.d;
    const int q = pp.q;
    if (d > n) throw std::invalid_argument("d = ceil(log log n) exceeds n");

    BigFloat qn = pow(BigFloat(q), static_cast<unsigned>(n));
    BigFloat k = (1 + pp.delta) * pp.p * qn / ((q - 1) * BigFloat(n));
    rep.k = fstr(k);
    rep.k_log10 = flog10(k);
    BigFloat ck = pp.c * k;
    BigFloat choose_ck_2 = ck * (ck - 1) / 2;

    const int m = d - 2;  // elements needed to complete a spanning set
    BigInt qn_int = pow(BigInt(q), static_cast<unsigned>(n));
    BigFloat binom_qn = BigFloat(big_binomial(qn_int, m));

    BigFloat q_n_m = m >= 0 ? pow(BigFloat(q), static_cast<unsigned>(n) * m) : BigFloat(0);
    BigFloat term2 = BigFloat(n) * ck * ck / 2 * q_n_m;
    BigFloat term3 = BigFloat(pp.c) * pp.c * (1 + pp.delta) * (1 + pp.delta) * pp.p * pp.p /
                     (2 * (q - 1) * BigFloat(q - 1) * n) * pow(BigFloat(q), static_cast<unsigned>(n) * d);
    BigFloat term4 = pow(BigFloat(q), static_cast<unsigned>(n) * d - d * d) / 2;
    BigInt qb = qbinom(static_cast<int>(n), d, q);
    BigFloat term5 = BigFloat(qb) / 2;

    auto chain = [&](BigFloat ell) {
        BigFloat term1 = ell * choose_ck_2 * binom_qn;
        std::vector<ChainStep> steps;
        steps.push_back(make_step("l*C(ck,2)*C(q^n,d-2) < n*(ck)^2/2*q^(n(d-2))", term1, term2, true));
        steps.push_back(make_step("n*(ck)^2/2*q^(n(d-2)) <= c^2(1+delta)^2p^2/(2(q-1)^2 n)*q^(nd)",
                                  term2, term3, false));
        steps.push_back(make_step("c^2(1+delta)^2p^2/(2(q-1)^2 n)*q^(nd) <= (1/2)q^(nd-d^2)", term3,
                                  term4, false));
        steps.push_back(make_step("(1/2)q^(nd-d^2) <= (1/2)qbinom(n,d,q)", term4, term5, false));
        return steps;
    };
    rep.steps_ell_n = chain(BigFloat(n));
    rep.steps_ell_bn = chain(BigFloat(pp.b) * n);

    // exact integer form of the final step
    rep.power_lower_exact =
        pow(BigInt(q), static_cast<unsigned>(n) * d - d * d) <= qb;
    return rep;
}

nlohmann::json to_json(const BoundChainReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["d"] = r.conds.d;
    j["params"] = {{"q", r.params.q},     {"p", r.params.p},
                   {"b", r.params.b},     {"c", r.params.c},
                   {"delta", r.params.delta}, {"log_base", r.params.log_base}};
    j["threshold_conditions"] = {{"d_ge_3", r.conds.d_ge_3},
                                 {"flat_count", r.conds.flat_count},
                                 {"density", r.conds.density}};
    j["k"] = r.k;
    j["k_log10"] = r.k_log10;
    auto steps = [](const std::vector<ChainStep>& ss) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& s : ss)
            a.push_back({{"step", s.name},
                         {"relation", s.relation},
                         {"lhs", s.lhs},
                         {"rhs", s.rhs},
                         {"lhs_log10", s.lhs_log10},
                         {"rhs_log10", s.rhs_log10},
                         {"holds", s.holds}});
        return a;
    };
    // The chain's first step implicitly assumes l <= n while the transversal
    // argument only gives l <= b*n; both regimes are reported.
    j["chain_ell_le_n"] = steps(r.steps_ell_n);
    j["chain_ell_le_bn"] = steps(r.steps_ell_bn);
    j["power_lower_exact"] = r.power_lower_exact;
    return j;
}

}  // namespace pgd

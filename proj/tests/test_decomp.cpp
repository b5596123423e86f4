#include <doctest.h>

#include <algorithm>

#include "pgd/bounds.hpp"
#include "pgd/decomp.hpp"
#include "pgd/randmodel.hpp"

using namespace pgd;

namespace {

SubMatroid full(const Geometry& g) {
    std::vector<std::uint32_t> all(g.num_points());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    return restrict(g, all);
}

}  // namespace

TEST_CASE("violating transversal on a rainbow line") {
    // three singleton classes on one line: any transversal has 3 points of
    // rank 2, so b = 1 must fail and b = 2 must hold
    Geometry fano(3, field_from_order(2));
    SubMatroid m = full(fano);
    std::vector<std::vector<std::uint32_t>> classes{{0}, {1}, {2}};  // 001,010,011

    auto r1 = find_violating_partial_transversal(m, classes, 1, 1'000'000);
    CHECK(r1.status == SearchStatus::Found);
    CHECK(r1.witness.size() > 1 * rank(m, r1.witness));

    auto r2 = find_violating_partial_transversal(m, classes, 2, 1'000'000);
    CHECK(r2.status == SearchStatus::NoneExists);
}

TEST_CASE("reduction agrees with the literal transversal oracle") {
    Geometry g(4, field_from_order(2));
    SubMatroid m = full(g);
    Rng rng = trial_stream(101, 0);
    std::vector<std::uint32_t> perm(g.num_points());
    for (std::uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;
    for (int it = 0; it < 100; ++it) {
        for (std::size_t i = perm.size() - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.next() % (i + 1)]);
        int ell = 2 + static_cast<int>(rng.next() % 5);  // 2..6 classes
        std::vector<std::vector<std::uint32_t>> classes(ell);
        std::size_t pos = 0;
        for (int c = 0; c < ell; ++c) {
            // cap so every remaining class still gets at least one point
            int room = static_cast<int>(perm.size() - pos) - (ell - 1 - c);
            int sz = std::min(1 + static_cast<int>(rng.next() % 3), room);
            while (sz-- > 0) classes[c].push_back(perm[pos++]);
        }
        for (int b : {1, 2}) {
            bool ok_naive = naive_transversal_oracle(m, classes, b);
            auto r = find_violating_partial_transversal(m, classes, b, 10'000'000);
            REQUIRE(r.status != SearchStatus::BudgetExhausted);
            CHECK(ok_naive == (r.status == SearchStatus::NoneExists));
        }
    }
}

TEST_CASE("Fano singleton decomposition fails b=2") {
    Geometry fano(3, field_from_order(2));
    SubMatroid m = full(fano);
    std::vector<std::vector<std::uint32_t>> singletons;
    for (std::uint32_t i = 0; i < 7; ++i) singletons.push_back({i});

    Verdict v = verify_decomposition(m, singletons, 2, 1.0);
    CHECK(v.kind == Verdict::Kind::TransversalViolation);
    CHECK(v.witness.size() == 7);  // the unique transversal is the whole plane
    CHECK(v.k == 3);
}

TEST_CASE("size cap violations are caught") {
    Geometry fano(3, field_from_order(2));
    SubMatroid m = full(fano);
    // col(Fano) = 3, so c = 1 caps classes at 3; one class of 4 breaks it
    std::vector<std::vector<std::uint32_t>> classes{{0, 1, 2, 3}, {4, 5, 6}};
    Verdict v = verify_decomposition(m, classes, 3, 1.0);
    CHECK(v.kind == Verdict::Kind::SizeViolation);
    CHECK(v.class_index == 0);
}

TEST_CASE("search finds a Fano decomposition for b=1, c=2") {
    Geometry fano(3, field_from_order(2));
    SubMatroid m = full(fano);
    auto res = search_decomposition(m, 1, 2.0);
    REQUIRE(res.status == SearchStatus::Found);
    Verdict v = verify_decomposition(m, res.classes, 1, 2.0);
    CHECK(v.kind == Verdict::Kind::Valid);
}

TEST_CASE("search proves nonexistence") {
    // a single line with b=1, c=1/3: classes capped at floor(c*k) = 0 is
    // impossible, so cap at 1 via c=0.5 and k=2: three singletons, and any
    // transversal of all three has rank 2 < 3
    Geometry fano(3, field_from_order(2));
    SubMatroid line = restrict(fano, std::vector<std::uint32_t>{0, 1, 2});
    auto res = search_decomposition(line, 1, 0.5);
    CHECK(res.status == SearchStatus::NoneExists);
}

TEST_CASE("budget exhaustion is reported distinctly") {
    Geometry g(4, field_from_order(2));
    auto res = search_decomposition(full(g), 1, 1.0, 3);
    CHECK(res.status == SearchStatus::BudgetExhausted);
}

TEST_CASE("decomposition JSON round trip") {
    Geometry fano(3, field_from_order(2));
    SubMatroid m = full(fano);
    std::vector<std::vector<std::uint32_t>> classes{{0, 1, 4}, {2, 3, 5}, {6}};
    nlohmann::json j = decomposition_to_json(m, classes, 2, 1.5);
    DecompFile f = decomposition_from_json(j);
    CHECK(f.n == 3);
    CHECK(f.q == 2);
    CHECK(f.b == 2);
    CHECK(f.c == 1.5);
    CHECK(f.ground == m.ground);
    CHECK(f.classes == classes);
}

// ---- proof-inequality machinery -------------------------------------------

TEST_CASE("loglog_ceil") {
    CHECK(loglog_ceil(16, 2.0) == 2);    // log2 log2 16 = 2
    CHECK(loglog_ceil(65536, 2.0) == 4);
    CHECK(loglog_ceil(1618, 2.718281828459045) == 2);
    CHECK(loglog_ceil(1619, 2.718281828459045) == 3);
    CHECK_THROWS(loglog_ceil(1, 2.0));
    CHECK_THROWS(loglog_ceil(100, 1.0));
}

TEST_CASE("threshold_n0 agrees with a direct scan") {
    ProofParams pp;  // q=2, p=1, b=1, c=1, delta=0.1, natural log
    long long n0 = threshold_n0(pp);
    CHECK(n0 == 1619);
    CHECK(threshold_conditions(n0, pp).all());
    for (long long n = 3; n < n0; ++n) CHECK(!threshold_conditions(n, pp).all());
}

TEST_CASE("threshold_n0 with a flat-count-limited plateau") {
    // larger c pushes condition (b) past the d=3 plateau edge
    ProofParams pp;
    pp.c = 40;
    long long n0 = threshold_n0(pp);
    CHECK(threshold_conditions(n0, pp).all());
    CHECK(!threshold_conditions(n0 - 1, pp).all());
}

TEST_CASE("threshold_n0 rejects bad parameters") {
    ProofParams pp;
    pp.p = 0;
    CHECK_THROWS(threshold_n0(pp));
}

TEST_CASE("counting chain report") {
    ProofParams pp;
    long long n0 = threshold_n0(pp);
    auto rep = counting_bound_report(n0, pp);
    CHECK(rep.conds.d == 3);
    REQUIRE(rep.steps_ell_n.size() == 4);
    REQUIRE(rep.steps_ell_bn.size() == 4);
    for (const auto& s : rep.steps_ell_n) CHECK(s.holds);
    CHECK(rep.power_lower_exact);
    nlohmann::json j = to_json(rep);
    CHECK(j.contains("chain_ell_le_n"));
    CHECK(j.contains("chain_ell_le_bn"));
}

TEST_CASE("exact power lower bound for the q-binomial") {
    for (int q : {2, 3})
        for (int n = 1; n <= 30; ++n)
            for (int d = 1; d <= std::min(n, 5); ++d)
                CHECK(pow(BigInt(q), n * d - d * d) <= qbinom(n, d, q));
}

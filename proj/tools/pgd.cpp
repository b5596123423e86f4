// pgd: batch front-end for exact projective-geometry matroid computations
// and the random-restriction experiments.
//
// Exit codes: 0 = success / property holds, 1 = property violated,
// 2 = usage error, guard violation, or inconclusive (budget exhausted).

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgd/bounds.hpp"
#include "pgd/colouring.hpp"
#include "pgd/decomp.hpp"
#include "pgd/guards.hpp"
#include "pgd/matroid.hpp"
#include "pgd/randmodel.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

json envelope(const std::string& command, const json& params) {
    return {{"tool", "pgd"}, {"version", kVersion}, {"command", command}, {"params", params}};
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream os(out_path);
        os << j.dump(2) << '\n';
    }
}

void emit_text(const std::string& s, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << s;
    } else {
        std::ofstream os(out_path);
        os << s;
    }
}

pgd::SubMatroid load_matroid(const std::string& path, std::optional<pgd::Geometry>& geo) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    pgd::MatroidFile f = pgd::read_matroid(is);
    geo.emplace(f.n, pgd::field_from_order(f.q));
    return pgd::restrict(*geo, f.points);
}

json witness_json(const pgd::Colouring& col) {
    json classes = json::array();
    for (const auto& cl : col.classes) classes.push_back(cl);
    return classes;
}

struct ExperimentFlags {
    std::string out, csv, plot;
};

void add_output_flags(CLI::App* cmd, ExperimentFlags& f) {
    cmd->add_option("--out", f.out, "write the JSON summary here instead of stdout");
    cmd->add_option("--csv", f.csv, "also write the per-trial CSV table here");
    cmd->add_option("--plot-data", f.plot, "write a two-column trial,statistic CSV here");
}

void write_plot(const std::string& path, const std::vector<long long>& stats) {
    std::ostringstream os;
    os << "trial,statistic\n";
    for (std::size_t t = 0; t < stats.size(); ++t) os << t << ',' << stats[t] << '\n';
    emit_text(os.str(), path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations and random-restriction experiments on PG(n-1,q)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    pgd::TrialConfig cfg;
    std::uint64_t budget = 50'000'000;
    double log_base = 2.718281828459045;
    std::string in_path, out_path;
    bool full_geometry = false;
    bool list_flats = false;
    double mu = 0, x = 0;
    ExperimentFlags flags;
    long long chain_n = 0;

    auto* c_points = app.add_subcommand("points", "list the canonical points of PG(n-1,q)");
    c_points->add_option("--n", cfg.n)->required();
    c_points->add_option("--q", cfg.q)->required();

    auto* c_flats = app.add_subcommand("flats", "count (or list) the rank-d flats of PG(n-1,q)");
    c_flats->add_option("--n", cfg.n)->required();
    c_flats->add_option("--q", cfg.q)->required();
    c_flats->add_option("--d", cfg.d)->required();
    c_flats->add_flag("--list", list_flats, "print each flat's RREF basis");

    auto* c_qbinom = app.add_subcommand("qbinom", "exact q-binomial coefficient");
    c_qbinom->add_option("--n", cfg.n)->required();
    c_qbinom->add_option("--d", cfg.d)->required();
    c_qbinom->add_option("--q", cfg.q)->required();

    auto* c_colour = app.add_subcommand("colour", "colouring number with witness partition");
    c_colour->add_option("--n", cfg.n);
    c_colour->add_option("--q", cfg.q);
    c_colour->add_flag("--full", full_geometry, "colour the full geometry PG(n-1,q)");
    c_colour->add_option("--in", in_path, "matroid text file (\"n q\" header, one index per line)");
    c_colour->add_option("--out", out_path);

    auto* c_sample = app.add_subcommand("sample", "sample PG_p(n-1,q) as a matroid text file");
    c_sample->add_option("--n", cfg.n)->required();
    c_sample->add_option("--q", cfg.q)->required();
    c_sample->add_option("--p", cfg.p)->required();
    c_sample->add_option("--seed", cfg.seed)->required();
    c_sample->add_option("--trial", cfg.trials)->default_val(0);
    c_sample->add_option("--out", out_path);

    auto* c_census = app.add_subcommand("census", "dense-flat census over rank-d flats");
    c_census->add_option("--n", cfg.n)->required();
    c_census->add_option("--q", cfg.q)->required();
    c_census->add_option("--d", cfg.d)->required();
    c_census->add_option("--p", cfg.p)->required();
    c_census->add_option("--trials", cfg.trials)->required();
    c_census->add_option("--seed", cfg.seed)->required();
    c_census->add_option("--workers", cfg.workers)->default_val(1);
    add_output_flags(c_census, flags);

    auto* c_verify = app.add_subcommand("verify-decomp", "verify a (b,c)-decomposition");
    c_verify->add_option("--in", in_path)->required();
    c_verify->add_option("--b", cfg.b, "override b from the file");
    c_verify->add_option("--c", cfg.c, "override c from the file");
    c_verify->add_option("--budget", budget);
    c_verify->add_option("--out", out_path);

    auto* c_search = app.add_subcommand("search-decomp", "search for a (b,c)-decomposition");
    c_search->add_option("--n", cfg.n);
    c_search->add_option("--q", cfg.q);
    c_search->add_flag("--full", full_geometry);
    c_search->add_option("--in", in_path, "matroid text file");
    c_search->add_option("--b", cfg.b)->required();
    c_search->add_option("--c", cfg.c)->required();
    c_search->add_option("--budget", budget);
    c_search->add_option("--out", out_path);

    auto add_lemma = [&](const char* name, const char* desc, bool with_delta) {
        auto* c = app.add_subcommand(name, desc);
        c->add_option("--n", cfg.n)->required();
        c->add_option("--q", cfg.q)->required();
        c->add_option("--p", cfg.p)->required();
        if (with_delta) c->add_option("--delta", cfg.delta)->required();
        c->add_option("--trials", cfg.trials)->required();
        c->add_option("--seed", cfg.seed)->required();
        c->add_option("--workers", cfg.workers)->default_val(1);
        add_output_flags(c, flags);
        return c;
    };
    auto* c_lsize = add_lemma("lemma-size", "ground-set size concentration experiment", true);
    auto* c_lrank = add_lemma("lemma-rank", "full-rank experiment with union bound", false);
    auto* c_lcol = add_lemma("lemma-colouring", "colouring-number concentration experiment", true);
    auto* c_sflat = add_lemma("small-flat", "per-flat trace bound check over all flats", true);

    auto* c_claim1 = app.add_subcommand("claim1", "dense flats must exceed colourability b");
    c_claim1->add_option("--n", cfg.n)->required();
    c_claim1->add_option("--q", cfg.q)->required();
    c_claim1->add_option("--d", cfg.d)->required();
    c_claim1->add_option("--p", cfg.p)->required();
    c_claim1->add_option("--b", cfg.b)->required();
    c_claim1->add_option("--trials", cfg.trials)->required();
    c_claim1->add_option("--seed", cfg.seed)->required();
    c_claim1->add_option("--workers", cfg.workers)->default_val(1);
    add_output_flags(c_claim1, flags);

    auto* c_thresh = app.add_subcommand("threshold", "smallest n satisfying the proof's n0 conditions");
    c_thresh->add_option("--q", cfg.q)->required();
    c_thresh->add_option("--p", cfg.p)->required();
    c_thresh->add_option("--b", cfg.b)->required();
    c_thresh->add_option("--c", cfg.c)->required();
    c_thresh->add_option("--delta", cfg.delta)->required();
    c_thresh->add_option("--log-base", log_base, "base of the iterated logarithm (default e)");

    auto* c_chain = app.add_subcommand("bound-chain", "counting-chain report at a given n");
    c_chain->add_option("--n", chain_n, "defaults to threshold n0");
    c_chain->add_option("--q", cfg.q)->required();
    c_chain->add_option("--p", cfg.p)->required();
    c_chain->add_option("--b", cfg.b)->required();
    c_chain->add_option("--c", cfg.c)->required();
    c_chain->add_option("--delta", cfg.delta)->required();
    c_chain->add_option("--log-base", log_base);
    c_chain->add_option("--out", out_path);

    auto* c_bounds = app.add_subcommand("bounds", "Markov and Chernoff bound values");
    c_bounds->add_option("--mu", mu)->required();
    c_bounds->add_option("--x", x, "Markov threshold");
    c_bounds->add_option("--delta", cfg.delta, "Chernoff deviation")->default_val(0.0);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_points->parsed()) {
            pgd::Geometry geo(cfg.n, pgd::field_from_order(cfg.q));
            for (const auto& pt : geo.points()) {
                std::cout << pt.index << ':';
                for (auto c : pt.coords) std::cout << ' ' << c;
                std::cout << '\n';
            }
            return 0;
        }
        if (c_flats->parsed()) {
            pgd::BigInt count = pgd::qbinom(cfg.n, cfg.d, cfg.q);
            if (list_flats) {
                if (count > pgd::BigInt(pgd::max_enum_flats()))
                    throw std::invalid_argument("too many flats to list (PGD_MAX_ENUM_FLATS)");
                pgd::for_each_flat(cfg.n, cfg.q, cfg.d, [&](const pgd::Flat& f) {
                    for (int i = 0; i < f.d; ++i) {
                        if (i) std::cout << " | ";
                        for (int j = 0; j < cfg.n; ++j) std::cout << f.rows[i][j];
                    }
                    std::cout << '\n';
                });
            }
            std::cout << count << '\n';
            return 0;
        }
        if (c_qbinom->parsed()) {
            std::cout << pgd::qbinom(cfg.n, cfg.d, cfg.q) << '\n';
            return 0;
        }
        if (c_colour->parsed()) {
            std::optional<pgd::Geometry> geo;
            pgd::SubMatroid m;
            if (!in_path.empty()) {
                m = load_matroid(in_path, geo);
            } else if (full_geometry) {
                geo.emplace(cfg.n, pgd::field_from_order(cfg.q));
                std::vector<std::uint32_t> all(geo->num_points());
                for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
                m = pgd::restrict(*geo, all);
            } else {
                throw CLI::ValidationError("colour", "need --full or --in");
            }
            auto res = pgd::colouring_number(m);
            json j = envelope("colour", {{"n", geo->n()}, {"q", geo->q()}});
            j["k"] = res.k;
            j["witness"] = witness_json(res.witness);
            std::cout << "k=" << res.k << '\n';
            emit(j, out_path);
            return 0;
        }
        if (c_sample->parsed()) {
            pgd::Geometry geo(cfg.n, pgd::field_from_order(cfg.q));
            pgd::Rng rng = pgd::trial_stream(cfg.seed, static_cast<std::uint64_t>(cfg.trials));
            auto pts = pgd::sample_pgp(geo, cfg.p, rng);
            std::ostringstream os;
            pgd::write_matroid(os, pgd::restrict(geo, pts));
            emit_text(os.str(), out_path);
            return 0;
        }
        if (c_census->parsed()) {
            auto res = pgd::run_census_experiment(cfg);
            json j = envelope("census", to_json(cfg));
            j["result"] = to_json(res);
            emit(j, flags.out);
            if (!flags.csv.empty()) emit_text(to_csv(res), flags.csv);
            if (!flags.plot.empty()) {
                std::vector<long long> stats;
                for (const auto& t : res.per_trial) stats.push_back(static_cast<long long>(t.dense_count));
                write_plot(flags.plot, stats);
            }
            return 0;
        }
        if (c_verify->parsed()) {
            std::ifstream is(in_path);
            if (!is) throw std::runtime_error("cannot open " + in_path);
            pgd::DecompFile f = pgd::decomposition_from_json(json::parse(is));
            if (c_verify->count("--b")) f.b = cfg.b;
            if (c_verify->count("--c")) f.c = cfg.c;
            pgd::Geometry geo(f.n, pgd::field_from_order(f.q));
            pgd::SubMatroid m = pgd::restrict(geo, f.ground);
            pgd::Verdict v = pgd::verify_decomposition(m, f.classes, f.b, f.c, budget);
            json j = envelope("verify-decomp",
                              {{"in", in_path}, {"b", f.b}, {"c", f.c}, {"budget", budget}});
            j["k"] = v.k;
            switch (v.kind) {
                case pgd::Verdict::Kind::Valid:
                    j["outcome"] = "valid";
                    emit(j, out_path);
                    return 0;
                case pgd::Verdict::Kind::SizeViolation:
                    j["outcome"] = "size_violation";
                    j["class_index"] = v.class_index;
                    emit(j, out_path);
                    return 1;
                case pgd::Verdict::Kind::TransversalViolation:
                    j["outcome"] = "transversal_violation";
                    j["witness"] = v.witness;
                    emit(j, out_path);
                    return 1;
                case pgd::Verdict::Kind::BudgetExhausted:
                    j["outcome"] = "budget_exhausted";
                    emit(j, out_path);
                    return 2;
            }
        }
        if (c_search->parsed()) {
            std::optional<pgd::Geometry> geo;
            pgd::SubMatroid m;
            if (!in_path.empty()) {
                m = load_matroid(in_path, geo);
            } else if (full_geometry) {
                geo.emplace(cfg.n, pgd::field_from_order(cfg.q));
                std::vector<std::uint32_t> all(geo->num_points());
                for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
                m = pgd::restrict(*geo, all);
            } else {
                throw CLI::ValidationError("search-decomp", "need --full or --in");
            }
            auto res = pgd::search_decomposition(m, cfg.b, cfg.c, budget);
            json j = envelope("search-decomp", {{"b", cfg.b}, {"c", cfg.c}, {"budget", budget}});
            if (res.status == pgd::SearchStatus::Found) {
                j["outcome"] = "found";
                j["decomposition"] = pgd::decomposition_to_json(m, res.classes, cfg.b, cfg.c);
                emit(j, out_path);
                return 0;
            }
            j["outcome"] = res.status == pgd::SearchStatus::NoneExists ? "none_exists"
                                                                       : "budget_exhausted";
            emit(j, out_path);
            return res.status == pgd::SearchStatus::NoneExists ? 1 : 2;
        }
        if (c_lsize->parsed()) {
            auto res = pgd::run_size_experiment(cfg);
            json j = envelope("lemma-size", to_json(cfg));
            j["result"] = to_json(res);
            emit(j, flags.out);
            if (!flags.csv.empty()) emit_text(to_csv(res), flags.csv);
            if (!flags.plot.empty()) write_plot(flags.plot, res.sizes);
            return 0;
        }
        if (c_lrank->parsed()) {
            auto res = pgd::run_rank_experiment(cfg);
            json j = envelope("lemma-rank", to_json(cfg));
            j["result"] = to_json(res);
            emit(j, flags.out);
            if (!flags.csv.empty()) emit_text(to_csv(res), flags.csv);
            if (!flags.plot.empty()) {
                std::vector<long long> stats(res.ranks.begin(), res.ranks.end());
                write_plot(flags.plot, stats);
            }
            return 0;
        }
        if (c_lcol->parsed()) {
            auto res = pgd::run_colouring_experiment(cfg);
            json j = envelope("lemma-colouring", to_json(cfg));
            j["result"] = to_json(res);
            emit(j, flags.out);
            if (!flags.csv.empty()) emit_text(to_csv(res), flags.csv);
            if (!flags.plot.empty()) {
                std::vector<long long> stats(res.cols.begin(), res.cols.end());
                write_plot(flags.plot, stats);
            }
            return 0;
        }
        if (c_sflat->parsed()) {
            auto res = pgd::run_small_flat_experiment(cfg);
            json j = envelope("small-flat", to_json(cfg));
            j["result"] = to_json(res);
            emit(j, flags.out);
            return res.violation_fraction > 0 ? 1 : 0;
        }
        if (c_claim1->parsed()) {
            auto res = pgd::run_claim1_experiment(cfg);
            json j = envelope("claim1", to_json(cfg));
            j["result"] = to_json(res);
            emit(j, flags.out);
            bool threshold_applies =
                !res.per_trial.empty() && res.per_trial[0].threshold_exceeds_b;
            return threshold_applies && !res.all_dense_exceed_b ? 1 : 0;
        }
        if (c_thresh->parsed()) {
            pgd::ProofParams pp{cfg.q, cfg.p, cfg.b, cfg.c, cfg.delta, log_base};
            std::cout << pgd::threshold_n0(pp) << '\n';
            return 0;
        }
        if (c_chain->parsed()) {
            pgd::ProofParams pp{cfg.q, cfg.p, cfg.b, cfg.c, cfg.delta, log_base};
            long long n = chain_n > 0 ? chain_n : pgd::threshold_n0(pp);
            auto rep = pgd::counting_bound_report(n, pp);
            json j = envelope("bound-chain", {{"n", n},
                                              {"q", cfg.q},
                                              {"p", cfg.p},
                                              {"b", cfg.b},
                                              {"c", cfg.c},
                                              {"delta", cfg.delta},
                                              {"log_base", log_base}});
            j["report"] = to_json(rep);
            emit(j, out_path);
            return 0;
        }
        if (c_bounds->parsed()) {
            json j = envelope("bounds", {{"mu", mu}, {"x", x}, {"delta", cfg.delta}});
            if (x > 0) j["markov"] = pgd::markov(mu, x);
            j["chernoff_upper"] = pgd::chernoff_upper(mu, cfg.delta);
            j["chernoff_lower"] = pgd::chernoff_lower(mu, cfg.delta);
            emit(j, out_path);
            return 0;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    }
    return 2;
}

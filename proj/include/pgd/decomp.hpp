#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "pgd/colouring.hpp"
#include "pgd/matroid.hpp"

namespace pgd {

enum class SearchStatus { Found, NoneExists, BudgetExhausted };

struct TransversalSearchResult {
    SearchStatus status = SearchStatus::NoneExists;
    std::vector<std::uint32_t> witness;  // partial transversal X with |X| > b*r(X)
    std::uint64_t nodes = 0;
};

/// Branch-and-bound search for a partial transversal X (at most one element
/// per class) with |X| > b*r(X).  Such an X exists iff some full transversal
/// fails b-colourability.  A NoneExists result is conclusive; exceeding the
/// node budget is reported distinctly.
TransversalSearchResult find_violating_partial_transversal(
    const SubMatroid& m, const std::vector<std::vector<std::uint32_t>>& classes, int b,
    std::uint64_t budget);

struct Verdict {
    enum class Kind { Valid, SizeViolation, TransversalViolation, BudgetExhausted };
    Kind kind = Kind::Valid;
    int class_index = -1;                // SizeViolation
    std::vector<std::uint32_t> witness;  // TransversalViolation
    int k = 0;                           // colouring number used for the size cap
    std::uint64_t nodes = 0;
};

/// Checks a claimed (b,c)-decomposition: class sizes against c*k with k the
/// true colouring number, then the transversal condition via the violation
/// search.
Verdict verify_decomposition(const SubMatroid& m,
                             const std::vector<std::vector<std::uint32_t>>& classes, int b,
                             double c, std::uint64_t budget = 50'000'000);

/// Literal decomposition semantics: every full transversal is b-colourable.
/// Guarded by the product of class sizes; exists to certify the
/// partial-transversal reduction.
bool naive_transversal_oracle(const SubMatroid& m,
                              const std::vector<std::vector<std::uint32_t>>& classes, int b);

struct DecompSearchResult {
    SearchStatus status = SearchStatus::NoneExists;
    std::vector<std::vector<std::uint32_t>> classes;
    int k = 0;
    std::uint64_t nodes = 0;
};

/// Backtracking search for a (b,c)-decomposition over class assignments in
/// fixed element order, pruning with the violation search.  Small instances
/// only.
DecompSearchResult search_decomposition(const SubMatroid& m, int b, double c,
                                        std::uint64_t budget = 50'000'000);

/// Decomposition interchange JSON: {n, q, ground, classes, b, c}.
nlohmann::json decomposition_to_json(const SubMatroid& m,
                                     const std::vector<std::vector<std::uint32_t>>& classes,
                                     int b, double c);

struct DecompFile {
    int n = 0, q = 0, b = 1;
    double c = 1;
    std::vector<std::uint32_t> ground;
    std::vector<std::vector<std::uint32_t>> classes;
};
DecompFile decomposition_from_json(const nlohmann::json& j);

}  // namespace pgd

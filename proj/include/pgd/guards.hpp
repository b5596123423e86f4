#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

namespace pgd {

// Resource guards for exhaustive enumeration.  Each limit can be overridden
// through an environment variable of the same name; the defaults apply when
// the variable is unset.
inline std::uint64_t guard_limit(const char* env_name, std::uint64_t def) {
    if (const char* v = std::getenv(env_name)) {
        char* end = nullptr;
        unsigned long long parsed = std::strtoull(v, &end, 10);
        if (end != v && parsed > 0) return parsed;
    }
    return def;
}

inline std::uint64_t max_field_order() { return guard_limit("PGD_MAX_FIELD_ORDER", 1u << 16); }
inline std::uint64_t max_enum_flats() { return guard_limit("PGD_MAX_ENUM_FLATS", 1u << 22); }
inline std::uint64_t max_census_flats() { return guard_limit("PGD_MAX_CENSUS_FLATS", 1u << 24); }
inline std::uint64_t max_naive_product() { return guard_limit("PGD_MAX_NAIVE_PRODUCT", 1000000); }
inline std::uint64_t max_colouring_points() { return guard_limit("PGD_MAX_COLOURING_POINTS", 5000); }
inline std::uint64_t max_search_ground() { return guard_limit("PGD_MAX_SEARCH_GROUND", 24); }

}  // namespace pgd

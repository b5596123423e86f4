#pragma once

#include <cstdint>
#include <vector>

namespace pgd {

/// Arithmetic in GF(q), q = p^e.  Elements are the integers 0..q-1, read as
/// polynomial coefficient vectors base p (constant term = least significant
/// digit).  The modulus is the lexicographically smallest monic irreducible
/// polynomial of degree e over GF(p), ordered by coefficients from the
/// highest degree down, so representations are identical across runs.
///
/// Prime fields use direct modular arithmetic; extension fields use
/// log/antilog tables built once at construction.  Instances are immutable
/// and safe to share across threads.
class Field {
public:
    static Field make(int p, int e);

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }

    /// Modulus coefficients c_0..c_e (monic, c_e = 1).  For e = 1 this is
    /// the polynomial x, i.e. {0, 1}.
    const std::vector<int>& modulus() const { return modulus_; }

    int add(int a, int b) const;
    int sub(int a, int b) const;
    int neg(int a) const;
    int mul(int a, int b) const;
    int inv(int a) const;
    int pow(int a, long long k) const;

private:
    Field() = default;
    void build_tables();

    int p_ = 0, e_ = 0, q_ = 0;
    std::vector<int> modulus_;
    std::vector<std::uint16_t> log_;  // log_[a] for a != 0, e_ > 1 only
    std::vector<std::uint16_t> exp_;  // exp_[i] for i in [0, 2(q-2)]
};

bool is_prime(int p);

}  // namespace pgd

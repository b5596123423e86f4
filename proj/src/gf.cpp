#include "pgd/gf.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgd/guards.hpp"

namespace pgd {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

namespace {

using Poly = std::vector<int>;  // coefficients, constant term first

Poly decode(long long m, int p, int len) {
    Poly c(len, 0);
    for (int i = 0; i < len && m > 0; ++i) {
        c[i] = static_cast<int>(m % p);
        m /= p;
    }
    return c;
}

int degree(const Poly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != 0) return i;
    return -1;
}

// remainder of a mod b over GF(p); b monic
Poly poly_mod(Poly a, const Poly& b, int p) {
    int db = degree(b);
    for (int i = degree(a); i >= db; --i) {
        int c = a[i] % p;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) {
            int k = i - db + j;
            a[k] = ((a[k] - c * b[j]) % p + p) % p;
        }
    }
    a.resize(db > 0 ? db : 1, 0);
    return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, int p) {
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    return poly_mod(std::move(c), mod, p);
}

bool divides(const Poly& g, const Poly& f, int p) {
    Poly r = poly_mod(f, g, p);
    return degree(r) < 0;
}

bool irreducible(const Poly& f, int p, int e) {
    // trial division by all monic polynomials of degree 1..e/2
    for (int dg = 1; 2 * dg <= e; ++dg) {
        long long count = 1;
        for (int i = 0; i < dg; ++i) count *= p;
        for (long long m = 0; m < count; ++m) {
            Poly g = decode(m, p, dg + 1);
            g[dg] = 1;
            if (divides(g, f, p)) return false;
        }
    }
    return true;
}

long long encode(const Poly& c, int p, int len) {
    long long v = 0;
    for (int i = len - 1; i >= 0; --i) v = v * p + c[i];
    return v;
}

}  // namespace

Field Field::make(int p, int e) {
    if (!is_prime(p)) throw std::invalid_argument("GF order base " + std::to_string(p) + " is not prime");
    if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
    long long q = 1;
    for (int i = 0; i < e; ++i) {
        q *= p;
        if (static_cast<std::uint64_t>(q) > max_field_order())
            throw std::invalid_argument("field order exceeds cap");
    }

    Field f;
    f.p_ = p;
    f.e_ = e;
    f.q_ = static_cast<int>(q);

    if (e == 1) {
        f.modulus_ = {0, 1};  // x
        return f;
    }

    // Lexicographically smallest monic irreducible of degree e: iterating the
    // base-p encoding of (c_0..c_{e-1}) upward orders candidates by the
    // highest-degree coefficients first.
    bool found = false;
    for (long long m = 0; m < q; ++m) {
        Poly cand = decode(m, p, e + 1);
        cand[e] = 1;
        if (irreducible(cand, p, e)) {
            f.modulus_ = cand;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("no irreducible modulus found");  // cannot happen
    f.build_tables();
    return f;
}

void Field::build_tables() {
    // find a multiplicative generator and fill log/antilog tables
    const int qm1 = q_ - 1;
    for (int g = 2; g < q_; ++g) {
        std::vector<std::uint16_t> exp(qm1);
        std::vector<std::uint16_t> log(q_, 0);
        std::vector<bool> seen(q_, false);
        Poly gp = decode(g, p_, e_);
        Poly acc = decode(1, p_, e_);
        bool ok = true;
        for (int i = 0; i < qm1; ++i) {
            long long v = encode(acc, p_, e_);
            if (seen[v]) {
                ok = false;
                break;
            }
            seen[v] = true;
            exp[i] = static_cast<std::uint16_t>(v);
            log[v] = static_cast<std::uint16_t>(i);
            acc = poly_mul_mod(acc, gp, modulus_, p_);
        }
        if (ok && encode(acc, p_, e_) == 1) {
            exp_.assign(exp.begin(), exp.end());
            exp_.insert(exp_.end(), exp.begin(), exp.end());  // wraparound for log sums
            log_ = std::move(log);
            return;
        }
    }
    throw std::logic_error("no generator found");  // cannot happen for a field
}

int Field::add(int a, int b) const {
    if (e_ == 1) return (a + b) % p_;
    if (p_ == 2) return a ^ b;
    int r = 0, mul = 1;
    for (int i = 0; i < e_; ++i) {
        r += ((a % p_) + (b % p_)) % p_ * mul;
        a /= p_;
        b /= p_;
        mul *= p_;
    }
    return r;
}

int Field::neg(int a) const {
    if (e_ == 1) return (p_ - a) % p_;
    if (p_ == 2) return a;
    int r = 0, mul = 1;
    for (int i = 0; i < e_; ++i) {
        r += (p_ - (a % p_)) % p_ * mul;
        a /= p_;
        mul *= p_;
    }
    return r;
}

int Field::sub(int a, int b) const { return add(a, neg(b)); }

int Field::mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    if (e_ == 1) return static_cast<int>((static_cast<long long>(a) * b) % p_);
    return exp_[log_[a] + log_[b]];
}

int Field::inv(int a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    if (e_ == 1) return pow(a, p_ - 2);
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

int Field::pow(int a, long long k) const {
    if (k < 0) return pow(inv(a), -k);
    int r = 1;
    int base = a;
    while (k > 0) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

}  // namespace pgd

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace purindex {

// Thrown when an operation is asked about inputs outside its stated scope.
// Distinct from std::invalid_argument: the input is well-formed, but the
// machinery deliberately does not cover it and callers are expected to fall
// back to another route (or report honestly that no claim is made).
class refusal_error : public std::runtime_error {
public:
    explicit refusal_error(const std::string& what) : std::runtime_error(what) {}
};

// A p-adic valuation value: a natural number or +infinity (the valuation of 0).
// Infinity absorbs under addition and wins under min.
class Valuation {
public:
    Valuation() : inf_(true), v_(0) {}

    static Valuation infinity() { return Valuation(); }
    static Valuation finite(long v) {
        if (v < 0) throw std::invalid_argument("Valuation: finite value must be >= 0");
        Valuation out;
        out.inf_ = false;
        out.v_ = v;
        return out;
    }

    bool is_infinite() const { return inf_; }
    long value() const {
        if (inf_) throw std::invalid_argument("Valuation: infinite has no finite value");
        return v_;
    }

    Valuation operator+(const Valuation& o) const {
        if (inf_ || o.inf_) return infinity();
        return finite(v_ + o.v_);
    }
    Valuation operator+(long k) const {
        if (inf_) return infinity();
        return finite(v_ + k);
    }

    bool operator==(const Valuation& o) const {
        if (inf_ != o.inf_) return false;
        return inf_ || v_ == o.v_;
    }
    bool operator!=(const Valuation& o) const { return !(*this == o); }
    // Total order with infinity greatest.
    bool operator<(const Valuation& o) const {
        if (inf_) return false;
        if (o.inf_) return true;
        return v_ < o.v_;
    }
    bool operator<=(const Valuation& o) const { return *this < o || *this == o; }
    bool operator>(const Valuation& o) const { return o < *this; }
    bool operator>=(const Valuation& o) const { return o <= *this; }

    friend Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

    std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

private:
    bool inf_;
    long v_;
};

// A prime power p^e appearing in a factorization.
struct PrimePower {
    mpz_class p;
    unsigned long e;
};

// Deterministic primality: Miller-Rabin with a fixed base set below 2^64,
// BPSW (Miller-Rabin base 2 + strong Lucas) above. No probabilistic failures
// at any size we can reach.
bool is_prime(const mpz_class& n);

// Largest e with p^e | a; infinity for a = 0. Throws if p is not prime.
Valuation p_adic_val(const mpz_class& a, const mpz_class& p);

// Prime factorization of n != 0 with 0 < |n| < 2^96 (trial division plus
// Pollard rho at desk scale). Primes strictly increasing; the sign of n is
// not part of the result. |n| = 1 gives the empty list.
std::vector<PrimePower> factorize(const mpz_class& n);

// nu_p of binomial(n, k) computed as the number of carries when adding k and
// n-k in base p (no big binomial is ever formed). Throws if k > n.
Valuation binom_val(const mpz_class& p, const mpz_class& n, const mpz_class& k);

// Moebius function of n >= 1 (desk scale).
int mobius(unsigned long n);

// Number of monic irreducible polynomials of degree f over the field with p
// elements: (1/f) * sum_{d | f} mu(d) p^(f/d).
mpz_class count_monic_irreducibles(const mpz_class& p, unsigned long f);

// Deterministic 64-bit PRNG used wherever randomized splitting needs a coin.
// Instantiated per call site and seeded from data, never shared.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : s_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t s_;
};

// FNV-1a over a byte string, used to derive canonical PRNG seeds from data.
std::uint64_t fnv1a(const std::string& bytes);

// Global seed folded into every canonical PRNG seed. Reads the environment
// variable PURINDEX_SEED once (parsed as unsigned decimal); defaults to a
// fixed constant so runs are bit-reproducible out of the box.
std::uint64_t global_seed();

}  // namespace purindex

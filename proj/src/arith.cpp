#include "purindex/arith.hpp"

#include <algorithm>
#include <cstdlib>

namespace purindex {

namespace {

// Strong probable prime test to base a (n odd, n > 2, a not divisible by n).
bool miller_rabin_round(const mpz_class& n, const mpz_class& a) {
    mpz_class d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
        if (x == 1) return false;
    }
    return false;
}

// Strong Lucas probable prime test with Selfridge's parameter choice.
bool strong_lucas(const mpz_class& n) {
    // Find D = 5, -7, 9, -11, ... with Jacobi(D, n) = -1.
    mpz_class D = 5;
    while (true) {
        int j = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0 && abs(D) != n) return false;  // proper factor found
        D = (D > 0) ? mpz_class(-(D + 2)) : mpz_class(-(D - 2));
        if (abs(D) > 1000000) return false;  // unreachable in practice
    }
    mpz_class P = 1;
    mpz_class Q = (1 - D) / 4;

    mpz_class d = n + 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    // Compute U_d, V_d mod n by binary ladder over the bits of d.
    mpz_class U = 0, V = 2, Qk = 1;
    long bits = mpz_sizeinbase(d.get_mpz_t(), 2);
    auto mod_n = [&n](mpz_class x) {
        x %= n;
        if (x < 0) x += n;
        return x;
    };
    mpz_class inv2 = (n + 1) / 2;  // n odd: inverse of 2 mod n
    for (long i = bits - 1; i >= 0; --i) {
        // (U, V) <- (U V, V^2 - 2 Q^k); Qk <- Qk^2
        U = mod_n(U * V);
        V = mod_n(V * V - 2 * Qk);
        Qk = mod_n(Qk * Qk);
        if (mpz_tstbit(d.get_mpz_t(), i)) {
            // (U, V) <- ((P U + V)/2, (D U + P V)/2); Qk <- Qk Q
            mpz_class U2 = mod_n((U + V) * inv2);
            mpz_class V2 = mod_n((D * U + V) * inv2);
            U = U2;
            V = V2;
            Qk = mod_n(Qk * Q);
        }
    }
    if (U == 0 || V == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        V = mod_n(V * V - 2 * Qk);
        if (V == 0) return true;
        Qk = mod_n(Qk * Qk);
    }
    return false;
}

mpz_class pow_ui(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// Pollard rho (Brent variant) on odd composite n with no small factors.
mpz_class pollard_rho(const mpz_class& n, SplitMix64& rng) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    while (true) {
        mpz_class c = mpz_class(rng.next() % 1000003) + 1;
        mpz_class x = mpz_class(rng.next() % 1000003) + 2;
        mpz_class y = x, d = 1;
        // The explicit return type matters: without it the lambda hands back a
        // gmpxx expression template referencing its dead parameter.
        auto step = [&](const mpz_class& v) -> mpz_class { return (v * v + c) % n; };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            mpz_class diff = x - y;
            if (diff == 0) break;  // cycle without factor: retry with new c
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 0 && d != n && d != 1) return d;
    }
}

void factor_into(const mpz_class& n, std::vector<PrimePower>& out, SplitMix64& rng);

void factor_composite(const mpz_class& n, std::vector<PrimePower>& out, SplitMix64& rng) {
    mpz_class d = pollard_rho(n, rng);
    factor_into(d, out, rng);
    factor_into(n / d, out, rng);
}

void factor_into(const mpz_class& n, std::vector<PrimePower>& out, SplitMix64& rng) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back({n, 1});
        return;
    }
    factor_composite(n, out, rng);
}

}  // namespace

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    static const unsigned long small[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                          41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    for (unsigned long q : small) {
        if (n == q) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), q)) return false;
    }
    mpz_class two64 = pow_ui(2, 64);
    if (n < two64) {
        // Deterministic below 2^64 with the first twelve prime bases.
        for (unsigned long a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
            if (!miller_rabin_round(n, a)) return false;
        }
        return true;
    }
    if (!miller_rabin_round(n, 2)) return false;
    // Skip the Lucas stage for perfect squares (it cannot see them).
    if (mpz_perfect_square_p(n.get_mpz_t())) return false;
    return strong_lucas(n);
}

Valuation p_adic_val(const mpz_class& a, const mpz_class& p) {
    if (!is_prime(p)) throw std::invalid_argument("p_adic_val: p is not prime");
    if (a == 0) return Valuation::infinity();
    mpz_class rest;
    unsigned long e = mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return Valuation::finite(static_cast<long>(e));
}

std::vector<PrimePower> factorize(const mpz_class& n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be nonzero");
    mpz_class a = abs(n);
    if (a >= pow_ui(2, 96)) throw std::invalid_argument("factorize: |n| must be < 2^96");
    std::vector<PrimePower> out;
    // Trial division knocks out everything a desk-scale input usually has.
    for (unsigned long q = 2; q < 10000 && a > 1; q = (q == 2 ? 3 : q + 2)) {
        if (mpz_divisible_ui_p(a.get_mpz_t(), q)) {
            mpz_class rest;
            unsigned long e =
                mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), mpz_class(q).get_mpz_t());
            out.push_back({mpz_class(q), e});
            a = rest;
        }
    }
    if (a > 1) {
        SplitMix64 rng(fnv1a(n.get_str()) ^ global_seed());
        std::vector<PrimePower> rest;
        factor_into(a, rest, rng);
        std::sort(rest.begin(), rest.end(),
                  [](const PrimePower& x, const PrimePower& y) { return x.p < y.p; });
        // Merge equal primes coming back from recursive splits.
        for (auto& pp : rest) {
            if (!out.empty() && out.back().p == pp.p)
                out.back().e += pp.e;
            else
                out.push_back(pp);
        }
    }
    return out;
}

Valuation binom_val(const mpz_class& p, const mpz_class& n, const mpz_class& k) {
    if (!is_prime(p)) throw std::invalid_argument("binom_val: p is not prime");
    if (k < 0 || n < 0 || k > n) throw std::invalid_argument("binom_val: need 0 <= k <= n");
    // Kummer: nu_p(C(n,k)) = number of carries adding k and n-k in base p.
    mpz_class a = k, b = n - k;
    long carries = 0;
    mpz_class carry = 0;
    while (a > 0 || b > 0 || carry > 0) {
        mpz_class da = a % p, db = b % p;
        if (da + db + carry >= p) {
            ++carries;
            carry = 1;
        } else {
            carry = 0;
        }
        a /= p;
        b /= p;
    }
    return Valuation::finite(carries);
}

int mobius(unsigned long n) {
    if (n == 0) throw std::invalid_argument("mobius: n must be >= 1");
    if (n == 1) return 1;
    int k = 0;
    for (unsigned long q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            n /= q;
            if (n % q == 0) return 0;
            ++k;
        }
    }
    if (n > 1) ++k;
    return (k % 2 == 0) ? 1 : -1;
}

mpz_class count_monic_irreducibles(const mpz_class& p, unsigned long f) {
    if (!is_prime(p)) throw std::invalid_argument("count_monic_irreducibles: p is not prime");
    if (f == 0) throw std::invalid_argument("count_monic_irreducibles: f must be >= 1");
    mpz_class sum = 0;
    for (unsigned long d = 1; d <= f; ++d) {
        if (f % d != 0) continue;
        int mu = mobius(f / d);
        if (mu == 0) continue;
        sum += mu * pow_ui(p, d);
    }
    return sum / f;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t global_seed() {
    static const std::uint64_t seed = [] {
        const char* env = std::getenv("PURINDEX_SEED");
        if (env != nullptr && *env != '\0') {
            return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
        }
        return static_cast<std::uint64_t>(0x70757269U);  // fixed default
    }();
    return seed;
}

}  // namespace purindex

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "purindex/newton.hpp"

namespace purindex {

// A prime ideal read off the order-2 polygon: total ramification e = e1 * e2
// and residue degree f_res.
struct Order2Prime {
    long e;
    long f_res;
};

// Order-2 Newton polygon data for f = x^n - m at a prime p | m whose
// first-order polygon is a single side of degree D = gcd(n, nu_p(m)) = p^w
// with D > 1 (so the first-order residual is a single repeated linear
// factor). The refinement works with the key polynomial
// phi2 = x^e1 - p^h1 * m_p, e1 = n/D, h1 = nu_p(m)/D, m_p = m / p^nu_p(m),
// and measures the phi2-expansion in the integer lattice
// mu_i = e1 * nu_p(a_i) + i * e1 * h1. The axis sits at H = e1 * nu_p(m).
struct Order2Result {
    long n;
    mpz_class m;
    mpz_class p;
    long s1;       // nu_p(m)
    long e1, h1;   // first-order slope -s1/n = -h1/e1 in lowest terms
    long D;        // n / e1 = gcd(n, s1), a power of p in scope
    IntPoly phi2;
    std::vector<std::pair<long, long>> mu_points;  // (i, mu_i), i = 0..D
    std::vector<Side> sides;                       // principal part, mu-coordinates
    std::vector<ModPoly> residuals;                // one per side, over F_p
    bool all_squarefree;
    long H;           // e1 * s1: polygon floor, equals mu_D
    mpz_class ind2;   // sum over x >= 1 of max(0, floor(N2(x)) - H)
    // Complete splitting of p iff every residual is squarefree.
    std::optional<std::vector<Order2Prime>> census;
};

// true iff the order-2 machinery applies: p prime dividing m with
// 0 < nu_p(m) < n and D = gcd(n, nu_p(m)) = p^w for some w >= 1.
bool order2_in_scope(long n, const mpz_class& m, const mpz_class& p);

// Run the order-2 analysis. Preconditions checked: order2_in_scope and
// phi2 not dividing f (which would make x^n - m reducible); violations are
// invalid_argument. In scope, nu_p(ind f) >= ind1 + ind2 with ind1 the
// first-order polygon index, and equality holds iff all_squarefree.
Order2Result order2_analyze(long n, const mpz_class& m, const mpz_class& p);

}  // namespace purindex

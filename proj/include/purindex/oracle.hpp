#pragma once

#include <utility>
#include <vector>

#include "purindex/poly.hpp"

namespace purindex {

// Independent cross-check: the p-maximal order containing Z[theta] computed
// by round-2 (radical of pO, then its ring of multipliers, iterated to a
// fixpoint), together with the residue census of the primes above p read off
// the semisimple quotient of the maximal order mod p.
struct OracleReport {
    mpz_class p;
    long index_valuation;  // nu_p([O_K : Z[theta]])
    // (residue degree f, number of primes above p with that degree),
    // ascending in f, zero counts omitted. sum of e*f over primes = deg f
    // is not reported here; the census carries only the f multiset.
    std::vector<std::pair<long, long>> census;
    long iterations;  // round-2 steps until stable
};

// Preconditions: f monic, 1 <= deg f <= 60, p prime with p <= 50.
// Out-of-range inputs raise refusal_error: the cross-check stays inside its
// validated envelope instead of silently extrapolating.
OracleReport oracle_analyze(const IntPoly& f, const mpz_class& p);

}  // namespace purindex

#pragma once

#include <optional>
#include <vector>

#include "purindex/newton.hpp"

namespace purindex {

// One prime ideal of the splitting read off a regular polygon: ramification
// index e and residue degree f_res. Summed over a complete decomposition,
// e * f_res adds up to deg f.
struct SplittingShape {
    long e;
    long f_res;
};

// Per-factor report for one monic irreducible phi dividing f mod p.
struct PhiReport {
    IntPoly phi;          // canonical lift
    long multiplicity;    // of phi mod p in f mod p
    mpz_class phi_index;  // deg(phi) * polygon_index, a lower-bound summand
    bool regular;         // every residual of this phi-polygon is squarefree
};

// Ore's theorem data for f at p: nu_p(ind f) >= sum of phi indices, with
// equality iff every residual polynomial is squarefree (p-regular). In the
// regular case the full splitting shape of p is known.
struct OreResult {
    mpz_class p;
    bool dedekind_divides;  // p | ind f (Dedekind's criterion, always exact)
    mpz_class index_lower;  // sum over phi of phi_index
    bool p_regular;
    std::optional<mpz_class> index_exact;       // = index_lower iff p_regular
    std::vector<PhiReport> factors;
    std::vector<SplittingShape> shapes;         // complete iff p_regular
};

// Dedekind's criterion: exact test whether p divides [O_K : Z[theta]] for
// f monic irreducible with root theta. Works for every p.
bool dedekind_divides_index(const IntPoly& f, const mpz_class& p);

// Run the phi-Newton polygon analysis of f at p over all irreducible factors
// of f mod p. Requires f monic of degree >= 1 and p prime.
OreResult ore_analyze(const IntPoly& f, const mpz_class& p);

}  // namespace purindex

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "purindex/ore.hpp"
#include "purindex/second_order.hpp"

namespace purindex {

// Capelli: x^n - m (n >= 2) is irreducible over Q iff m is not a q-th power
// for any prime q | n and m is not of the form -4k^4 when 4 | n. Total in m:
// m = 0 and m = 1 are reducible for every n >= 2, and m = -1 is irreducible
// exactly when n is a power of 2.
bool is_irreducible_pure(long n, const mpz_class& m);

// A proper monic factor of x^n - m when one exists: x^(n/q) - b when m = b^q
// for a prime q | n, or x^(n/2) - 2k x^(n/4) + 2k^2 when m = -4k^4 and 4 | n.
std::optional<IntPoly> pure_reducible_witness(long n, const mpz_class& m);

// Eisenstein at p: unit leading coefficient, every lower coefficient
// divisible by p, constant term exactly once. Implies irreducibility.
bool eisenstein_at(const IntPoly& f, const mpz_class& p);

// Smallest shift c (by |c|, ties to the positive one) with |c| <= bound such
// that f(x + c) is Eisenstein at p, if any.
std::optional<mpz_class> shifted_eisenstein(const IntPoly& f, const mpz_class& p,
                                            long bound = 4);

// nu_p(m^p - m). Infinite exactly when m^p = m (m = 0, m = 1, or m = -1 at
// odd p); equals nu_p(m) when p | m, else 1 + nu_p(m^(p-1) - 1) read off
// successive powers of p without ever forming m^p.
Valuation closed_val(const mpz_class& m, const mpz_class& p);

// The field Q(alpha) for a root alpha of f = x^n - m: n >= 2, m outside
// {0, 1}, f irreducible over Q (checked at construction; reducible input is
// invalid_argument naming a witness factor). Operations whose statements
// need nu_p(m) < n check that precondition themselves, so construction stays
// permissive enough for analyze() to normalize inputs like m = a^v.
class PureField {
public:
    PureField(long n, mpz_class m);

    long n() const { return n_; }
    const mpz_class& m() const { return m_; }
    const IntPoly& f() const { return f_; }

private:
    long n_;
    mpz_class m_;
    IntPoly f_;
};

// Local data of f at one prime: n = p^r * t and m = p^s * u with p dividing
// neither t nor u.
struct PrimeProfile {
    mpz_class p;
    long r;              // nu_p(n)
    long t;              // n / p^r
    long s;              // nu_p(m)
    mpz_class u;         // m / p^s, the signed unit part of m at p
    Valuation v_closed;  // nu_p(m^p - m)
};

PrimeProfile prime_profile(long n, const mpz_class& m, const mpz_class& p);

// One prime p | n*m checked against nu_p(m^p - m) = 1.
struct IntclosCheck {
    mpz_class p;
    Valuation v;  // nu_p(m^p - m)
    bool ok;      // v == 1
};

// Z[alpha] is integrally closed iff every check passes.
struct IntclosReport {
    bool closed;
    std::vector<IntclosCheck> checks;  // one per p | n*m, ascending
};

IntclosReport integral_closedness_test(const PureField& K);

// nu_p(ind f) = ((n-1)(v-1) + d - 1)/2 with v = nu_p(m), d = gcd(n, v),
// valid when p | m and gcd(n, p, v) = 1: the polygon is a single side from
// (0, v) to (n, 0) whose residual y^d + c is separable, so the count is
// exact. Verified against the polygon computation before returning.
// gcd(n, p, v) = p lies outside (only a strict lower bound holds there, see
// strict_inequality_case); that and p nmid m are refusal_error.
mpz_class index_val_p_divides_m(const PureField& K, const mpz_class& p);

// Polygon of f at p | n, p nmid m, with respect to a monic lift phi of an
// irreducible factor of x^t - m mod p (t the prime-to-p part of n). The
// principal polygon is the lower hull of {(0, v0)} and {(p^j, r-j)},
// j = 0..r, where v0 = nu_p(m^p - m) whenever that is <= r and v0 >= r+1
// otherwise, and the contribution to nu_p(ind f) is
// deg(phi) * sum_{j=1}^{min(r, v-1)} p^(r-j). Both facts are checked against
// the polygon of the actual phi-expansion; a mismatch is logic_error.
struct PurePolygon {
    NewtonPolygon polygon;
    long v;                  // nu_p(m^p - m)
    mpz_class contribution;  // deg(phi) * polygon index, also in closed form
};

PurePolygon pure_polygon_p_divides_n(const PureField& K, const mpz_class& p,
                                     const IntPoly& phi);

enum class StrictBasis { SecondOrder, Oracle, Unjustified };

// In the excluded case gcd(p, nu_p(m), n) = p the single-side count is only
// a lower bound. strict is reported true only when a computation witnesses
// the gap: an order-2 polygon with ind2 >= 1, or the oracle when degree and
// prime fit its envelope.
struct StrictInequality {
    mpz_class lower;  // ((n-1)(v-1) + d - 1)/2
    bool strict;
    StrictBasis basis;
};

// Preconditions p | m, gcd(p, nu_p(m), n) = p and nu_p(m) < n; violations
// are refusal_error.
StrictInequality strict_inequality_case(const PureField& K, const mpz_class& p);

// Census evidence that p divides the index of every generator of the field:
// the primes above p of residue degree f_res outnumber the monic
// irreducibles of that degree over F_p.
struct CommonIndexEvidence {
    mpz_class p;
    long f_res;
    long P_f;        // primes above p with residue degree f_res
    mpz_class N_f;   // count_monic_irreducibles(p, f_res)
};

// Which computation produced the verified census backing a certificate.
enum class CensusSource { FirstOrder, SecondOrder, Oracle };

// A non-monogeneity certificate: the arithmetic condition that fired and the
// verified census evidence behind it.
struct Certificate {
    int condition;  // 1..8
    CensusSource source;
    CommonIndexEvidence evidence;
};

// Trace of one arithmetic-condition hit during the certificate scan, kept
// whether or not a census could be computed and whether or not it certified.
struct ConditionHit {
    int condition;
    mpz_class p;
    bool census_available;
    std::optional<CensusSource> source;
    // (residue degree f, count P_f), ascending in f; empty without a census.
    std::vector<std::pair<long, long>> counts;
    std::optional<CommonIndexEvidence> evidence;
};

struct CertificateScan {
    std::optional<Certificate> certificate;
    std::vector<ConditionHit> hits;
};

// Scan every p | n for the eight sufficient congruence conditions for a
// common index divisor. Each hit is verified by an actual residue census
// before anything is claimed: the first-order splitting shapes when the
// polygon is p-regular, the order-2 census when that refinement applies and
// is exact, else the independent oracle inside its envelope. Hits whose
// census refutes the condition, or admits no computation, are recorded and
// certify nothing.
CertificateScan non_monogenic_certificate(const PureField& K);

// First residue degree f (ascending) with P_f > N_f over F_p, given the
// complete splitting of p as (e, f_res) pairs. Incomplete censuses
// (sum e*f != n) are invalid_argument.
std::optional<CommonIndexEvidence> common_index_divisor(
    const mpz_class& p, const std::vector<std::pair<long, long>>& census, long n);

// theta = alpha^i / m^j for the minimal solution of v*i - n*j = 1 with
// 0 < i < n; theta generates the same field with minimal polynomial
// g = x^n - a.
struct GeneratorWitness {
    mpz_class i;
    mpz_class j;
    mpz_class a;  // g = x^n - a; the identity witness has (i, j, a) = (1, 0, m)
    IntPoly g;
};

// The substitution route: with m = a^v, a squarefree outside {0, 1, -1} and
// gcd(v, n) = 1, return the witness above; monogeneity is then decided by
// integral_closedness_test on x^n - a. Inapplicable shapes (a not
// squarefree, gcd(v, n) > 1) give nullopt, never an error.
std::optional<GeneratorWitness> monogenic_via_substitution(long n, const mpz_class& a,
                                                           long v);

// m = a^v with a squarefree and v >= 2 (v the common exponent of every prime
// in m, negative m forcing v odd), when m has that shape.
std::optional<std::pair<mpz_class, long>> squarefree_power_form(const mpz_class& m);

enum class Verdict { Monogenic, NotMonogenic, Undetermined };

const char* verdict_str(Verdict v);

// Everything analyze() computed at one prime p | n*m: Dedekind and polygon
// data, the order-2 refinement when it applies, and the sharpest index value
// those justify (exact from a regular polygon, or ind1 + ind2 when the
// order-2 residuals are all squarefree).
struct PrimeReport {
    mpz_class p;
    OreResult ore;
    std::optional<Order2Result> order2;
    std::optional<mpz_class> index_exact;
};

struct AnalyzeResult {
    long n;
    mpz_class m;
    Verdict status;
    std::optional<GeneratorWitness> witness;  // present iff Monogenic
    std::optional<Certificate> certificate;   // present iff NotMonogenic
    IntclosReport closedness;
    std::vector<ConditionHit> hits;           // certificate-scan trace
    std::vector<PrimeReport> primes;          // one per p | n*m, ascending
};

// Decision pipeline: integral closedness (Monogenic, identity witness), else
// the substitution route on m = a^v (Monogenic when x^n - a passes the
// closedness test), else a verified non-monogeneity certificate, else
// Undetermined. Per-prime reports are always attached.
AnalyzeResult analyze(const PureField& K);

}  // namespace purindex

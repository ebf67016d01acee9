#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "purindex/arith.hpp"

namespace purindex {

// Dense polynomial over Z. Index i holds the coefficient of x^i; the vector
// never has trailing zeros, and the zero polynomial is the empty vector.
class IntPoly {
public:
    IntPoly() = default;

    static IntPoly from_coeffs(std::vector<mpz_class> c);
    static IntPoly constant(const mpz_class& a);
    static IntPoly monomial(long deg, const mpz_class& coeff = 1);
    // f = x^n - m.
    static IntPoly pure(long n, const mpz_class& m);

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const mpz_class& coeff(long i) const;
    const std::vector<mpz_class>& coeffs() const { return c_; }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator-() const;
    IntPoly operator*(const mpz_class& k) const;
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return c_ != o.c_; }

    // Euclidean division by a monic divisor (quotient, remainder); exact over
    // Z because the divisor is monic. Non-monic divisor -> invalid_argument.
    std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& d) const;

    IntPoly derivative() const;
    mpz_class evaluate(const mpz_class& x) const;
    IntPoly pow(unsigned long e) const;
    // f(g(x)) by Horner over IntPoly.
    IntPoly compose(const IntPoly& g) const;

    std::string str(const std::string& var = "x") const;

private:
    std::vector<mpz_class> c_;
    void normalize();
};

// Parse "x^14 - 17" style text: integer coefficients, '^' powers, optional
// '*'. The ASCII hyphen is the only minus accepted; the unicode minus sign is
// rejected with a pointed message.
IntPoly parse_poly(const std::string& text);

// Dense polynomial over F_p, coefficients reduced into [0, p).
class ModPoly {
public:
    explicit ModPoly(const mpz_class& p) : p_(p) {}
    static ModPoly from_coeffs(const mpz_class& p, std::vector<mpz_class> c);
    static ModPoly x(const mpz_class& p) { return from_coeffs(p, {0, 1}); }

    const mpz_class& p() const { return p_; }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const mpz_class& coeff(long i) const;
    const std::vector<mpz_class>& coeffs() const { return c_; }
    const mpz_class& leading() const;

    ModPoly operator+(const ModPoly& o) const;
    ModPoly operator-(const ModPoly& o) const;
    ModPoly operator*(const ModPoly& o) const;
    ModPoly scaled(const mpz_class& k) const;
    bool operator==(const ModPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const ModPoly& o) const { return !(*this == o); }

    ModPoly monic() const;  // divide by the leading unit; zero stays zero
    std::pair<ModPoly, ModPoly> divmod(const ModPoly& d) const;
    ModPoly mod(const ModPoly& d) const { return divmod(d).second; }
    ModPoly derivative() const;
    std::string str(const std::string& var = "x") const;

    friend ModPoly gcd(ModPoly a, ModPoly b);  // monic gcd

    // this^e mod modulus (binary ladder).
    ModPoly pow_mod(const mpz_class& e, const ModPoly& modulus) const;

private:
    mpz_class p_;
    std::vector<mpz_class> c_;
    void normalize();
};

// Coefficientwise reduction Z[x] -> F_p[x]; the degree may drop.
ModPoly reduce_mod_p(const IntPoly& f, const mpz_class& p);

// Canonical lift with coefficients in [0, p).
IntPoly lift_canonical(const ModPoly& g);

// Rabin's irreducibility test over F_p.
bool is_irreducible_mod(const ModPoly& g);

// Full factorization over F_p: squarefree split, then distinct-degree, then
// equal-degree (Cantor-Zassenhaus). Factors are monic, irreducible, pairwise
// distinct, sorted by degree then lexicographically by coefficient sequence.
// The product of factors^multiplicities equals g up to the leading unit.
// Zero polynomial -> invalid_argument; constants factor as the empty list.
std::vector<std::pair<ModPoly, unsigned long>> factor_mod_p(const ModPoly& g);

// The finite field F_p[x]/(modulus) with modulus monic irreducible of degree
// k >= 1. Elements are ModPoly values reduced to degree < k. F_p itself is
// the k = 1 case with modulus x.
class ExtField {
public:
    using Elem = ModPoly;

    explicit ExtField(const ModPoly& modulus);  // checks irreducibility

    const mpz_class& p() const { return p_; }
    long degree() const { return modulus_.degree(); }
    const ModPoly& modulus() const { return modulus_; }
    mpz_class q() const;  // p^degree

    Elem zero() const { return ModPoly(p_); }
    Elem one() const { return from_int(1); }
    Elem from_int(const mpz_class& a) const;
    Elem gen() const;  // the class of x
    Elem reduce(const ModPoly& a) const;

    Elem add(const Elem& a, const Elem& b) const { return reduce(a + b); }
    Elem sub(const Elem& a, const Elem& b) const { return reduce(a - b); }
    Elem mul(const Elem& a, const Elem& b) const { return reduce(a * b); }
    Elem neg(const Elem& a) const { return reduce(zero() - a); }
    Elem inv(const Elem& a) const;  // invalid_argument on zero
    Elem pow(const Elem& a, const mpz_class& e) const;
    Elem frobenius(const Elem& a) const { return pow(a, p_); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }

    std::string elem_str(const Elem& a) const;

private:
    mpz_class p_;
    ModPoly modulus_;
};

using ExtFieldPtr = std::shared_ptr<const ExtField>;

// Dense polynomial in y over an ExtField.
class ExtPoly {
public:
    explicit ExtPoly(ExtFieldPtr field) : F_(std::move(field)) {}
    static ExtPoly from_coeffs(ExtFieldPtr field, std::vector<ExtField::Elem> c);

    const ExtFieldPtr& field() const { return F_; }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    ExtField::Elem coeff(long i) const;
    const std::vector<ExtField::Elem>& coeffs() const { return c_; }

    ExtPoly operator+(const ExtPoly& o) const;
    ExtPoly operator-(const ExtPoly& o) const;
    ExtPoly operator*(const ExtPoly& o) const;
    bool operator==(const ExtPoly& o) const;
    bool operator!=(const ExtPoly& o) const { return !(*this == o); }

    ExtPoly monic() const;
    std::pair<ExtPoly, ExtPoly> divmod(const ExtPoly& d) const;
    ExtPoly mod(const ExtPoly& d) const { return divmod(d).second; }
    ExtPoly derivative() const;
    ExtPoly pow_mod(const mpz_class& e, const ExtPoly& modulus) const;
    std::string str(const std::string& var = "y") const;

    friend ExtPoly gcd(ExtPoly a, ExtPoly b);  // monic gcd

    // true iff gcd(g, g') is constant. Zero polynomial -> invalid_argument.
    bool is_squarefree() const;

    // Monic irreducible factors with multiplicities, canonically sorted.
    std::vector<std::pair<ExtPoly, unsigned long>> factor() const;

private:
    ExtFieldPtr F_;
    std::vector<ExtField::Elem> c_;
    void normalize();
};

// The phi-expansion f = sum a_i phi^i from repeated Euclidean division:
// every deg(a_i) < deg(phi) and the reconstruction identity is exact.
struct PhiExpansion {
    IntPoly phi;
    std::vector<IntPoly> terms;  // index i holds a_i
    // Canonical expansions are admissible by construction; hand-built ones
    // with oversized terms are judged by is_admissible (newton module).
    bool admissible = true;
};

// Compute the canonical phi-expansion; phi must be monic of degree >= 1.
// Number of terms = floor(deg f / deg phi) + 1 (zero terms kept).
PhiExpansion phi_expansion(const IntPoly& f, const IntPoly& phi);

// Reassemble sum a_i phi^i.
IntPoly reconstruct(const PhiExpansion& e);

// min over coefficients of nu_p; infinity for the zero polynomial.
Valuation gauss_valuation(const IntPoly& g, const mpz_class& p);

}  // namespace purindex

#pragma once

#include <utility>
#include <vector>

#include "purindex/poly.hpp"

namespace purindex {

// One side of a Newton polygon over the integer lattice. The slope is
// -h/l = -h_red/e_red in lowest terms and d = gcd(l, h) is the degree.
struct Side {
    long s;      // start abscissa
    long us;     // start ordinate
    long l;      // horizontal length, > 0
    long h;      // total ordinate drop, > 0 for a principal side
    long h_red;  // h / gcd(l, h)
    long e_red;  // l / gcd(l, h)
    long d;      // gcd(l, h) = l / e_red

    long end_x() const { return s + l; }
    long end_y() const { return us - h; }
    // true iff (x, y) lies exactly on the side's segment.
    bool on_line(long x, long y) const {
        return x >= s && x <= s + l && (us - y) * e_red == (x - s) * h_red;
    }
};

// Lower convex hull of a finite point set (monotone chain). Input need not be
// sorted; ties in abscissa keep the lowest ordinate. Returns the hull
// vertices left to right.
std::vector<std::pair<long, long>> lower_hull(std::vector<std::pair<long, long>> pts);

// Split consecutive hull vertices into sides, keeping only those of negative
// slope (the principal part). Sides come out left to right, steepest first.
std::vector<Side> principal_sides(const std::vector<std::pair<long, long>>& hull);

// Judge a possibly non-canonical phi-expansion (terms of any degree are
// allowed): admissible iff at every vertex abscissa i of its principal
// polygon the normalized term a_i / p^{u_i} stays nonzero modulo (p, phi).
// Admissible expansions reproduce the canonical principal polygon and its
// residual polynomials exactly.
bool is_admissible(const PhiExpansion& e, const mpz_class& p);

// The principal phi-Newton polygon of f with respect to p and a monic lift
// phi of an irreducible factor of f mod p. Ordinates are nu_p of the
// phi-expansion coefficients; the principal part collects the sides of
// negative slope, and its total horizontal length equals the multiplicity of
// phi mod p in f mod p.
class NewtonPolygon {
public:
    // Requires p prime, phi monic with phi mod p irreducible, and phi not an
    // exact divisor of f (else the polygon degenerates): invalid_argument.
    NewtonPolygon(const IntPoly& f, const IntPoly& phi, const mpz_class& p);

    const IntPoly& f() const { return f_; }
    const IntPoly& phi() const { return phi_; }
    const mpz_class& p() const { return p_; }

    const PhiExpansion& expansion() const { return exp_; }
    const std::vector<Valuation>& ordinates() const { return ord_; }
    const std::vector<std::pair<long, long>>& vertices() const { return verts_; }
    const std::vector<Side>& sides() const { return sides_; }

    // Horizontal span of the principal part = multiplicity of phi mod p in
    // f mod p.
    long principal_length() const;

    // The residue field F_p[x]/(phi mod p).
    const ExtFieldPtr& residue_field() const { return F_; }

    // Residual polynomial of side k over the residue field: coefficient j is
    // the residue of a_i / p^{nu_p(a_i)} at abscissa i = s + j*e_red when that
    // point lies on the side, else zero. Degree is exactly d.
    ExtPoly residual(size_t k) const;

    // true iff every side's residual polynomial is squarefree.
    bool is_regular() const;

    // Lattice points (x, y), x >= 1, y >= 1, on or below the principal part.
    mpz_class polygon_index() const;

    // deg(phi) * polygon_index: this side's contribution to nu_p(ind f).
    mpz_class phi_index() const;

    // Index of a single side from (0, h) to (l, 0): ((l-1)(h-1) + gcd(l,h) - 1)/2.
    static mpz_class single_side_index(long l, long h);

private:
    IntPoly f_, phi_;
    mpz_class p_;
    PhiExpansion exp_;
    std::vector<Valuation> ord_;
    std::vector<std::pair<long, long>> verts_;  // principal vertices only
    std::vector<Side> sides_;
    ExtFieldPtr F_;
};

}  // namespace purindex

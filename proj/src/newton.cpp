#include "purindex/newton.hpp"

#include <algorithm>
#include <numeric>

namespace purindex {

std::vector<std::pair<long, long>> lower_hull(std::vector<std::pair<long, long>> pts) {
    std::sort(pts.begin(), pts.end());
    // Collapse equal abscissas onto the lowest ordinate.
    std::vector<std::pair<long, long>> uniq;
    for (const auto& pt : pts) {
        if (!uniq.empty() && uniq.back().first == pt.first) continue;  // sorted: first is lowest
        uniq.push_back(pt);
    }
    if (uniq.size() <= 2) return uniq;
    std::vector<std::pair<long, long>> hull;
    for (const auto& pt : uniq) {
        while (hull.size() >= 2) {
            const auto& o = hull[hull.size() - 2];
            const auto& a = hull[hull.size() - 1];
            // cross <= 0: a is not a strict vertex of the lower hull.
            long cross = (a.first - o.first) * (pt.second - o.second) -
                         (a.second - o.second) * (pt.first - o.first);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    return hull;
}

std::vector<Side> principal_sides(const std::vector<std::pair<long, long>>& hull) {
    std::vector<Side> out;
    for (size_t i = 0; i + 1 < hull.size(); ++i) {
        long dx = hull[i + 1].first - hull[i].first;
        long dy = hull[i + 1].second - hull[i].second;
        if (dy >= 0) break;  // convexity: slopes only increase to the right
        Side s;
        s.s = hull[i].first;
        s.us = hull[i].second;
        s.l = dx;
        s.h = -dy;
        long g = std::gcd(s.l, s.h);
        s.h_red = s.h / g;
        s.e_red = s.l / g;
        s.d = g;
        out.push_back(s);
    }
    return out;
}

NewtonPolygon::NewtonPolygon(const IntPoly& f, const IntPoly& phi, const mpz_class& p)
    : f_(f), phi_(phi), p_(p) {
    if (!is_prime(p_)) throw std::invalid_argument("NewtonPolygon: p must be prime");
    if (!phi_.is_monic() || phi_.degree() < 1)
        throw std::invalid_argument("NewtonPolygon: phi must be monic of degree >= 1");
    ModPoly phibar = reduce_mod_p(phi_, p_);
    if (!is_irreducible_mod(phibar))
        throw std::invalid_argument("NewtonPolygon: phi mod p must be irreducible");
    if (f_.is_zero()) throw std::invalid_argument("NewtonPolygon: f must be nonzero");
    exp_ = phi_expansion(f_, phi_);
    if (exp_.terms[0].is_zero())
        throw std::invalid_argument("NewtonPolygon: phi divides f exactly");
    std::vector<std::pair<long, long>> pts;
    for (size_t i = 0; i < exp_.terms.size(); ++i) {
        Valuation v = gauss_valuation(exp_.terms[i], p_);
        ord_.push_back(v);
        if (!v.is_infinite()) pts.emplace_back(static_cast<long>(i), v.value());
    }
    auto hull = lower_hull(std::move(pts));
    sides_ = principal_sides(hull);
    verts_.push_back(hull.front());
    for (const auto& s : sides_) verts_.emplace_back(s.end_x(), s.end_y());
    F_ = std::make_shared<const ExtField>(phibar);
}

long NewtonPolygon::principal_length() const {
    return verts_.back().first - verts_.front().first;
}

ExtPoly NewtonPolygon::residual(size_t k) const {
    if (k >= sides_.size()) throw std::invalid_argument("residual: no such side");
    const Side& S = sides_[k];
    std::vector<ExtField::Elem> c;
    for (long j = 0; j <= S.d; ++j) {
        long i = S.s + j * S.e_red;
        const Valuation& v = ord_[i];
        if (!v.is_infinite() && S.on_line(i, v.value())) {
            mpz_class pw;
            mpz_pow_ui(pw.get_mpz_t(), p_.get_mpz_t(), static_cast<unsigned long>(v.value()));
            std::vector<mpz_class> unit;
            for (const auto& a : exp_.terms[i].coeffs()) {
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), pw.get_mpz_t());
                unit.push_back(q);
            }
            c.push_back(F_->reduce(ModPoly::from_coeffs(p_, std::move(unit))));
        } else {
            c.push_back(F_->zero());
        }
    }
    return ExtPoly::from_coeffs(F_, std::move(c));
}

bool NewtonPolygon::is_regular() const {
    for (size_t k = 0; k < sides_.size(); ++k)
        if (!residual(k).is_squarefree()) return false;
    return true;
}

mpz_class NewtonPolygon::polygon_index() const {
    mpz_class total = 0;
    for (const Side& S : sides_) {
        for (long x = S.s + 1; x <= S.s + S.l; ++x) {
            if (x < 1) continue;
            // floor of the side's ordinate at x.
            long num = S.us * S.l - (x - S.s) * S.h;
            long fl = num >= 0 ? num / S.l : -((-num + S.l - 1) / S.l);
            if (fl >= 1) total += fl;
        }
    }
    return total;
}

mpz_class NewtonPolygon::phi_index() const { return mpz_class(phi_.degree()) * polygon_index(); }

bool is_admissible(const PhiExpansion& e, const mpz_class& p) {
    if (!is_prime(p)) throw std::invalid_argument("is_admissible: p is not prime");
    if (!e.phi.is_monic() || e.phi.degree() < 1)
        throw std::invalid_argument("is_admissible: phi must be monic of degree >= 1");
    ModPoly phibar = reduce_mod_p(e.phi, p);
    std::vector<std::pair<long, long>> pts;
    std::vector<Valuation> ords;
    for (size_t i = 0; i < e.terms.size(); ++i) {
        Valuation v = gauss_valuation(e.terms[i], p);
        ords.push_back(v);
        if (!v.is_infinite()) pts.emplace_back(static_cast<long>(i), v.value());
    }
    if (pts.empty()) return true;  // expansion of zero: nothing to certify
    auto hull = lower_hull(std::move(pts));
    auto sides = principal_sides(hull);
    std::vector<std::pair<long, long>> verts;
    verts.push_back(hull.front());
    for (const Side& s : sides) verts.emplace_back(s.end_x(), s.end_y());
    for (const auto& [x, y] : verts) {
        // normalize a_x by its content power of p and reduce mod (p, phi)
        const IntPoly& a = e.terms[static_cast<size_t>(x)];
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(y));
        std::vector<mpz_class> c;
        c.reserve(a.coeffs().size());
        for (const mpz_class& ai : a.coeffs()) {
            mpz_class q;
            mpz_divexact(q.get_mpz_t(), ai.get_mpz_t(), pw.get_mpz_t());
            c.push_back(q);
        }
        ModPoly norm = reduce_mod_p(IntPoly::from_coeffs(std::move(c)), p);
        if (norm.mod(phibar).is_zero()) return false;
    }
    return true;
}

mpz_class NewtonPolygon::single_side_index(long l, long h) {
    if (l < 1 || h < 0) throw std::invalid_argument("single_side_index: need l >= 1, h >= 0");
    mpz_class L = l, H = h, G = std::gcd(l, h);
    return ((L - 1) * (H - 1) + G - 1) / 2;
}

}  // namespace purindex

#include "purindex/ore.hpp"

namespace purindex {

bool dedekind_divides_index(const IntPoly& f, const mpz_class& p) {
    if (!f.is_monic() || f.degree() < 1)
        throw std::invalid_argument("dedekind_divides_index: f must be monic of degree >= 1");
    if (!is_prime(p)) throw std::invalid_argument("dedekind_divides_index: p must be prime");
    auto factors = factor_mod_p(reduce_mod_p(f, p));
    // M = (f - prod g_i^{l_i}) / p with g_i the canonical lifts.
    IntPoly prod = IntPoly::constant(1);
    for (const auto& [gbar, l] : factors) prod = prod * lift_canonical(gbar).pow(l);
    IntPoly diff = f - prod;
    std::vector<mpz_class> mc;
    for (const auto& a : diff.coeffs()) {
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
        mc.push_back(q);
    }
    ModPoly Mbar = ModPoly::from_coeffs(p, std::move(mc));
    for (const auto& [gbar, l] : factors) {
        if (l < 2) continue;
        if (Mbar.is_zero() || Mbar.mod(gbar).is_zero()) return true;
    }
    return false;
}

OreResult ore_analyze(const IntPoly& f, const mpz_class& p) {
    if (!f.is_monic() || f.degree() < 1)
        throw std::invalid_argument("ore_analyze: f must be monic of degree >= 1");
    if (!is_prime(p)) throw std::invalid_argument("ore_analyze: p must be prime");
    OreResult res;
    res.p = p;
    res.dedekind_divides = dedekind_divides_index(f, p);
    res.index_lower = 0;
    res.p_regular = true;
    for (const auto& [phibar, l] : factor_mod_p(reduce_mod_p(f, p))) {
        PhiReport rep;
        rep.phi = lift_canonical(phibar);
        rep.multiplicity = static_cast<long>(l);
        if (l == 1) {
            // Simple factor: unramified contribution, no polygon needed.
            rep.phi_index = 0;
            rep.regular = true;
            res.shapes.push_back({1, phibar.degree()});
            res.factors.push_back(std::move(rep));
            continue;
        }
        NewtonPolygon poly(f, rep.phi, p);
        rep.phi_index = poly.phi_index();
        rep.regular = poly.is_regular();
        res.index_lower += rep.phi_index;
        if (rep.regular) {
            for (size_t k = 0; k < poly.sides().size(); ++k) {
                const Side& S = poly.sides()[k];
                for (const auto& [psi, mult] : poly.residual(k).factor()) {
                    (void)mult;  // squarefree: every multiplicity is 1
                    res.shapes.push_back({S.e_red, phibar.degree() * psi.degree()});
                }
            }
        } else {
            res.p_regular = false;
        }
        res.factors.push_back(std::move(rep));
    }
    if (res.p_regular)
        res.index_exact = res.index_lower;
    else
        res.shapes.clear();  // incomplete shape lists are not reported
    return res;
}

}  // namespace purindex

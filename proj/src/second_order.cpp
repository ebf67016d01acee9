#include "purindex/second_order.hpp"

#include <numeric>

namespace purindex {

namespace {

mpz_class pow_ui(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

}  // namespace

bool order2_in_scope(long n, const mpz_class& m, const mpz_class& p) {
    if (n < 2 || m == 0 || !is_prime(p)) return false;
    Valuation sv = p_adic_val(m, p);
    long s1 = sv.value();
    if (s1 < 1 || s1 >= n) return false;
    long D = std::gcd(n, s1);
    if (D <= 1) return false;
    // D must be a power of p.
    mpz_class d = D;
    while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t()) != 0) d /= p;
    return d == 1;
}

Order2Result order2_analyze(long n, const mpz_class& m, const mpz_class& p) {
    if (!order2_in_scope(n, m, p))
        throw std::invalid_argument("order2_analyze: out of scope for this (n, m, p)");
    Order2Result R;
    R.n = n;
    R.m = m;
    R.p = p;
    R.s1 = p_adic_val(m, p).value();
    R.D = std::gcd(n, R.s1);
    R.e1 = n / R.D;
    R.h1 = R.s1 / R.D;
    mpz_class mp = m / pow_ui(p, static_cast<unsigned long>(R.s1));
    R.phi2 = IntPoly::pure(R.e1, pow_ui(p, static_cast<unsigned long>(R.h1)) * mp);
    R.H = R.e1 * R.s1;

    IntPoly f = IntPoly::pure(n, m);
    PhiExpansion exp = phi_expansion(f, R.phi2);
    if (exp.terms[0].is_zero())
        throw std::invalid_argument("order2_analyze: phi2 divides f (f is reducible)");
    // All expansion terms of x^n - m by x^e1 - c are constants.
    std::vector<mpz_class> a;
    for (const auto& t : exp.terms) {
        if (t.degree() > 0)
            throw std::logic_error("order2_analyze: non-constant phi2-expansion term");
        a.push_back(t.coeff(0));
    }
    std::vector<long> nu(a.size(), -1);
    for (long i = 0; i <= R.D; ++i) {
        if (a[i] == 0) continue;  // only possible strictly inside (0, D)
        nu[i] = p_adic_val(a[i], p).value();
        R.mu_points.emplace_back(i, R.e1 * nu[i] + i * R.e1 * R.h1);
    }
    auto hull = lower_hull(R.mu_points);
    R.sides = principal_sides(hull);
    if (R.sides.empty() || R.sides.back().end_x() != R.D || R.sides.back().end_y() != R.H)
        throw std::logic_error("order2_analyze: principal part does not end at (D, H)");

    R.all_squarefree = true;
    std::vector<Order2Prime> census;
    for (const Side& S : R.sides) {
        std::vector<mpz_class> c;
        for (long j = 0; j <= S.d; ++j) {
            long i = S.s + j * S.e_red;
            long mu_i = (nu[i] >= 0) ? R.e1 * nu[i] + i * R.e1 * R.h1 : -1;
            if (nu[i] >= 0 && S.on_line(i, mu_i)) {
                mpz_class unit = a[i] / pow_ui(p, static_cast<unsigned long>(nu[i]));
                c.push_back(unit);
            } else {
                c.emplace_back(0);
            }
        }
        ModPoly res = ModPoly::from_coeffs(p, std::move(c));
        auto fac = factor_mod_p(res);
        bool sf = true;
        for (const auto& [psi, mult] : fac) {
            if (mult > 1) sf = false;
            census.push_back({R.e1 * S.e_red, psi.degree()});
        }
        if (!sf) R.all_squarefree = false;
        R.residuals.push_back(std::move(res));
    }

    // ind2: lattice points strictly above the floor H, on or under N2.
    R.ind2 = 0;
    for (const Side& S : R.sides) {
        for (long x = S.s + 1; x <= S.s + S.l; ++x) {
            if (x < 1) continue;
            long num = S.us * S.l - (x - S.s) * S.h;
            long fl = num >= 0 ? num / S.l : -((-num + S.l - 1) / S.l);
            if (fl > R.H) R.ind2 += (fl - R.H);
        }
    }

    if (R.all_squarefree) R.census = std::move(census);
    return R;
}

}  // namespace purindex

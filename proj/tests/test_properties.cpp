#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "doctest.h"
#include "purindex/oracle.hpp"
#include "purindex/pure.hpp"

using namespace purindex;

namespace {

mpz_class rand_mpz(SplitMix64& rng, long digits) {
    mpz_class out = 0;
    for (long i = 0; i < digits; ++i) out = out * 10 + static_cast<long>(rng.next() % 10);
    if (rng.next() & 1) out = -out;
    return out;
}

IntPoly rand_poly(SplitMix64& rng, long maxdeg, long coeff_mod, bool monic) {
    long d = 1 + static_cast<long>(rng.next() % static_cast<unsigned long>(maxdeg));
    std::vector<mpz_class> c(static_cast<size_t>(d) + 1);
    for (auto& a : c) {
        a = static_cast<long>(rng.next() % static_cast<unsigned long>(2 * coeff_mod + 1));
        a -= coeff_mod;
    }
    if (monic)
        c.back() = 1;
    else if (c.back() == 0)
        c.back() = 1;
    return IntPoly::from_coeffs(std::move(c));
}

const mpz_class kPrimes[] = {2, 3, 5, 7, 11, 13};

// Gauss-type valuation with v(p) = e1 and v(x) = h1, the first-order scale.
std::optional<long> omega1(const IntPoly& a, const mpz_class& p, long e1, long h1) {
    std::optional<long> best;
    for (long j = 0; j <= a.degree(); ++j) {
        Valuation v = p_adic_val(a.coeff(j), p);
        if (v.is_infinite()) continue;
        long cand = e1 * v.value() + j * h1;
        if (!best || cand < *best) best = cand;
    }
    return best;
}

// Second-order valuation from the phi2-expansion, assigning phi2 the polygon
// floor mu2 = e1 * s1.
long omega2(const IntPoly& g, const IntPoly& phi2, const mpz_class& p, long e1, long h1,
            long mu2) {
    PhiExpansion e = phi_expansion(g, phi2);
    std::optional<long> best;
    for (size_t i = 0; i < e.terms.size(); ++i) {
        auto v1 = omega1(e.terms[i], p, e1, h1);
        if (!v1) continue;
        long cand = *v1 + static_cast<long>(i) * mu2;
        if (!best || cand < *best) best = cand;
    }
    REQUIRE(best.has_value());
    return *best;
}

long brute_polygon_index(const std::vector<std::pair<long, long>>& verts) {
    if (verts.size() < 2) return 0;
    long count = 0;
    for (size_t k = 0; k + 1 < verts.size(); ++k) {
        auto [x0, y0] = verts[k];
        auto [x1, y1] = verts[k + 1];
        for (long x = x0 + (k == 0 ? 1 : 1); x <= x1; ++x) {
            if (x == x0) continue;
            // points strictly under or on the segment at abscissa x, y >= 1
            // y <= y0 + (x - x0)(y1 - y0)/(x1 - x0)
            long num = y0 * (x1 - x0) + (x - x0) * (y1 - y0);
            long den = x1 - x0;
            long ymax = num / den;  // floor for nonnegative num
            if (num < 0) ymax = -(((-num) + den - 1) / den);
            count += std::max(0L, ymax);
        }
    }
    return count;
}

}  // namespace

TEST_CASE("nu_p is a valuation on Z") {
    SplitMix64 rng(global_seed() ^ fnv1a("nu_p axioms"));
    for (int iter = 0; iter < 3000; ++iter) {
        const mpz_class& p = kPrimes[rng.next() % 6];
        mpz_class a = rand_mpz(rng, 1 + static_cast<long>(rng.next() % 12));
        mpz_class b = rand_mpz(rng, 1 + static_cast<long>(rng.next() % 12));
        // plant extra powers of p half the time
        if (rng.next() & 1) {
            mpz_class pw;
            mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), rng.next() % 6);
            a *= pw;
        }
        Valuation va = p_adic_val(a, p), vb = p_adic_val(b, p);
        CHECK(p_adic_val(a * b, p) == va + vb);
        Valuation vsum = p_adic_val(a + b, p);
        CHECK(vsum >= min(va, vb));
        if (va != vb) CHECK(vsum == min(va, vb));
    }
}

TEST_CASE("the Gauss valuation is a valuation on Z[x]") {
    SplitMix64 rng(global_seed() ^ fnv1a("gauss axioms"));
    for (int iter = 0; iter < 1000; ++iter) {
        const mpz_class& p = kPrimes[rng.next() % 4];
        IntPoly f = rand_poly(rng, 8, 1000, false);
        IntPoly g = rand_poly(rng, 8, 1000, false);
        Valuation vf = gauss_valuation(f, p), vg = gauss_valuation(g, p);
        CHECK(gauss_valuation(f * g, p) == vf + vg);  // Gauss's lemma
        CHECK(gauss_valuation(f + g, p) >= min(vf, vg));
    }
}

TEST_CASE("the second-order valuation is a valuation") {
    struct Scope {
        long n;
        long m;
        long p;
    };
    SplitMix64 rng(global_seed() ^ fnv1a("omega2 axioms"));
    for (const Scope& sc : {Scope{6, 12, 2}, Scope{4, 68, 2}, Scope{9, 54, 3}}) {
        Order2Result r = order2_analyze(sc.n, sc.m, sc.p);
        long mu2 = r.H;  // e1 * s1, strictly above e1 * h1 = omega1(phi2)
        for (int iter = 0; iter < 200; ++iter) {
            IntPoly g = rand_poly(rng, 2 * r.e1, 200, false);
            IntPoly h = rand_poly(rng, 2 * r.e1, 200, false);
            long wg = omega2(g, r.phi2, sc.p, r.e1, r.h1, mu2);
            long wh = omega2(h, r.phi2, sc.p, r.e1, r.h1, mu2);
            CHECK(omega2(g * h, r.phi2, sc.p, r.e1, r.h1, mu2) == wg + wh);
            if (!(g + h).is_zero())
                CHECK(omega2(g + h, r.phi2, sc.p, r.e1, r.h1, mu2) >= std::min(wg, wh));
        }
    }
}

TEST_CASE("factorization round-trips exhaustively at small scale") {
    for (long n = 2; n <= 1000000; ++n) {
        mpz_class rebuilt = 1;
        for (const PrimePower& q : factorize(n)) {
            CHECK(is_prime(q.p));
            mpz_class pw;
            mpz_pow_ui(pw.get_mpz_t(), q.p.get_mpz_t(), q.e);
            rebuilt *= pw;
        }
        if (rebuilt != n) {
            REQUIRE(rebuilt == n);  // stop the flood on first failure
        }
    }
}

TEST_CASE("binomial valuations match explicit binomials") {
    for (const mpz_class& p : {mpz_class(2), mpz_class(3), mpz_class(5), mpz_class(7)}) {
        for (unsigned long n = 0; n <= 200; ++n) {
            for (unsigned long k = 0; k <= n; ++k) {
                mpz_class binom;
                mpz_bin_uiui(binom.get_mpz_t(), n, k);
                CHECK(binom_val(p, n, k) == p_adic_val(binom, p));
            }
        }
    }
}

TEST_CASE("irreducible counts satisfy the degree identity") {
    // sum over d | f of d * N_d(p) = p^f
    for (const mpz_class& p : {mpz_class(2), mpz_class(3), mpz_class(5), mpz_class(7)}) {
        for (unsigned long f = 1; f <= 12; ++f) {
            mpz_class sum = 0;
            for (unsigned long d = 1; d <= f; ++d)
                if (f % d == 0) sum += mpz_class(d) * count_monic_irreducibles(p, d);
            mpz_class pf;
            mpz_pow_ui(pf.get_mpz_t(), p.get_mpz_t(), f);
            CHECK(sum == pf);
        }
    }
}

TEST_CASE("phi-expansion reconstructs exactly") {
    SplitMix64 rng(global_seed() ^ fnv1a("expansion fuzz"));
    for (int iter = 0; iter < 300; ++iter) {
        IntPoly f = rand_poly(rng, 40, 1000000, false);
        IntPoly phi = rand_poly(rng, 6, 50, true);
        PhiExpansion e = phi_expansion(f, phi);
        CHECK(reconstruct(e) == f);
        for (const IntPoly& t : e.terms) CHECK(t.degree() < phi.degree());
        CHECK(e.admissible);
    }
}

TEST_CASE("admissible rewrites preserve polygon and residuals") {
    SplitMix64 rng(global_seed() ^ fnv1a("admissible rewrites"));
    int checked = 0;
    for (int iter = 0; iter < 400 && checked < 150; ++iter) {
        const mpz_class& p = kPrimes[rng.next() % 3];
        IntPoly f = rand_poly(rng, 10, 400, true);
        auto fac = factor_mod_p(reduce_mod_p(f, p));
        if (fac.empty()) continue;
        IntPoly phi = lift_canonical(fac[rng.next() % fac.size()].first);
        if (phi.degree() < 1) continue;
        std::optional<NewtonPolygon> np;
        try {
            np.emplace(f, phi, p);
        } catch (const std::invalid_argument&) {
            continue;  // phi divides f exactly
        }
        if (np->sides().empty()) continue;

        // rewrite: move p^w * c * phi from term i into term i+1, with w large
        // enough that every ordinate keeps its value at hull precision; such
        // rewrites stay admissible and must reproduce polygon and residuals
        PhiExpansion e = phi_expansion(f, phi);
        long wmax = 0;
        for (const IntPoly& t : e.terms) {
            Valuation v = gauss_valuation(t, p);
            if (!v.is_infinite()) wmax = std::max(wmax, v.value());
        }
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(wmax + 1));
        for (int moves = 0; moves < 3; ++moves) {
            size_t i = rng.next() % (e.terms.size() - 1);
            IntPoly c = rand_poly(rng, std::max(1L, phi.degree() - 1), 20, false) * pw;
            e.terms[i] = e.terms[i] - c * phi;
            e.terms[i + 1] = e.terms[i + 1] + c;
        }
        CHECK(reconstruct(e) == f);
        CHECK(is_admissible(e, p));
        if (!is_admissible(e, p)) continue;
        ++checked;

        // recompute the polygon from the rewritten ordinates
        std::vector<std::pair<long, long>> pts;
        for (size_t i = 0; i < e.terms.size(); ++i) {
            Valuation v = gauss_valuation(e.terms[i], p);
            if (!v.is_infinite()) pts.emplace_back(static_cast<long>(i), v.value());
        }
        auto sides = principal_sides(lower_hull(pts));
        REQUIRE(sides.size() == np->sides().size());
        for (size_t k = 0; k < sides.size(); ++k) {
            CHECK(sides[k].s == np->sides()[k].s);
            CHECK(sides[k].us == np->sides()[k].us);
            CHECK(sides[k].l == np->sides()[k].l);
            CHECK(sides[k].h == np->sides()[k].h);
        }

        // residual polynomials agree coefficientwise
        const auto& F = np->residue_field();
        ModPoly phibar = reduce_mod_p(phi, p);
        for (size_t k = 0; k < sides.size(); ++k) {
            const Side& s = sides[k];
            ExtPoly want = np->residual(k);
            for (long j = 0; j <= s.d; ++j) {
                long x = s.s + j * s.e_red;
                long y = s.us - j * s.h_red;
                ExtField::Elem got = F->zero();
                const IntPoly& a = e.terms[static_cast<size_t>(x)];
                if (gauss_valuation(a, p) == Valuation::finite(y)) {
                    mpz_class pw;
                    mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(y));
                    std::vector<mpz_class> c;
                    for (const mpz_class& ai : a.coeffs()) {
                        mpz_class q;
                        mpz_divexact(q.get_mpz_t(), ai.get_mpz_t(), pw.get_mpz_t());
                        c.push_back(q);
                    }
                    got = F->reduce(reduce_mod_p(IntPoly::from_coeffs(std::move(c)), p));
                }
                CHECK(got == want.coeff(j));
            }
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("mod-p factorizations rebuild their input") {
    SplitMix64 rng(global_seed() ^ fnv1a("factor fuzz"));
    for (int iter = 0; iter < 400; ++iter) {
        const mpz_class& p = kPrimes[rng.next() % 5];
        IntPoly f = rand_poly(rng, 12, 1000, false);
        ModPoly fbar = reduce_mod_p(f, p);
        if (fbar.is_zero() || fbar.degree() < 1) continue;
        ModPoly rebuilt = ModPoly::from_coeffs(p, {fbar.leading()});
        for (const auto& [g, mult] : factor_mod_p(fbar)) {
            CHECK(is_irreducible_mod(g));
            CHECK(g.leading() == 1);
            for (unsigned long i = 0; i < mult; ++i) rebuilt = rebuilt * g;
        }
        CHECK(rebuilt == fbar);
    }
}

TEST_CASE("extension fields are fields and Frobenius is an automorphism") {
    SplitMix64 rng(global_seed() ^ fnv1a("field fuzz"));
    for (const auto& mod : {ModPoly::from_coeffs(2, {1, 1, 0, 1}),   // F_8
                            ModPoly::from_coeffs(3, {1, 0, 1}),      // F_9
                            ModPoly::from_coeffs(5, {1, 1, 0, 1})})  // F_125
    {
        auto F = std::make_shared<const ExtField>(mod);
        // exhaustive inverses over all nonzero elements
        long q = F->q().get_si();
        long fixed = 0;
        for (long code = 0; code < q; ++code) {
            std::vector<mpz_class> c;
            long rest = code;
            for (long i = 0; i < F->degree(); ++i) {
                c.push_back(rest % F->p().get_si());
                rest /= F->p().get_si();
            }
            ExtField::Elem a = F->reduce(ModPoly::from_coeffs(F->p(), std::move(c)));
            if (F->is_zero(a)) continue;
            CHECK(F->mul(a, F->inv(a)) == F->one());
            if (F->frobenius(a) == a) ++fixed;
        }
        CHECK(fixed == F->p().get_si() - 1);  // nonzero fixed points of x -> x^p

        for (int iter = 0; iter < 100; ++iter) {
            ExtField::Elem a = F->reduce(reduce_mod_p(rand_poly(rng, 4, 50, false), F->p()));
            ExtField::Elem b = F->reduce(reduce_mod_p(rand_poly(rng, 4, 50, false), F->p()));
            CHECK(F->frobenius(F->add(a, b)) == F->add(F->frobenius(a), F->frobenius(b)));
            CHECK(F->frobenius(F->mul(a, b)) == F->mul(F->frobenius(a), F->frobenius(b)));
        }
    }
}

TEST_CASE("reduction mod p is a ring homomorphism") {
    SplitMix64 rng(global_seed() ^ fnv1a("reduction fuzz"));
    for (int iter = 0; iter < 300; ++iter) {
        const mpz_class& p = kPrimes[rng.next() % 6];
        IntPoly f = rand_poly(rng, 10, 100000, false);
        IntPoly g = rand_poly(rng, 10, 100000, false);
        CHECK(reduce_mod_p(f * g, p) == reduce_mod_p(f, p) * reduce_mod_p(g, p));
        CHECK(reduce_mod_p(f + g, p) == reduce_mod_p(f, p) + reduce_mod_p(g, p));
    }
}

TEST_CASE("random polygons: convexity, length, index, residual shape") {
    SplitMix64 rng(global_seed() ^ fnv1a("polygon fuzz"));
    int built = 0;
    for (int iter = 0; iter < 600 && built < 250; ++iter) {
        const mpz_class& p = kPrimes[rng.next() % 3];
        IntPoly f = rand_poly(rng, 14, 10000, true);
        auto fac = factor_mod_p(reduce_mod_p(f, p));
        if (fac.empty()) continue;
        const auto& pick = fac[rng.next() % fac.size()];
        IntPoly phi = lift_canonical(pick.first);
        std::optional<NewtonPolygon> np;
        try {
            np.emplace(f, phi, p);
        } catch (const std::invalid_argument&) {
            continue;
        }
        ++built;

        CHECK(np->principal_length() == static_cast<long>(pick.second));

        const auto& sides = np->sides();
        for (size_t k = 0; k + 1 < sides.size(); ++k) {
            // slopes -h/l strictly increase: h0*l1 > h1*l0
            CHECK(sides[k].h * sides[k + 1].l > sides[k + 1].h * sides[k].l);
        }
        CHECK(np->polygon_index() == brute_polygon_index(np->vertices()));
        if (sides.size() == 1 && sides[0].s == 0 && sides[0].us == sides[0].h) {
            CHECK(np->polygon_index() ==
                  NewtonPolygon::single_side_index(sides[0].l, sides[0].h));
        }
        for (size_t k = 0; k < sides.size(); ++k) {
            ExtPoly r = np->residual(k);
            CHECK(r.degree() == sides[k].d);
            CHECK_FALSE(np->residue_field()->is_zero(r.coeff(0)));
            CHECK_FALSE(np->residue_field()->is_zero(r.coeff(sides[k].d)));
        }
    }
    CHECK(built >= 200);
}

TEST_CASE("index bounds against the discriminant and the oracle") {
    SplitMix64 rng(global_seed() ^ fnv1a("ore sampling"));
    int oracle_checked = 0;
    for (int iter = 0; iter < 220; ++iter) {
        long n = 2 + static_cast<long>(rng.next() % 9);
        long m = static_cast<long>(rng.next() % 101) - 50;
        if (!is_irreducible_pure(n, m)) continue;
        IntPoly f = IntPoly::pure(n, m);
        // disc(x^n - m) = +- n^n m^(n-1)
        mpz_class disc = 1;
        for (long i = 0; i < n; ++i) disc *= n;
        for (long i = 0; i + 1 < n; ++i) disc *= m;
        for (const PrimePower& q : factorize(mpz_class(n) * m)) {
            OreResult r = ore_analyze(f, q.p);
            Valuation dv = p_adic_val(disc, q.p);
            CHECK(mpz_class(2) * r.index_lower <= dv.value());
            if (r.p_regular) {
                long total = 0;
                for (const SplittingShape& s : r.shapes) total += s.e * s.f_res;
                CHECK(total == n);
            }
            if (q.p <= 7 && oracle_checked < 60) {
                OracleReport rep = oracle_analyze(f, q.p);
                CHECK(r.dedekind_divides == (rep.index_valuation > 0));
                if (r.index_exact) {
                    CHECK(*r.index_exact == rep.index_valuation);
                    ++oracle_checked;
                } else {
                    CHECK(r.index_lower <= rep.index_valuation);
                }
                CHECK(mpz_class(2) * rep.index_valuation <= dv.value());
            }
        }
    }
    CHECK(oracle_checked >= 20);
}

TEST_CASE("order-2 refinements stay below the truth, exactly when squarefree") {
    int exact_hits = 0, bound_hits = 0;
    for (long n = 4; n <= 12; ++n) {
        for (long m = -50; m <= 50; ++m) {
            if (!is_irreducible_pure(n, m)) continue;
            for (long pl : {2L, 3L, 5L}) {
                mpz_class p = pl;
                if (!order2_in_scope(n, m, p)) continue;
                Order2Result r = order2_analyze(n, m, p);
                OreResult ore = ore_analyze(IntPoly::pure(n, m), p);
                OracleReport rep = oracle_analyze(IntPoly::pure(n, m), p);
                mpz_class refined = ore.index_lower + r.ind2;
                CHECK(refined <= rep.index_valuation);
                if (r.all_squarefree) {
                    CHECK(refined == rep.index_valuation);
                    ++exact_hits;
                    REQUIRE(r.census.has_value());
                    long total = 0;
                    std::map<long, long> by_f;
                    for (const Order2Prime& q : *r.census) {
                        total += q.e * q.f_res;
                        by_f[q.f_res] += 1;
                    }
                    CHECK(total == n);
                    std::map<long, long> oracle_f(rep.census.begin(), rep.census.end());
                    CHECK(by_f == oracle_f);
                } else {
                    ++bound_hits;
                }
            }
        }
    }
    CHECK(exact_hits >= 10);
    CHECK(bound_hits >= 1);
}

TEST_CASE("census soundness and verdict exclusivity under fuzz") {
    SplitMix64 rng(global_seed() ^ fnv1a("verdict fuzz"));
    int verified_certs = 0, verified_wits = 0;
    for (int iter = 0; iter < 250; ++iter) {
        long n = 2 + static_cast<long>(rng.next() % 7);
        long m = static_cast<long>(rng.next() % 121) - 60;
        if (!is_irreducible_pure(n, m)) continue;
        AnalyzeResult r = analyze(PureField(n, m));
        CHECK_FALSE((r.witness.has_value() && r.certificate.has_value()));
        CHECK(r.witness.has_value() == (r.status == Verdict::Monogenic));
        CHECK(r.certificate.has_value() == (r.status == Verdict::NotMonogenic));

        for (const ConditionHit& hit : r.hits) {
            if (!hit.census_available) {
                CHECK_FALSE(hit.evidence.has_value());
                continue;
            }
            long total_primes = 0, at_f = 0;
            for (const auto& [fdeg, count] : hit.counts) {
                total_primes += count;
                if (hit.evidence && fdeg == hit.evidence->f_res) at_f = count;
            }
            if (hit.evidence) {
                // the evidence count must come from the census and stay below
                // the total number of primes above p
                CHECK(hit.evidence->P_f == at_f);
                CHECK(hit.evidence->P_f <= total_primes);
                CHECK(mpz_class(hit.evidence->P_f) > hit.evidence->N_f);
            }
        }

        if (r.certificate && r.certificate->evidence.p <= 50) {
            OracleReport rep =
                oracle_analyze(IntPoly::pure(n, m), r.certificate->evidence.p);
            long oracle_P = 0;
            for (const auto& [fdeg, count] : rep.census)
                if (fdeg == r.certificate->evidence.f_res) oracle_P = count;
            CHECK(oracle_P == r.certificate->evidence.P_f);
            ++verified_certs;
        }
        if (r.witness && verified_wits < 40) {
            const IntPoly& g = r.witness->g;
            for (const PrimePower& q : factorize(mpz_class(g.degree()) * r.witness->a)) {
                if (q.p > 50) continue;
                CHECK(oracle_analyze(g, q.p).index_valuation == 0);
            }
            ++verified_wits;
        }
    }
    CHECK(verified_wits >= 10);
}

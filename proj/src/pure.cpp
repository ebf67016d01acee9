#include "purindex/pure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "purindex/oracle.hpp"

namespace purindex {

namespace {

// Sorted distinct primes dividing n*m.
std::vector<mpz_class> support_primes(long n, const mpz_class& m) {
    std::vector<mpz_class> out;
    for (const PrimePower& q : factorize(mpz_class(n))) out.push_back(q.p);
    for (const PrimePower& q : factorize(m)) {
        if (std::find(out.begin(), out.end(), q.p) == out.end()) out.push_back(q.p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool divides(const mpz_class& p, const mpz_class& a) {
    return mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t()) != 0;
}

}  // namespace

std::optional<IntPoly> pure_reducible_witness(long n, const mpz_class& m) {
    if (n < 2) throw std::invalid_argument("pure_reducible_witness: n must be >= 2");
    if (m == 0) return IntPoly::monomial(1);
    if (m == 1) return IntPoly::pure(1, 1);
    for (const PrimePower& q : factorize(mpz_class(n))) {
        unsigned long qq = q.p.get_ui();
        if (qq == 2 && m < 0) continue;  // a negative number has no square root
        mpz_class b;
        if (mpz_root(b.get_mpz_t(), m.get_mpz_t(), qq) != 0)
            return IntPoly::pure(n / static_cast<long>(qq), b);
    }
    if (n % 4 == 0 && m < 0) {
        mpz_class mm = -m;
        if (mpz_divisible_ui_p(mm.get_mpz_t(), 4)) {
            mpz_class k4 = mm / 4, k;
            if (mpz_root(k.get_mpz_t(), k4.get_mpz_t(), 4) != 0) {
                // x^n + 4k^4 = (x^(n/2) - 2k x^(n/4) + 2k^2)(x^(n/2) + ...)
                std::vector<mpz_class> c(static_cast<size_t>(n / 2) + 1, mpz_class(0));
                c[0] = 2 * k * k;
                c[static_cast<size_t>(n / 4)] = -2 * k;
                c[static_cast<size_t>(n / 2)] = 1;
                return IntPoly::from_coeffs(std::move(c));
            }
        }
    }
    return std::nullopt;
}

bool is_irreducible_pure(long n, const mpz_class& m) {
    return !pure_reducible_witness(n, m).has_value();
}

bool eisenstein_at(const IntPoly& f, const mpz_class& p) {
    if (!is_prime(p)) throw std::invalid_argument("eisenstein_at: p must be prime");
    long n = f.degree();
    if (n < 1) return false;
    if (divides(p, f.coeff(n))) return false;
    for (long i = 1; i < n; ++i)
        if (!divides(p, f.coeff(i))) return false;
    if (!divides(p, f.coeff(0))) return false;
    mpz_class c0 = f.coeff(0) / p;
    return c0 != 0 && !divides(p, c0);
}

std::optional<mpz_class> shifted_eisenstein(const IntPoly& f, const mpz_class& p,
                                            long bound) {
    for (long a = 0; a <= bound; ++a) {
        for (long sign : {+1, -1}) {
            if (a == 0 && sign < 0) continue;
            mpz_class c(sign * a);
            IntPoly shift = IntPoly::from_coeffs({c, 1});
            if (eisenstein_at(f.compose(shift), p)) return c;
        }
    }
    return std::nullopt;
}

Valuation closed_val(const mpz_class& m, const mpz_class& p) {
    if (!is_prime(p)) throw std::invalid_argument("closed_val: p must be prime");
    if (m == 0 || m == 1 || (m == -1 && p != 2)) return Valuation::infinity();
    if (divides(p, m)) return p_adic_val(m, p);
    // nu >= 1 by Fermat; climb powers of p until m^p stops matching m. The
    // power is taken mod p^(v+1), never in full.
    long v = 1;
    mpz_class mod = p * p;
    while (true) {
        mpz_class r, mm;
        mpz_powm(r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t(), mod.get_mpz_t());
        mpz_mod(mm.get_mpz_t(), m.get_mpz_t(), mod.get_mpz_t());
        if (r != mm) break;
        ++v;
        mod *= p;
    }
    return Valuation::finite(v);
}

PureField::PureField(long n, mpz_class m) : n_(n), m_(std::move(m)) {
    if (n_ < 2) throw std::invalid_argument("PureField: degree must be >= 2");
    if (m_ == 0 || m_ == 1)
        throw std::invalid_argument("PureField: m must lie outside {0, 1}");
    f_ = IntPoly::pure(n_, m_);
    if (auto w = pure_reducible_witness(n_, m_))
        throw std::invalid_argument("PureField: " + f_.str() +
                                    " is reducible, divisible by " + w->str());
}

PrimeProfile prime_profile(long n, const mpz_class& m, const mpz_class& p) {
    if (n < 1) throw std::invalid_argument("prime_profile: n must be >= 1");
    if (m == 0) throw std::invalid_argument("prime_profile: m must be nonzero");
    if (!is_prime(p)) throw std::invalid_argument("prime_profile: p must be prime");
    PrimeProfile pr;
    pr.p = p;
    mpz_class nn(n), t, u;
    pr.r = static_cast<long>(mpz_remove(t.get_mpz_t(), nn.get_mpz_t(), p.get_mpz_t()));
    pr.t = static_cast<long>(t.get_si());
    pr.s = static_cast<long>(mpz_remove(u.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
    pr.u = u;
    pr.v_closed = closed_val(m, p);
    return pr;
}

IntclosReport integral_closedness_test(const PureField& K) {
    IntclosReport rep;
    rep.closed = true;
    for (const mpz_class& p : support_primes(K.n(), K.m())) {
        IntclosCheck c;
        c.p = p;
        c.v = closed_val(K.m(), p);
        c.ok = (c.v == Valuation::finite(1));
        rep.closed = rep.closed && c.ok;
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

mpz_class index_val_p_divides_m(const PureField& K, const mpz_class& p) {
    if (!is_prime(p)) throw std::invalid_argument("index_val_p_divides_m: p must be prime");
    PrimeProfile pr = prime_profile(K.n(), K.m(), p);
    if (pr.s == 0) throw refusal_error("index_val_p_divides_m: requires p | m");
    if (pr.r >= 1 && divides(p, mpz_class(pr.s)))
        throw refusal_error(
            "index_val_p_divides_m: gcd(n, p, nu_p(m)) = p, where only a strict "
            "lower bound holds; see strict_inequality_case");
    long v = pr.s;
    long d = std::gcd(K.n(), v);
    mpz_class val = mpz_class(K.n() - 1) * (v - 1) + (d - 1);
    val /= 2;  // (n-1)(v-1) and d-1 have equal parity, the sum is even
    // The polygon here is a single side with a separable residual, so the
    // direct computation must agree exactly.
    OreResult ore = ore_analyze(K.f(), p);
    if (!ore.p_regular || !ore.index_exact || *ore.index_exact != val)
        throw std::logic_error(
            "index_val_p_divides_m: closed form disagrees with the polygon computation");
    return val;
}

PurePolygon pure_polygon_p_divides_n(const PureField& K, const mpz_class& p,
                                     const IntPoly& phi) {
    if (!is_prime(p)) throw std::invalid_argument("pure_polygon_p_divides_n: p must be prime");
    PrimeProfile pr = prime_profile(K.n(), K.m(), p);
    if (pr.r == 0 || pr.s != 0)
        throw refusal_error("pure_polygon_p_divides_n: requires p | n and p nmid m");
    ModPoly phibar = reduce_mod_p(phi, p);
    if (!phi.is_monic() || phibar.degree() != phi.degree() || !is_irreducible_mod(phibar))
        throw std::invalid_argument(
            "pure_polygon_p_divides_n: phi must be a monic lift of an irreducible "
            "polynomial mod p");
    ModPoly core = reduce_mod_p(IntPoly::pure(pr.t, K.m()), p);
    if (!core.mod(phibar).is_zero())
        throw std::invalid_argument(
            "pure_polygon_p_divides_n: phi must divide x^t - m mod p");
    long v = pr.v_closed.value();

    NewtonPolygon poly(K.f(), phi, p);

    // The origin ordinate: exactly v when v <= r, at least r+1 otherwise.
    long v0 = poly.ordinates()[0].value();
    bool origin_ok = (v <= pr.r) ? (v0 == v) : (v0 >= pr.r + 1);
    if (!origin_ok)
        throw std::logic_error(
            "pure_polygon_p_divides_n: origin ordinate disagrees with the predicted shape");

    // The whole principal polygon is the lower hull of (0, v0) and the
    // staircase (p^j, r-j).
    std::vector<std::pair<long, long>> pts{{0, v0}};
    long pl = static_cast<long>(p.get_si());
    long pj = 1;
    for (long j = 0; j <= pr.r; ++j) {
        pts.emplace_back(pj, pr.r - j);
        if (j < pr.r) pj *= pl;
    }
    std::vector<Side> predicted = principal_sides(lower_hull(std::move(pts)));
    std::vector<std::pair<long, long>> pv;
    if (!predicted.empty()) {
        pv.emplace_back(predicted[0].s, predicted[0].us);
        for (const Side& sd : predicted) pv.emplace_back(sd.end_x(), sd.end_y());
    }
    if (pv != poly.vertices())
        throw std::logic_error(
            "pure_polygon_p_divides_n: vertex set disagrees with the predicted shape");

    mpz_class sum = 0;
    mpz_class pw;
    long jmax = std::min(pr.r, v - 1);
    for (long j = 1; j <= jmax; ++j) {
        mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(pr.r - j));
        sum += pw;
    }
    mpz_class contribution = sum * phi.degree();
    if (contribution != poly.phi_index())
        throw std::logic_error(
            "pure_polygon_p_divides_n: index formula disagrees with the lattice count");
    return PurePolygon{std::move(poly), v, std::move(contribution)};
}

StrictInequality strict_inequality_case(const PureField& K, const mpz_class& p) {
    if (!is_prime(p)) throw std::invalid_argument("strict_inequality_case: p must be prime");
    PrimeProfile pr = prime_profile(K.n(), K.m(), p);
    if (pr.s == 0 || pr.r == 0 || !divides(p, mpz_class(pr.s)))
        throw refusal_error(
            "strict_inequality_case: requires p | m with gcd(p, nu_p(m), n) = p");
    if (pr.s >= K.n())
        throw refusal_error("strict_inequality_case: requires nu_p(m) < n");
    long d = std::gcd(K.n(), pr.s);
    StrictInequality out;
    out.lower = mpz_class(K.n() - 1) * (pr.s - 1) + (d - 1);
    out.lower /= 2;
    out.strict = false;
    out.basis = StrictBasis::Unjustified;
    if (order2_in_scope(K.n(), K.m(), p)) {
        Order2Result r2 = order2_analyze(K.n(), K.m(), p);
        if (r2.ind2 >= 1) {
            out.strict = true;
            out.basis = StrictBasis::SecondOrder;
            return out;
        }
    }
    if (K.n() <= 60 && p <= 50) {
        OracleReport rep = oracle_analyze(K.f(), p);
        if (mpz_class(rep.index_valuation) <= out.lower)
            throw std::logic_error("strict_inequality_case: the oracle refutes strictness");
        out.strict = true;
        out.basis = StrictBasis::Oracle;
    }
    return out;
}

std::optional<CommonIndexEvidence> common_index_divisor(
    const mpz_class& p, const std::vector<std::pair<long, long>>& census, long n) {
    if (!is_prime(p)) throw std::invalid_argument("common_index_divisor: p must be prime");
    mpz_class total = 0;
    std::map<long, long> counts;
    for (const auto& [e, f] : census) {
        if (e < 1 || f < 1)
            throw std::invalid_argument("common_index_divisor: census entries need e, f >= 1");
        total += mpz_class(e) * f;
        counts[f] += 1;
    }
    if (total != n)
        throw std::invalid_argument("common_index_divisor: incomplete census: sum of e*f is " +
                                    total.get_str() + ", expected " + std::to_string(n));
    for (const auto& [f, P] : counts) {
        mpz_class N = count_monic_irreducibles(p, static_cast<unsigned long>(f));
        if (P > N) return CommonIndexEvidence{p, f, P, N};
    }
    return std::nullopt;
}

namespace {

bool condition_holds(int c, const PrimeProfile& pr, const mpz_class& m) {
    const mpz_class& p = pr.p;
    const bool p_odd = (p != 2);
    // Valuation thresholds p+1 only matter for p | n, so p fits a long here.
    auto at_least = [](const Valuation& v, long k) { return v >= Valuation::finite(k); };
    switch (c) {
        case 1:
            return p_odd && mpz_class(pr.r) >= p &&
                   at_least(p_adic_val(1 - m, p), p.get_si() + 1);
        case 2:
            return p_odd && pr.t % 2 == 1 && at_least(p_adic_val(1 + m, p), p.get_si() + 1);
        case 3:
            return p == 3 && pr.t % 2 == 0 && at_least(p_adic_val(1 + m, p), 4);
        case 4:
            return p == 2 && pr.s == 0 && pr.r == 2 && at_least(p_adic_val(m - 1, p), 4);
        case 5:
            return p == 2 && pr.s == 0 && pr.r >= 3 && at_least(p_adic_val(m - 1, p), 5);
        case 6:
            return p_odd && pr.r == pr.s && pr.t > 1 &&
                   gcd(mpz_class(pr.t), mpz_class(p - 1)) == 1 && mpz_class(pr.r) >= p &&
                   at_least(closed_val(pr.u, p), p.get_si() + 1);
        case 7:
            return p == 2 && pr.r == 2 && pr.s == 2 && at_least(p_adic_val(pr.u - 1, p), 4);
        case 8:
            return p == 2 && pr.r == pr.s && pr.r >= 3 && at_least(p_adic_val(pr.u - 1, p), 5);
        default:
            throw std::logic_error("condition_holds: condition id out of range");
    }
}

std::vector<std::pair<long, long>> pf_table(const std::vector<std::pair<long, long>>& ef) {
    std::map<long, long> counts;
    for (const auto& [e, f] : ef) counts[f] += 1;
    return std::vector<std::pair<long, long>>(counts.begin(), counts.end());
}

// Verify a condition hit with an actual residue census, trying the cheapest
// exact route first. No census => no claim.
ConditionHit build_hit(const PureField& K, int cond, const mpz_class& p) {
    ConditionHit hit;
    hit.condition = cond;
    hit.p = p;
    hit.census_available = false;

    std::optional<std::vector<std::pair<long, long>>> ef;
    OreResult ore = ore_analyze(K.f(), p);
    if (ore.p_regular) {
        std::vector<std::pair<long, long>> v;
        for (const SplittingShape& s : ore.shapes) v.emplace_back(s.e, s.f_res);
        ef = std::move(v);
        hit.source = CensusSource::FirstOrder;
    } else if (order2_in_scope(K.n(), K.m(), p)) {
        Order2Result r2 = order2_analyze(K.n(), K.m(), p);
        if (r2.census) {
            std::vector<std::pair<long, long>> v;
            for (const Order2Prime& q : *r2.census) v.emplace_back(q.e, q.f_res);
            ef = std::move(v);
            hit.source = CensusSource::SecondOrder;
        }
    }

    if (ef) {
        hit.census_available = true;
        hit.counts = pf_table(*ef);
        hit.evidence = common_index_divisor(p, *ef, K.n());
    } else if (K.n() <= 60 && p <= 50) {
        OracleReport rep = oracle_analyze(K.f(), p);
        hit.census_available = true;
        hit.source = CensusSource::Oracle;
        hit.counts = rep.census;
        for (const auto& [f, P] : rep.census) {
            mpz_class N = count_monic_irreducibles(p, static_cast<unsigned long>(f));
            if (P > N) {
                hit.evidence = CommonIndexEvidence{p, f, P, N};
                break;
            }
        }
    } else {
        hit.source = std::nullopt;
    }
    return hit;
}

}  // namespace

CertificateScan non_monogenic_certificate(const PureField& K) {
    CertificateScan scan;
    for (const PrimePower& q : factorize(mpz_class(K.n()))) {
        PrimeProfile pr = prime_profile(K.n(), K.m(), q.p);
        for (int c = 1; c <= 8; ++c) {
            if (!condition_holds(c, pr, K.m())) continue;
            ConditionHit hit = build_hit(K, c, q.p);
            if (hit.evidence && !scan.certificate)
                scan.certificate = Certificate{c, *hit.source, *hit.evidence};
            scan.hits.push_back(std::move(hit));
        }
    }
    return scan;
}

std::optional<std::pair<mpz_class, long>> squarefree_power_form(const mpz_class& m) {
    if (m == 0 || m == 1 || m == -1) return std::nullopt;
    std::vector<PrimePower> fac = factorize(m);
    unsigned long v = fac[0].e;
    mpz_class a = 1;
    for (const PrimePower& q : fac) {
        if (q.e != v) return std::nullopt;
        a *= q.p;
    }
    if (v < 2) return std::nullopt;
    if (m < 0) {
        if (v % 2 == 0) return std::nullopt;
        a = -a;
    }
    return std::make_pair(a, static_cast<long>(v));
}

std::optional<GeneratorWitness> monogenic_via_substitution(long n, const mpz_class& a,
                                                           long v) {
    if (n < 2) throw std::invalid_argument("monogenic_via_substitution: n must be >= 2");
    if (v < 1 || a == 0 || a == 1 || a == -1) return std::nullopt;
    for (const PrimePower& q : factorize(a))
        if (q.e >= 2) return std::nullopt;  // a must be squarefree
    mpz_class vv(v), nn(n), i;
    if (mpz_invert(i.get_mpz_t(), vv.get_mpz_t(), nn.get_mpz_t()) == 0)
        return std::nullopt;  // gcd(v, n) > 1
    GeneratorWitness w;
    w.i = i;
    mpz_class num = vv * i - 1;
    mpz_divexact(w.j.get_mpz_t(), num.get_mpz_t(), nn.get_mpz_t());
    w.a = a;
    w.g = IntPoly::pure(n, a);
    return w;
}

const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Monogenic: return "Monogenic";
        case Verdict::NotMonogenic: return "NotMonogenic";
        default: return "Undetermined";
    }
}

AnalyzeResult analyze(const PureField& K) {
    AnalyzeResult R;
    R.n = K.n();
    R.m = K.m();
    R.closedness = integral_closedness_test(K);

    for (const mpz_class& p : support_primes(K.n(), K.m())) {
        PrimeReport pr;
        pr.p = p;
        pr.ore = ore_analyze(K.f(), p);
        if (order2_in_scope(K.n(), K.m(), p))
            pr.order2 = order2_analyze(K.n(), K.m(), p);
        if (pr.ore.index_exact)
            pr.index_exact = pr.ore.index_exact;
        else if (pr.order2 && pr.order2->all_squarefree)
            pr.index_exact = pr.ore.index_lower + pr.order2->ind2;
        R.primes.push_back(std::move(pr));
    }

    if (R.closedness.closed) {
        R.status = Verdict::Monogenic;
        GeneratorWitness w;
        w.i = 1;
        w.j = 0;
        w.a = K.m();
        w.g = K.f();
        R.witness = std::move(w);
        return R;
    }

    if (auto form = squarefree_power_form(K.m())) {
        if (auto w = monogenic_via_substitution(K.n(), form->first, form->second)) {
            PureField G(K.n(), form->first);
            if (integral_closedness_test(G).closed) {
                R.status = Verdict::Monogenic;
                R.witness = std::move(*w);
                return R;
            }
        }
    }

    CertificateScan scan = non_monogenic_certificate(K);
    R.hits = std::move(scan.hits);
    if (scan.certificate) {
        R.status = Verdict::NotMonogenic;
        R.certificate = std::move(scan.certificate);
    } else {
        R.status = Verdict::Undetermined;
    }
    return R;
}

}  // namespace purindex

#include "purindex/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

namespace purindex {

namespace {

using Row = std::vector<mpz_class>;
using Mat = std::vector<Row>;
using FpRow = std::vector<long>;
using FpMat = std::vector<FpRow>;

// a * b mod f for theta-coordinate vectors (length <= n), f monic.
Row poly_mul_mod(const Row& a, const Row& b, const Row& f) {
    long n = static_cast<long>(f.size()) - 1;
    Row prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            mpz_addmul(prod[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    for (long k = static_cast<long>(prod.size()) - 1; k >= n; --k) {
        if (prod[k] == 0) continue;
        mpz_class c = prod[k];
        prod[k] = 0;
        for (long j = 0; j < n; ++j) {
            if (f[j] == 0) continue;
            mpz_submul(prod[k - n + j].get_mpz_t(), c.get_mpz_t(), f[j].get_mpz_t());
        }
    }
    prod.resize(n, 0);
    return prod;
}

// Row-style HNF: upper triangular, positive pivots, entries above each pivot
// reduced into [0, pivot). Assumes the row span has full rank n.
Mat hnf(Mat rows, long n) {
    Mat kept;
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const Row& r) {
                                  return std::all_of(r.begin(), r.end(),
                                                     [](const mpz_class& x) { return x == 0; });
                              }),
               rows.end());
    Mat mat;
    for (long col = 0; col < n; ++col) {
        Mat work, rest;
        for (auto& r : rows) {
            if (r[col] != 0)
                work.push_back(std::move(r));
            else
                rest.push_back(std::move(r));
        }
        if (work.empty()) throw std::logic_error("hnf: rank deficiency");
        while (work.size() > 1) {
            std::sort(work.begin(), work.end(), [col](const Row& x, const Row& y) {
                return mpz_cmpabs(x[col].get_mpz_t(), y[col].get_mpz_t()) < 0;
            });
            Row pivot = work[0];
            Mat next;
            next.push_back(pivot);
            for (size_t t = 1; t < work.size(); ++t) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), work[t][col].get_mpz_t(), pivot[col].get_mpz_t());
                Row rr(n);
                bool nz_col = false, nz_any = false;
                for (long j = 0; j < n; ++j) {
                    rr[j] = work[t][j] - q * pivot[j];
                    if (rr[j] != 0) {
                        nz_any = true;
                        if (j == col) nz_col = true;
                    }
                }
                if (nz_col)
                    next.push_back(std::move(rr));
                else if (nz_any)
                    rest.push_back(std::move(rr));
            }
            if (next.size() == 1) {
                work = std::move(next);
                break;
            }
            work = std::move(next);
        }
        Row piv = std::move(work[0]);
        if (piv[col] < 0)
            for (auto& x : piv) x = -x;
        mat.push_back(std::move(piv));
        rows = std::move(rest);
    }
    for (long i = n - 1; i >= 0; --i) {
        for (long j = i - 1; j >= 0; --j) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), mat[j][i].get_mpz_t(), mat[i][i].get_mpz_t());
            if (q != 0)
                for (long k = 0; k < n; ++k) mpz_submul(mat[j][k].get_mpz_t(), q.get_mpz_t(), mat[i][k].get_mpz_t());
        }
    }
    return mat;
}

// Solve c * M = w over Z for upper-triangular HNF M by forward substitution.
std::optional<Row> tri_solve(const Mat& M, Row w) {
    long n = static_cast<long>(M.size());
    Row c(n, 0);
    for (long i = 0; i < n; ++i) {
        if (mpz_divisible_p(w[i].get_mpz_t(), M[i][i].get_mpz_t()) == 0) return std::nullopt;
        mpz_divexact(c[i].get_mpz_t(), w[i].get_mpz_t(), M[i][i].get_mpz_t());
        if (c[i] != 0)
            for (long j = i; j < n; ++j)
                mpz_submul(w[j].get_mpz_t(), c[i].get_mpz_t(), M[i][j].get_mpz_t());
    }
    for (const auto& x : w)
        if (x != 0) return std::nullopt;
    return c;
}

// Basis of the left kernel {x : x A = 0} over F_p.
FpMat left_kernel_mod_p(const FpMat& A, long p) {
    long m = static_cast<long>(A.size());
    long n = m ? static_cast<long>(A[0].size()) : 0;
    FpMat rows(m);
    for (long i = 0; i < m; ++i) {
        rows[i].resize(n + m, 0);
        for (long j = 0; j < n; ++j) rows[i][j] = ((A[i][j] % p) + p) % p;
        rows[i][n + i] = 1;
    }
    long r = 0;
    for (long c = 0; c < n && r < m; ++c) {
        long piv = -1;
        for (long i = r; i < m; ++i)
            if (rows[i][c] % p != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        long inv = 1, base = rows[r][c] % p, e = p - 2;
        while (e) {
            if (e & 1) inv = (inv * base) % p;
            base = (base * base) % p;
            e >>= 1;
        }
        for (auto& x : rows[r]) x = (x * inv) % p;
        for (long i = 0; i < m; ++i) {
            if (i == r || rows[i][c] == 0) continue;
            long fac = rows[i][c];
            for (long j = 0; j < n + m; ++j)
                rows[i][j] = ((rows[i][j] - fac * rows[r][j]) % p + p) % p;
        }
        ++r;
    }
    FpMat ker;
    for (long i = r; i < m; ++i) {
        bool zero = true;
        for (long j = 0; j < n; ++j)
            if (rows[i][j] % p != 0) {
                zero = false;
                break;
            }
        if (zero) ker.emplace_back(rows[i].begin() + n, rows[i].end());
    }
    return ker;
}

struct Ord {
    Row f;  // monic, length n + 1
    long n;
    long p;
    Mat M;        // rows = basis over denominator d, HNF
    mpz_class d;  // power of p

    Ord(const IntPoly& fpoly, long pp) : n(fpoly.degree()), p(pp), d(1) {
        f = fpoly.coeffs();
        M.assign(n, Row(n, 0));
        for (long i = 0; i < n; ++i) M[i][i] = 1;
    }

    // coords * (M/d) as a theta-polynomial numerator (over denominator d).
    Row to_poly(const Row& coords) const {
        Row out(n, 0);
        for (long i = 0; i < n; ++i) {
            if (coords[i] == 0) continue;
            for (long j = 0; j < n; ++j)
                mpz_addmul(out[j].get_mpz_t(), coords[i].get_mpz_t(), M[i][j].get_mpz_t());
        }
        return out;
    }

    // Product of two elements given by coordinate rows; exact in the order.
    Row elem_mul(const Row& u, const Row& v) const {
        Row w = poly_mul_mod(to_poly(u), to_poly(v), f);
        // coords c satisfy c * M = w / d.
        for (auto& x : w) {
            if (mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) == 0)
                throw std::logic_error("elem_mul: product left the order");
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
        }
        auto c = tri_solve(M, std::move(w));
        if (!c) throw std::logic_error("elem_mul: product left the order");
        return *c;
    }

    long index_valuation() const {
        mpz_class det = 1;
        for (long i = 0; i < n; ++i) det *= M[i][i];
        mpz_class dd;
        mpz_pow_ui(dd.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(n));
        mpz_class q;
        if (mpz_divisible_p(dd.get_mpz_t(), det.get_mpz_t()) == 0)
            throw std::logic_error("index_valuation: determinant does not divide d^n");
        mpz_divexact(q.get_mpz_t(), dd.get_mpz_t(), det.get_mpz_t());
        mpz_class pz = p, rest;
        unsigned long v = mpz_remove(rest.get_mpz_t(), q.get_mpz_t(), pz.get_mpz_t());
        if (rest != 1) throw std::logic_error("index_valuation: index is not a p-power");
        return static_cast<long>(v);
    }
};

// Matrix of the p-Frobenius on O/pO (rows = images of basis elements).
FpMat frobenius_matrix(const Ord& O) {
    FpMat F(O.n);
    for (long i = 0; i < O.n; ++i) {
        Row base(O.n, 0);
        base[i] = 1;
        Row acc;
        long e = O.p;
        bool have = false;
        while (e) {
            if (e & 1) {
                acc = have ? O.elem_mul(acc, base) : base;
                have = true;
                for (auto& x : acc) x = ((x % O.p) + O.p) % O.p;
            }
            e >>= 1;
            if (e) {
                base = O.elem_mul(base, base);
                for (auto& x : base) x = ((x % O.p) + O.p) % O.p;
            }
        }
        F[i].resize(O.n);
        for (long j = 0; j < O.n; ++j) F[i][j] = acc[j].get_si();
    }
    return F;
}

FpMat fp_matmul(const FpMat& A, const FpMat& B, long p) {
    long m = static_cast<long>(A.size());
    long k = static_cast<long>(B.size());
    long l = k ? static_cast<long>(B[0].size()) : 0;
    FpMat C(m, FpRow(l, 0));
    for (long i = 0; i < m; ++i)
        for (long t = 0; t < k; ++t) {
            long a = A[i][t];
            if (!a) continue;
            for (long j = 0; j < l; ++j) C[i][j] = (C[i][j] + a * B[t][j]) % p;
        }
    return C;
}

// Basis (mod p coordinate rows) of the radical of O/pO: kernel of
// x -> x^(p^K), p^K >= n.
FpMat radical_kernel(const Ord& O) {
    FpMat F = frobenius_matrix(O);
    long q = O.p, K = 1;
    while (q < O.n) {
        q *= O.p;
        ++K;
    }
    FpMat FK = F;
    for (long s = 1; s < K; ++s) FK = fp_matmul(FK, F, O.p);
    return left_kernel_mod_p(FK, O.p);
}

// One round-2 step. Returns the enlarged order and the index gain.
std::pair<Ord, long> round2_step(const Ord& O) {
    long n = O.n, p = O.p;
    FpMat ker = radical_kernel(O);
    Mat Jrows;
    for (const auto& k : ker) {
        Row r(n);
        for (long j = 0; j < n; ++j) r[j] = k[j];
        Jrows.push_back(std::move(r));
    }
    for (long i = 0; i < n; ++i) {
        Row r(n, 0);
        r[i] = p;
        Jrows.push_back(std::move(r));
    }
    Mat J = hnf(std::move(Jrows), n);

    // y/p lands in the multiplier ring iff y * g in p*J for every generator
    // g of J; stack the J-coordinates mod p of y*g as linear conditions on y.
    FpMat conds(n);
    for (long i = 0; i < n; ++i) {
        Row ei(n, 0);
        ei[i] = 1;
        conds[i].reserve(n * n);
        for (long j = 0; j < n; ++j) {
            Row prod = O.elem_mul(ei, J[j]);
            auto cj = tri_solve(J, std::move(prod));
            if (!cj) throw std::logic_error("round2_step: product escaped the ideal lattice");
            for (long t = 0; t < n; ++t)
                conds[i].push_back(static_cast<long>(mpz_fdiv_ui((*cj)[t].get_mpz_t(),
                                                                 static_cast<unsigned long>(p))));
        }
    }
    FpMat ker2 = left_kernel_mod_p(conds, p);
    if (ker2.empty()) return {O, 0};

    Mat rows;
    for (const auto& r : O.M) {
        Row rr(n);
        for (long j = 0; j < n; ++j) rr[j] = mpz_class(p) * r[j];
        rows.push_back(std::move(rr));
    }
    for (const auto& k : ker2) {
        Row rr(n, 0);
        for (long i = 0; i < n; ++i) {
            if (!k[i]) continue;
            for (long j = 0; j < n; ++j)
                mpz_addmul_ui(rr[j].get_mpz_t(), O.M[i][j].get_mpz_t(),
                              static_cast<unsigned long>(k[i]));
        }
        rows.push_back(std::move(rr));
    }
    Ord O2 = O;
    O2.M = hnf(std::move(rows), n);
    O2.d = O.d * p;
    // Strip a common factor of p if the whole matrix picked one up.
    while (true) {
        bool all_div = mpz_divisible_ui_p(O2.d.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
        for (long i = 0; i < n && all_div; ++i)
            for (long j = 0; j < n && all_div; ++j)
                if (mpz_divisible_ui_p(O2.M[i][j].get_mpz_t(), static_cast<unsigned long>(p)) == 0)
                    all_div = false;
        if (!all_div) break;
        for (auto& r : O2.M)
            for (auto& x : r)
                mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
        mpz_divexact_ui(O2.d.get_mpz_t(), O2.d.get_mpz_t(), static_cast<unsigned long>(p));
    }
    return {O2, O2.index_valuation() - O.index_valuation()};
}

long euler_phi(long x) {
    long res = x, xx = x;
    for (long q = 2; q * q <= xx; ++q) {
        if (xx % q == 0) {
            while (xx % q == 0) xx /= q;
            res -= res / q;
        }
    }
    if (xx > 1) res -= res / xx;
    return res;
}

// Residue census of the p-maximal order: P_f = number of primes above p with
// residue degree f, via Frobenius fixed spaces on the semisimple quotient.
std::vector<std::pair<long, long>> residue_census(const Ord& O) {
    long n = O.n, p = O.p;
    FpMat rad = radical_kernel(O);
    // Echelonize the radical rows to find its pivot columns.
    FpMat radr = rad;
    std::vector<long> radpiv;
    {
        long r = 0;
        for (long c = 0; c < n && r < static_cast<long>(radr.size()); ++c) {
            long piv = -1;
            for (long i = r; i < static_cast<long>(radr.size()); ++i)
                if (radr[i][c] % p != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            std::swap(radr[r], radr[piv]);
            long inv = 1, base = radr[r][c] % p, e = p - 2;
            while (e) {
                if (e & 1) inv = (inv * base) % p;
                base = (base * base) % p;
                e >>= 1;
            }
            for (auto& x : radr[r]) x = ((x * inv) % p + p) % p;
            for (long i = 0; i < static_cast<long>(radr.size()); ++i) {
                if (i == r || radr[i][c] == 0) continue;
                long fac = radr[i][c];
                for (long j = 0; j < n; ++j)
                    radr[i][j] = ((radr[i][j] - fac * radr[r][j]) % p + p) % p;
            }
            radpiv.push_back(c);
            ++r;
        }
        radr.resize(r);
    }
    std::vector<long> free_cols;
    for (long c = 0; c < n; ++c)
        if (std::find(radpiv.begin(), radpiv.end(), c) == radpiv.end()) free_cols.push_back(c);
    long dimS = static_cast<long>(free_cols.size());

    auto proj = [&](Row v) {
        FpRow vv(n);
        for (long j = 0; j < n; ++j)
            vv[j] = static_cast<long>(
                mpz_fdiv_ui(v[j].get_mpz_t(), static_cast<unsigned long>(p)));
        for (size_t t = 0; t < radr.size(); ++t) {
            long c = radpiv[t];
            if (vv[c]) {
                long fac = vv[c];
                for (long j = 0; j < n; ++j)
                    vv[j] = ((vv[j] - fac * radr[t][j]) % p + p) % p;
            }
        }
        FpRow out(dimS);
        for (long t = 0; t < dimS; ++t) out[t] = vv[free_cols[t]];
        return out;
    };

    // Frobenius on the semisimple quotient S.
    FpMat frob(dimS);
    for (long t = 0; t < dimS; ++t) {
        Row base(n, 0);
        base[free_cols[t]] = 1;
        Row acc;
        long e = p;
        bool have = false;
        while (e) {
            if (e & 1) {
                acc = have ? O.elem_mul(acc, base) : base;
                have = true;
                for (auto& x : acc) x = ((x % p) + p) % p;
            }
            e >>= 1;
            if (e) {
                base = O.elem_mul(base, base);
                for (auto& x : base) x = ((x % p) + p) % p;
            }
        }
        frob[t] = proj(acc);
    }

    // D_j = dim ker(Frob^j - I) = sum over primes of gcd(j, f_i).
    std::vector<long> D(n + 1, 0);
    FpMat Fj = frob;
    for (long j = 1; j <= n; ++j) {
        FpMat A(dimS, FpRow(dimS));
        for (long i = 0; i < dimS; ++i)
            for (long k = 0; k < dimS; ++k)
                A[i][k] = ((Fj[i][k] - (i == k ? 1 : 0)) % p + p) % p;
        D[j] = static_cast<long>(left_kernel_mod_p(A, p).size());
        if (j < n) Fj = fp_matmul(Fj, frob, p);
    }
    // B_j = #(primes with j | f) via Moebius inversion over divisors.
    std::vector<long> B(n + 1, 0);
    for (long j = 1; j <= n; ++j) {
        long s = 0;
        for (long dd = 1; dd <= j; ++dd)
            if (j % dd == 0) s += mobius(static_cast<unsigned long>(j / dd)) * D[dd];
        if (s % euler_phi(j) != 0) throw std::logic_error("residue_census: inversion failed");
        B[j] = s / euler_phi(j);
    }
    std::map<long, long> P;
    for (long fdeg = 1; fdeg <= n; ++fdeg) {
        long s = 0;
        for (long k = 1; fdeg * k <= n; ++k) s += mobius(static_cast<unsigned long>(k)) * B[fdeg * k];
        if (s) P[fdeg] = s;
    }
    return {P.begin(), P.end()};
}

}  // namespace

OracleReport oracle_analyze(const IntPoly& f, const mpz_class& p) {
    if (!f.is_monic() || f.degree() < 1)
        throw std::invalid_argument("oracle_analyze: f must be monic of degree >= 1");
    if (!is_prime(p)) throw std::invalid_argument("oracle_analyze: p must be prime");
    if (f.degree() > 60)
        throw refusal_error("oracle_analyze: refused, degree " + std::to_string(f.degree()) +
                            " exceeds the supported bound 60");
    if (p > 50)
        throw refusal_error("oracle_analyze: refused, p = " + p.get_str() +
                            " exceeds the supported bound 50");
    Ord O(f, static_cast<long>(p.get_si()));
    long iters = 0;
    while (true) {
        auto [O2, gain] = round2_step(O);
        if (gain == 0) break;
        O = std::move(O2);
        if (++iters > 100000) throw std::logic_error("oracle_analyze: round-2 did not stabilize");
    }
    OracleReport rep;
    rep.p = p;
    rep.index_valuation = O.index_valuation();
    rep.census = residue_census(O);
    rep.iterations = iters;
    return rep;
}

}  // namespace purindex

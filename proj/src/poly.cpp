#include "purindex/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace purindex {

namespace {

mpz_class mod_into(const mpz_class& a, const mpz_class& p) {
    mpz_class r = a % p;
    if (r < 0) r += p;
    return r;
}

mpz_class pow_ui(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// IntPoly

void IntPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::from_coeffs(std::vector<mpz_class> c) {
    IntPoly f;
    f.c_ = std::move(c);
    f.normalize();
    return f;
}

IntPoly IntPoly::constant(const mpz_class& a) { return from_coeffs({a}); }

IntPoly IntPoly::monomial(long deg, const mpz_class& coeff) {
    if (deg < 0) throw std::invalid_argument("monomial: negative degree");
    std::vector<mpz_class> c(deg + 1, 0);
    c[deg] = coeff;
    return from_coeffs(std::move(c));
}

IntPoly IntPoly::pure(long n, const mpz_class& m) {
    if (n < 1) throw std::invalid_argument("pure: degree must be >= 1");
    std::vector<mpz_class> c(n + 1, 0);
    c[0] = -m;
    c[n] = 1;
    return from_coeffs(std::move(c));
}

const mpz_class& IntPoly::coeff(long i) const {
    static const mpz_class zero = 0;
    if (i < 0 || i >= static_cast<long>(c_.size())) return zero;
    return c_[i];
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<mpz_class> c(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return from_coeffs(std::move(c));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<mpz_class> c(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] -= o.c_[i];
    return from_coeffs(std::move(c));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<mpz_class> c(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    }
    return from_coeffs(std::move(c));
}

IntPoly IntPoly::operator-() const {
    std::vector<mpz_class> c = c_;
    for (auto& a : c) a = -a;
    return from_coeffs(std::move(c));
}

IntPoly IntPoly::operator*(const mpz_class& k) const {
    std::vector<mpz_class> c = c_;
    for (auto& a : c) a *= k;
    return from_coeffs(std::move(c));
}

std::pair<IntPoly, IntPoly> IntPoly::divmod_monic(const IntPoly& d) const {
    if (!d.is_monic())
        throw std::invalid_argument("divmod_monic: divisor must be monic over Z");
    std::vector<mpz_class> rem = c_;
    long dd = d.degree();
    long qd = degree() - dd;
    if (qd < 0) return {IntPoly(), *this};
    std::vector<mpz_class> q(qd + 1, 0);
    for (long i = static_cast<long>(rem.size()) - 1; i >= dd; --i) {
        if (rem[i] == 0) continue;
        mpz_class c = rem[i];
        q[i - dd] = c;
        for (long j = 0; j <= dd; ++j) rem[i - dd + j] -= c * d.c_[j];
    }
    return {from_coeffs(std::move(q)), from_coeffs(std::move(rem))};
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<mpz_class> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * mpz_class(static_cast<long>(i));
    return from_coeffs(std::move(c));
}

mpz_class IntPoly::evaluate(const mpz_class& x) const {
    mpz_class r = 0;
    for (long i = degree(); i >= 0; --i) r = r * x + c_[i];
    return r;
}

IntPoly IntPoly::pow(unsigned long e) const {
    IntPoly r = constant(1), b = *this;
    while (e > 0) {
        if (e & 1UL) r = r * b;
        b = b * b;
        e >>= 1UL;
    }
    return r;
}

IntPoly IntPoly::compose(const IntPoly& g) const {
    IntPoly r;
    for (long i = degree(); i >= 0; --i) r = r * g + constant(c_[i]);
    return r;
}

std::string IntPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        const mpz_class& a = c_[i];
        if (a == 0) continue;
        mpz_class mag = abs(a);
        if (first) {
            if (a < 0) out << "-";
            first = false;
        } else {
            out << (a < 0 ? " - " : " + ");
        }
        if (i == 0) {
            out << mag.get_str();
        } else {
            if (mag != 1) out << mag.get_str() << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

IntPoly parse_poly(const std::string& text) {
    if (text.find("\xE2\x88\x92") != std::string::npos)
        throw std::invalid_argument("parse_poly: unicode minus sign rejected, use ASCII '-'");
    for (unsigned char ch : text) {
        if (std::isdigit(ch) || std::isspace(ch) || ch == 'x' || ch == '^' || ch == '*' ||
            ch == '+' || ch == '-')
            continue;
        throw std::invalid_argument(std::string("parse_poly: unexpected character '") +
                                    static_cast<char>(ch) + "'");
    }
    size_t i = 0;
    const size_t n = text.size();
    auto skip_ws = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    std::vector<mpz_class> acc;
    auto add_term = [&](long exp, const mpz_class& coeff) {
        if (static_cast<long>(acc.size()) <= exp) acc.resize(exp + 1, 0);
        acc[exp] += coeff;
    };
    skip_ws();
    if (i == n) throw std::invalid_argument("parse_poly: empty input");
    bool first = true;
    while (true) {
        skip_ws();
        if (i == n) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = (text[i] == '-') ? -1 : 1;
            ++i;
            skip_ws();
        } else if (!first) {
            throw std::invalid_argument("parse_poly: expected '+' or '-' between terms");
        }
        first = false;
        // coefficient digits (optional)
        std::string digits;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
        skip_ws();
        bool star = false;
        if (i < n && text[i] == '*') {
            star = true;
            ++i;
            skip_ws();
        }
        bool has_var = (i < n && text[i] == 'x');
        if (star && !has_var)
            throw std::invalid_argument("parse_poly: '*' must be followed by x");
        long exp = 0;
        if (has_var) {
            ++i;
            exp = 1;
            if (i < n && text[i] == '^') {
                ++i;
                std::string ed;
                while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ed += text[i++];
                if (ed.empty())
                    throw std::invalid_argument("parse_poly: '^' must be followed by digits");
                exp = std::stol(ed);
            }
        }
        if (digits.empty() && !has_var)
            throw std::invalid_argument("parse_poly: dangling sign or empty term");
        mpz_class coeff = digits.empty() ? mpz_class(1) : mpz_class(digits);
        add_term(exp, sign * coeff);
    }
    return IntPoly::from_coeffs(std::move(acc));
}

// ---------------------------------------------------------------------------
// ModPoly

void ModPoly::normalize() {
    for (auto& a : c_) a = mod_into(a, p_);
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ModPoly ModPoly::from_coeffs(const mpz_class& p, std::vector<mpz_class> c) {
    ModPoly g(p);
    g.c_ = std::move(c);
    g.normalize();
    return g;
}

const mpz_class& ModPoly::coeff(long i) const {
    static const mpz_class zero = 0;
    if (i < 0 || i >= static_cast<long>(c_.size())) return zero;
    return c_[i];
}

const mpz_class& ModPoly::leading() const {
    if (is_zero()) throw std::invalid_argument("leading: zero polynomial");
    return c_.back();
}

ModPoly ModPoly::operator+(const ModPoly& o) const {
    std::vector<mpz_class> c(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return from_coeffs(p_, std::move(c));
}

ModPoly ModPoly::operator-(const ModPoly& o) const {
    std::vector<mpz_class> c(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] -= o.c_[i];
    return from_coeffs(p_, std::move(c));
}

ModPoly ModPoly::operator*(const ModPoly& o) const {
    if (is_zero() || o.is_zero()) return ModPoly(p_);
    std::vector<mpz_class> c(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    }
    return from_coeffs(p_, std::move(c));
}

ModPoly ModPoly::scaled(const mpz_class& k) const {
    std::vector<mpz_class> c = c_;
    for (auto& a : c) a *= k;
    return from_coeffs(p_, std::move(c));
}

ModPoly ModPoly::monic() const {
    if (is_zero()) return *this;
    if (leading() == 1) return *this;
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), leading().get_mpz_t(), p_.get_mpz_t()) == 0)
        throw std::invalid_argument("monic: leading coefficient not invertible");
    return scaled(inv);
}

std::pair<ModPoly, ModPoly> ModPoly::divmod(const ModPoly& d) const {
    if (d.is_zero()) throw std::invalid_argument("divmod: division by zero polynomial");
    mpz_class lead_inv;
    if (mpz_invert(lead_inv.get_mpz_t(), d.leading().get_mpz_t(), p_.get_mpz_t()) == 0)
        throw std::invalid_argument("divmod: leading coefficient not invertible");
    std::vector<mpz_class> rem = c_;
    long dd = d.degree();
    long qd = degree() - dd;
    if (qd < 0) return {ModPoly(p_), *this};
    std::vector<mpz_class> q(qd + 1, 0);
    for (long i = static_cast<long>(rem.size()) - 1; i >= dd; --i) {
        mpz_class c = mod_into(rem[i], p_);
        if (c == 0) continue;
        c = mod_into(c * lead_inv, p_);
        q[i - dd] = c;
        for (long j = 0; j <= dd; ++j) rem[i - dd + j] -= c * d.c_[j];
        rem[i] = 0;
    }
    return {from_coeffs(p_, std::move(q)), from_coeffs(p_, std::move(rem))};
}

ModPoly ModPoly::derivative() const {
    if (c_.size() <= 1) return ModPoly(p_);
    std::vector<mpz_class> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * mpz_class(static_cast<long>(i));
    return from_coeffs(p_, std::move(c));
}

std::string ModPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        const mpz_class& a = c_[i];
        if (a == 0) continue;
        if (!first) out << " + ";
        first = false;
        if (i == 0) {
            out << a.get_str();
        } else {
            if (a != 1) out << a.get_str() << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

ModPoly gcd(ModPoly a, ModPoly b) {
    while (!b.is_zero()) {
        ModPoly r = a.mod(b);
        a = b;
        b = r;
    }
    return a.monic();
}

ModPoly ModPoly::pow_mod(const mpz_class& e, const ModPoly& modulus) const {
    if (e < 0) throw std::invalid_argument("pow_mod: negative exponent");
    ModPoly base = this->mod(modulus);
    ModPoly r = from_coeffs(p_, {1});
    long bits = (e == 0) ? 0 : static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2));
    for (long i = bits - 1; i >= 0; --i) {
        r = (r * r).mod(modulus);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * base).mod(modulus);
    }
    return r;
}

ModPoly reduce_mod_p(const IntPoly& f, const mpz_class& p) {
    return ModPoly::from_coeffs(p, f.coeffs());
}

IntPoly lift_canonical(const ModPoly& g) { return IntPoly::from_coeffs(g.coeffs()); }

bool is_irreducible_mod(const ModPoly& g_in) {
    ModPoly g = g_in.monic();
    long n = g.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    const mpz_class& p = g.p();
    ModPoly x = ModPoly::x(p);
    // h_k = x^(p^k) mod g, advanced one Frobenius power at a time.
    auto frob_steps = [&](ModPoly h, long steps) {
        for (long s = 0; s < steps; ++s) h = h.pow_mod(p, g);
        return h;
    };
    ModPoly hn = frob_steps(x, n);
    if (hn != x.mod(g)) return false;
    std::vector<long> prime_divs;
    long m = n;
    for (long q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            prime_divs.push_back(q);
            while (m % q == 0) m /= q;
        }
    }
    if (m > 1) prime_divs.push_back(m);
    for (long q : prime_divs) {
        ModPoly h = frob_steps(x, n / q);
        ModPoly d = gcd(h - x, g);
        if (d.degree() != 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// ExtField

ExtField::ExtField(const ModPoly& modulus) : p_(modulus.p()), modulus_(modulus.monic()) {
    if (!is_prime(p_)) throw std::invalid_argument("ExtField: characteristic must be prime");
    if (modulus_.degree() < 1)
        throw std::invalid_argument("ExtField: modulus must have degree >= 1");
    if (!is_irreducible_mod(modulus_))
        throw std::invalid_argument("ExtField: modulus must be irreducible");
}

mpz_class ExtField::q() const { return pow_ui(p_, static_cast<unsigned long>(degree())); }

ExtField::Elem ExtField::from_int(const mpz_class& a) const {
    return reduce(ModPoly::from_coeffs(p_, {a}));
}

ExtField::Elem ExtField::gen() const { return reduce(ModPoly::x(p_)); }

ExtField::Elem ExtField::reduce(const ModPoly& a) const {
    if (a.p() != p_) throw std::invalid_argument("ExtField: characteristic mismatch");
    return a.mod(modulus_);
}

ExtField::Elem ExtField::inv(const Elem& a_in) const {
    Elem a = reduce(a_in);
    if (a.is_zero()) throw std::invalid_argument("ExtField: inverse of zero");
    // Extended Euclid over F_p[x].
    ModPoly r0 = modulus_, r1 = a;
    ModPoly t0 = ModPoly(p_), t1 = from_int(1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        ModPoly t2 = t0 - (q * t1);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t2;
    }
    // r0 = gcd (a unit); normalize and scale.
    mpz_class lic;
    if (mpz_invert(lic.get_mpz_t(), r0.leading().get_mpz_t(), p_.get_mpz_t()) == 0)
        throw std::invalid_argument("ExtField: gcd not a unit");
    return reduce(t0.scaled(lic));
}

ExtField::Elem ExtField::pow(const Elem& a, const mpz_class& e) const {
    if (e < 0) return pow(inv(a), -e);
    Elem base = reduce(a);
    Elem r = one();
    long bits = (e == 0) ? 0 : static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2));
    for (long i = bits - 1; i >= 0; --i) {
        r = mul(r, r);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, base);
    }
    return r;
}

std::string ExtField::elem_str(const Elem& a) const { return a.str("x"); }

// ---------------------------------------------------------------------------
// ExtPoly

void ExtPoly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

ExtPoly ExtPoly::from_coeffs(ExtFieldPtr field, std::vector<ExtField::Elem> c) {
    ExtPoly g(field);
    for (auto& e : c) g.c_.push_back(field->reduce(e));
    g.normalize();
    return g;
}

ExtField::Elem ExtPoly::coeff(long i) const {
    if (i < 0 || i >= static_cast<long>(c_.size())) return F_->zero();
    return c_[i];
}

ExtPoly ExtPoly::operator+(const ExtPoly& o) const {
    std::vector<ExtField::Elem> c;
    long n = std::max(degree(), o.degree());
    for (long i = 0; i <= n; ++i) c.push_back(F_->add(coeff(i), o.coeff(i)));
    return from_coeffs(F_, std::move(c));
}

ExtPoly ExtPoly::operator-(const ExtPoly& o) const {
    std::vector<ExtField::Elem> c;
    long n = std::max(degree(), o.degree());
    for (long i = 0; i <= n; ++i) c.push_back(F_->sub(coeff(i), o.coeff(i)));
    return from_coeffs(F_, std::move(c));
}

ExtPoly ExtPoly::operator*(const ExtPoly& o) const {
    if (is_zero() || o.is_zero()) return ExtPoly(F_);
    std::vector<ExtField::Elem> c(c_.size() + o.c_.size() - 1, F_->zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            c[i + j] = F_->add(c[i + j], F_->mul(c_[i], o.c_[j]));
    }
    return from_coeffs(F_, std::move(c));
}

bool ExtPoly::operator==(const ExtPoly& o) const {
    if (degree() != o.degree()) return false;
    for (long i = 0; i <= degree(); ++i)
        if (coeff(i) != o.coeff(i)) return false;
    return true;
}

ExtPoly ExtPoly::monic() const {
    if (is_zero()) return *this;
    ExtField::Elem lead = c_.back();
    if (lead == F_->one()) return *this;
    ExtField::Elem li = F_->inv(lead);
    std::vector<ExtField::Elem> c;
    for (const auto& a : c_) c.push_back(F_->mul(a, li));
    return from_coeffs(F_, std::move(c));
}

std::pair<ExtPoly, ExtPoly> ExtPoly::divmod(const ExtPoly& d) const {
    if (d.is_zero()) throw std::invalid_argument("ExtPoly::divmod: division by zero");
    ExtField::Elem li = F_->inv(d.c_.back());
    std::vector<ExtField::Elem> rem = c_;
    long dd = d.degree();
    long qd = degree() - dd;
    if (qd < 0) return {ExtPoly(F_), *this};
    std::vector<ExtField::Elem> q(qd + 1, F_->zero());
    for (long i = static_cast<long>(rem.size()) - 1; i >= dd; --i) {
        if (rem[i].is_zero()) continue;
        ExtField::Elem c = F_->mul(rem[i], li);
        q[i - dd] = c;
        for (long j = 0; j <= dd; ++j)
            rem[i - dd + j] = F_->sub(rem[i - dd + j], F_->mul(c, d.c_[j]));
    }
    return {from_coeffs(F_, std::move(q)), from_coeffs(F_, std::move(rem))};
}

ExtPoly ExtPoly::derivative() const {
    if (c_.size() <= 1) return ExtPoly(F_);
    std::vector<ExtField::Elem> c;
    for (size_t i = 1; i < c_.size(); ++i)
        c.push_back(F_->mul(c_[i], F_->from_int(static_cast<long>(i))));
    return from_coeffs(F_, std::move(c));
}

ExtPoly ExtPoly::pow_mod(const mpz_class& e, const ExtPoly& modulus) const {
    if (e < 0) throw std::invalid_argument("ExtPoly::pow_mod: negative exponent");
    ExtPoly base = this->mod(modulus);
    ExtPoly r = from_coeffs(F_, {F_->one()});
    long bits = (e == 0) ? 0 : static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2));
    for (long i = bits - 1; i >= 0; --i) {
        r = (r * r).mod(modulus);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * base).mod(modulus);
    }
    return r;
}

std::string ExtPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        const ExtField::Elem& a = c_[i];
        if (a.is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        bool is_one = (a == F_->one());
        long nonzero = 0;
        for (const auto& ac : a.coeffs())
            if (ac != 0) ++nonzero;
        std::string cs = F_->elem_str(a);
        if (i == 0) {
            out << cs;
        } else {
            if (!is_one) {
                if (nonzero > 1)
                    out << "(" << cs << ")*";
                else
                    out << cs << "*";
            }
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

ExtPoly gcd(ExtPoly a, ExtPoly b) {
    while (!b.is_zero()) {
        ExtPoly r = a.mod(b);
        a = b;
        b = r;
    }
    return a.monic();
}

bool ExtPoly::is_squarefree() const {
    if (is_zero()) throw std::invalid_argument("is_squarefree: zero polynomial");
    if (degree() == 0) return true;
    ExtPoly d = gcd(*this, derivative());
    return d.degree() == 0;
}

namespace {

// Canonical rank of a field element for deterministic sorting.
mpz_class elem_rank(const ExtField& F, const ExtField::Elem& a) {
    mpz_class r = 0;
    for (long i = static_cast<long>(a.coeffs().size()) - 1; i >= 0; --i)
        r = r * F.p() + a.coeff(i);
    return r;
}

// Order: by degree, then lexicographic on the coefficient sequence from the
// constant term upward (each coefficient ranked canonically).
bool factor_less(const ExtField& F, const ExtPoly& a, const ExtPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (long i = 0; i <= a.degree(); ++i) {
        mpz_class ra = elem_rank(F, a.coeff(i));
        mpz_class rb = elem_rank(F, b.coeff(i));
        if (ra != rb) return ra < rb;
    }
    return false;
}

ExtPoly exact_div(const ExtPoly& a, const ExtPoly& b) {
    auto [q, r] = a.divmod(b);
    if (!r.is_zero()) throw std::logic_error("exact_div: division was not exact");
    return q;
}

// p-th root of h(y) = sum a_j y^(jp) over F_q: coefficientwise inverse
// Frobenius a -> a^(q/p) and exponent division by p.
ExtPoly pth_root(const ExtPoly& h) {
    const ExtFieldPtr& F = h.field();
    unsigned long p = F->p().get_ui();
    mpz_class inv_frob_exp = F->q() / F->p();
    std::vector<ExtField::Elem> c;
    for (long j = 0; j * static_cast<long>(p) <= h.degree(); ++j) {
        for (long t = 1; t < static_cast<long>(p); ++t) {
            if (!h.coeff(j * p + t).is_zero())
                throw std::logic_error("pth_root: input is not a polynomial in y^p");
        }
        c.push_back(F->pow(h.coeff(j * p), inv_frob_exp));
    }
    return ExtPoly::from_coeffs(F, std::move(c));
}

void squarefree_decompose(const ExtPoly& f, unsigned long outer_mult,
                          std::vector<std::pair<ExtPoly, unsigned long>>& out) {
    const ExtFieldPtr& F = f.field();
    unsigned long p = F->p().get_ui();
    ExtPoly fp = f.derivative();
    if (fp.is_zero()) {
        squarefree_decompose(pth_root(f), outer_mult * p, out);
        return;
    }
    ExtPoly c = gcd(f, fp);
    ExtPoly w = exact_div(f, c);
    unsigned long i = 1;
    while (w.degree() > 0) {
        ExtPoly y = gcd(w, c);
        ExtPoly z = exact_div(w, y);
        if (z.degree() > 0) out.emplace_back(z, i * outer_mult);
        w = y;
        c = exact_div(c, y);
        ++i;
    }
    if (c.degree() > 0) squarefree_decompose(pth_root(c), outer_mult * p, out);
}

// Distinct-degree split of a monic squarefree g: list of (product, d).
std::vector<std::pair<ExtPoly, long>> distinct_degree(ExtPoly g) {
    const ExtFieldPtr& F = g.field();
    std::vector<std::pair<ExtPoly, long>> out;
    ExtPoly y = ExtPoly::from_coeffs(F, {F->zero(), F->one()});
    ExtPoly h = y.mod(g);
    mpz_class q = F->q();
    long d = 0;
    while (g.degree() >= 2 * (d + 1)) {
        ++d;
        h = h.pow_mod(q, g);
        ExtPoly gd = gcd(h - y, g);
        if (gd.degree() > 0) {
            out.emplace_back(gd, d);
            g = exact_div(g, gd);
            h = h.mod(g);
        }
    }
    if (g.degree() > 0) out.emplace_back(g, g.degree());
    return out;
}

ExtPoly random_poly_below(const ExtFieldPtr& F, long deg_bound, SplitMix64& rng) {
    unsigned long p = F->p().get_ui();
    long k = F->degree();
    std::vector<ExtField::Elem> c;
    for (long i = 0; i < deg_bound; ++i) {
        std::vector<mpz_class> ec;
        for (long j = 0; j < k; ++j) ec.emplace_back(rng.next() % p);
        c.push_back(ExtField::Elem::from_coeffs(F->p(), std::move(ec)));
    }
    return ExtPoly::from_coeffs(F, std::move(c));
}

// Equal-degree split (Cantor-Zassenhaus) of monic g, all of whose irreducible
// factors have degree d.
void equal_degree(const ExtPoly& g, long d, SplitMix64& rng, std::vector<ExtPoly>& out) {
    const ExtFieldPtr& F = g.field();
    if (g.degree() == d) {
        out.push_back(g.monic());
        return;
    }
    mpz_class q = F->q();
    while (true) {
        ExtPoly r = random_poly_below(F, g.degree(), rng);
        if (r.degree() < 1) continue;
        ExtPoly s(F);
        if (F->p() == 2) {
            // Trace map over F_2: sum of the 2^i-th powers of r.
            long steps = F->degree() * d;
            ExtPoly cur = r.mod(g);
            s = cur;
            for (long i = 1; i < steps; ++i) {
                cur = (cur * cur).mod(g);
                s = s + cur;
            }
        } else {
            mpz_class e;
            mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
            e = (e - 1) / 2;
            s = r.pow_mod(e, g) - ExtPoly::from_coeffs(F, {F->one()});
        }
        ExtPoly h = gcd(s, g);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            equal_degree(h, d, rng, out);
            equal_degree(exact_div(g, h), d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<ExtPoly, unsigned long>> ExtPoly::factor() const {
    if (is_zero()) throw std::invalid_argument("factor: zero polynomial");
    std::vector<std::pair<ExtPoly, unsigned long>> out;
    if (degree() == 0) return out;
    ExtPoly g = monic();
    SplitMix64 rng(fnv1a(g.str() + "|" + F_->modulus().str() + "|" + F_->p().get_str()) ^
                   global_seed());
    std::vector<std::pair<ExtPoly, unsigned long>> sqf;
    squarefree_decompose(g, 1, sqf);
    for (const auto& [part, mult] : sqf) {
        for (const auto& [prod, d] : distinct_degree(part.monic())) {
            std::vector<ExtPoly> irr;
            equal_degree(prod, d, rng, irr);
            for (const auto& f : irr) out.emplace_back(f, mult);
        }
    }
    std::sort(out.begin(), out.end(), [this](const auto& a, const auto& b) {
        return factor_less(*F_, a.first, b.first);
    });
    return out;
}

std::vector<std::pair<ModPoly, unsigned long>> factor_mod_p(const ModPoly& g) {
    if (g.is_zero()) throw std::invalid_argument("factor_mod_p: zero polynomial");
    auto F = std::make_shared<const ExtField>(ModPoly::x(g.p()));
    std::vector<ExtField::Elem> c;
    for (const auto& a : g.coeffs()) c.push_back(ModPoly::from_coeffs(g.p(), {a}));
    ExtPoly ge = ExtPoly::from_coeffs(F, std::move(c));
    std::vector<std::pair<ModPoly, unsigned long>> out;
    for (const auto& [f, mult] : ge.factor()) {
        std::vector<mpz_class> fc;
        for (const auto& a : f.coeffs()) fc.push_back(a.coeff(0));
        out.emplace_back(ModPoly::from_coeffs(g.p(), std::move(fc)), mult);
    }
    return out;  // order inherited from the canonical ExtPoly sort
}

// ---------------------------------------------------------------------------
// phi-expansion and Gauss valuation

PhiExpansion phi_expansion(const IntPoly& f, const IntPoly& phi) {
    if (!phi.is_monic() || phi.degree() < 1)
        throw std::invalid_argument("phi_expansion: phi must be monic of degree >= 1");
    PhiExpansion e;
    e.phi = phi;
    IntPoly cur = f;
    while (!cur.is_zero()) {
        auto [q, r] = cur.divmod_monic(phi);
        e.terms.push_back(r);
        cur = q;
    }
    size_t want = 1;
    if (!f.is_zero() && f.degree() >= phi.degree())
        want = static_cast<size_t>(f.degree() / phi.degree()) + 1;
    while (e.terms.size() < want) e.terms.emplace_back();
    return e;
}

IntPoly reconstruct(const PhiExpansion& e) {
    IntPoly acc;
    IntPoly pw = IntPoly::constant(1);
    for (const auto& t : e.terms) {
        acc = acc + t * pw;
        pw = pw * e.phi;
    }
    return acc;
}

Valuation gauss_valuation(const IntPoly& g, const mpz_class& p) {
    if (!is_prime(p)) throw std::invalid_argument("gauss_valuation: p is not prime");
    Valuation best = Valuation::infinity();
    for (const auto& a : g.coeffs()) {
        if (a == 0) continue;
        mpz_class rest;
        unsigned long e = mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
        best = min(best, Valuation::finite(static_cast<long>(e)));
        if (!best.is_infinite() && best.value() == 0) break;
    }
    return best;
}

}  // namespace purindex

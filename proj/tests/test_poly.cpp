#include <utility>
#include <vector>

#include "doctest.h"
#include "purindex/poly.hpp"

using namespace purindex;

TEST_CASE("integer polynomial basics") {
    IntPoly z;
    CHECK(z.is_zero());
    CHECK(z.degree() == -1);

    IntPoly f = IntPoly::pure(4, 12);  // x^4 - 12
    CHECK(f.degree() == 4);
    CHECK(f.is_monic());
    CHECK(f.coeff(0) == -12);
    CHECK(f.coeff(4) == 1);
    CHECK(f.coeff(2) == 0);
    CHECK(f.coeff(17) == 0);  // past the degree reads as zero
    CHECK(f.str() == "x^4 - 12");

    IntPoly g = IntPoly::from_coeffs({1, 2, 1});  // (x+1)^2
    CHECK(g.str() == "x^2 + 2*x + 1");
    CHECK((g * g).str() == "x^4 + 4*x^3 + 6*x^2 + 4*x + 1");
    CHECK((g - g).is_zero());
    CHECK((-g).coeff(0) == -1);
    CHECK((g * mpz_class(3)).coeff(1) == 6);

    // trailing-zero normalization
    IntPoly h = IntPoly::from_coeffs({5, 1, 0, 0});
    CHECK(h.degree() == 1);

    CHECK(IntPoly::monomial(3).str() == "x^3");
    CHECK(IntPoly::monomial(0, -7).str() == "-7");
    CHECK(IntPoly::constant(0).is_zero());
}

TEST_CASE("monic division, derivative, evaluation, composition") {
    IntPoly f = IntPoly::pure(5, 7);
    IntPoly d = IntPoly::from_coeffs({-2, 1});  // x - 2
    auto [q, r] = f.divmod_monic(d);
    CHECK((q * d + r) == f);
    CHECK(r.degree() <= 0);
    CHECK(r.coeff(0) == f.evaluate(2));  // remainder theorem: 2^5 - 7 = 25

    CHECK_THROWS_AS(f.divmod_monic(IntPoly::from_coeffs({1, 2})), std::invalid_argument);

    CHECK(f.derivative().str() == "5*x^4");
    CHECK(IntPoly::constant(3).derivative().is_zero());

    IntPoly s = IntPoly::from_coeffs({1, 1});  // x + 1
    CHECK(f.compose(s) == IntPoly::from_coeffs({-6, 5, 10, 10, 5, 1}));
    CHECK(f.pow(2) == f * f);
    CHECK(f.pow(0) == IntPoly::constant(1));
}

TEST_CASE("polynomial parsing round trips") {
    for (const char* text : {"x^14 - 17", "x^2 + 2*x + 1", "-x^3 + x", "42", "x",
                             "x^4 - 2*x^2 + 9"}) {
        IntPoly f = parse_poly(text);
        CHECK(parse_poly(f.str()) == f);
    }
    CHECK(parse_poly("x^3+x+1") == IntPoly::from_coeffs({1, 1, 0, 1}));
    CHECK(parse_poly(" - x + 5 ") == IntPoly::from_coeffs({5, -1}));
    CHECK_THROWS_AS(parse_poly("x^-2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("y + 1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly(""), std::invalid_argument);
}

TEST_CASE("arithmetic mod p") {
    mpz_class p = 7;
    ModPoly f = ModPoly::from_coeffs(p, {3, 0, 1});   // x^2 + 3
    ModPoly g = ModPoly::from_coeffs(p, {5, 1});      // x + 5
    CHECK((f + g) == ModPoly::from_coeffs(p, {1, 1, 1}));
    CHECK((f * g).degree() == 3);
    CHECK(f.scaled(7).is_zero());

    auto [q, r] = f.divmod(g);
    CHECK((q * g + r) == f);
    CHECK(r.degree() < g.degree());

    // gcd(x^2-1, x^2+2x+1) = x+1 over F_7
    ModPoly a = ModPoly::from_coeffs(p, {-1, 0, 1});
    ModPoly b = ModPoly::from_coeffs(p, {1, 2, 1});
    CHECK(gcd(a, b) == ModPoly::from_coeffs(p, {1, 1}));

    ModPoly c = ModPoly::from_coeffs(p, {1, 0, 3});
    CHECK(c.monic().leading() == 1);
    CHECK(c.monic() == ModPoly::from_coeffs(p, {5, 0, 1}));

    // Fermat: x^p = x mod (x^p - x) ... check pow_mod against direct power
    ModPoly m = ModPoly::from_coeffs(p, {1, 1, 0, 1});
    ModPoly base = ModPoly::x(p);
    CHECK(base.pow_mod(49, m) == base.pow_mod(7, m).pow_mod(7, m));
}

TEST_CASE("reduction and canonical lift") {
    IntPoly f = IntPoly::from_coeffs({-12, 0, 0, 0, 1});
    ModPoly fbar = reduce_mod_p(f, 2);
    CHECK(fbar == ModPoly::from_coeffs(2, {0, 0, 0, 0, 1}));
    CHECK(lift_canonical(fbar) == IntPoly::monomial(4));

    // degree drop on reduction
    IntPoly g = IntPoly::from_coeffs({1, 3});
    CHECK(reduce_mod_p(g, 3).degree() == 0);

    IntPoly h = lift_canonical(ModPoly::from_coeffs(5, {-1, 6}));
    CHECK(h == IntPoly::from_coeffs({4, 1}));
}

TEST_CASE("irreducibility over F_p") {
    CHECK(is_irreducible_mod(ModPoly::from_coeffs(2, {1, 1, 1})));       // x^2+x+1
    CHECK(is_irreducible_mod(ModPoly::from_coeffs(2, {1, 1, 0, 1})));    // x^3+x+1
    CHECK_FALSE(is_irreducible_mod(ModPoly::from_coeffs(2, {1, 0, 1})));  // (x+1)^2
    CHECK(is_irreducible_mod(ModPoly::from_coeffs(3, {1, 0, 1})));       // x^2+1
    CHECK_FALSE(is_irreducible_mod(ModPoly::from_coeffs(3, {2, 0, 1})));  // x^2-1
    CHECK_FALSE(is_irreducible_mod(ModPoly::from_coeffs(5, {2, 0, 0, 1})));  // x=2 kills x^3+2
    CHECK(is_irreducible_mod(ModPoly::from_coeffs(5, {1, 1, 0, 1})));    // x^3+x+1, no roots
    CHECK(is_irreducible_mod(ModPoly::from_coeffs(7, {3, 1})));          // linear
}

TEST_CASE("factorization over F_p") {
    // x^4 + 4 = (x^2+2x+2)(x^2-2x+2) over Z, check mod 7
    ModPoly f = ModPoly::from_coeffs(7, {4, 0, 0, 0, 1});
    auto fac = factor_mod_p(f);
    IntPoly prod = IntPoly::constant(1);
    unsigned long total = 0;
    for (const auto& [g, e] : fac) {
        CHECK(is_irreducible_mod(g));
        total += e * static_cast<unsigned long>(g.degree());
    }
    CHECK(total == 4);

    // x^27 - 80 = (x - 2)^27 mod 3 by Frobenius
    std::vector<mpz_class> c(28, 0);
    c[0] = -80;
    c[27] = 1;
    auto fac3 = factor_mod_p(ModPoly::from_coeffs(3, c));
    REQUIRE(fac3.size() == 1);
    CHECK(fac3[0].first == ModPoly::from_coeffs(3, {1, 1}));
    CHECK(fac3[0].second == 27);

    // product of factors^multiplicities reconstructs the monic part
    ModPoly g = ModPoly::from_coeffs(5, {1, 2, 3, 4, 0, 1});
    ModPoly rebuilt = ModPoly::from_coeffs(5, {1});
    for (const auto& [h, e] : factor_mod_p(g))
        for (unsigned long i = 0; i < e; ++i) rebuilt = rebuilt * h;
    CHECK(rebuilt == g.monic());

    CHECK_THROWS_AS(factor_mod_p(ModPoly(5)), std::invalid_argument);
    CHECK(factor_mod_p(ModPoly::from_coeffs(5, {3})).empty());
}

TEST_CASE("extension field arithmetic") {
    // F_8 = F_2[x]/(x^3+x+1)
    auto F = std::make_shared<const ExtField>(ModPoly::from_coeffs(2, {1, 1, 0, 1}));
    CHECK(F->q() == 8);
    CHECK(F->degree() == 3);
    auto g = F->gen();
    // generator order divides 7, and g^7 = 1
    CHECK(F->pow(g, 7) == F->one());
    CHECK(F->pow(g, 3) == F->add(g, F->one()));  // x^3 = x + 1
    CHECK(F->mul(g, F->inv(g)) == F->one());
    CHECK_THROWS_AS(F->inv(F->zero()), std::invalid_argument);
    // Frobenius fixes exactly F_p
    CHECK(F->frobenius(F->one()) == F->one());
    CHECK(F->frobenius(g) != g);

    CHECK_THROWS_AS(ExtField(ModPoly::from_coeffs(2, {1, 0, 1})), std::invalid_argument);
}

TEST_CASE("polynomials over an extension field") {
    auto F = std::make_shared<const ExtField>(ModPoly::from_coeffs(3, {1, 0, 1}));  // F_9
    auto g = F->gen();  // g^2 = -1

    // y^2 + 1 = (y - g)(y + g) over F_9
    ExtPoly f = ExtPoly::from_coeffs(F, {F->one(), F->zero(), F->one()});
    auto fac = f.factor();
    REQUIRE(fac.size() == 2);
    CHECK(fac[0].second == 1);
    CHECK(fac[1].second == 1);
    ExtPoly rebuilt = ExtPoly::from_coeffs(F, {F->one()});
    for (const auto& [h, e] : fac)
        for (unsigned long i = 0; i < e; ++i) rebuilt = rebuilt * h;
    CHECK(rebuilt == f.monic());
    CHECK(f.is_squarefree());

    // (y + g)^2 is not squarefree
    ExtPoly lin = ExtPoly::from_coeffs(F, {g, F->one()});
    CHECK_FALSE((lin * lin).is_squarefree());

    // squarefree over F_2 despite zero derivative trap: y^2 + y + 1
    auto F2 = std::make_shared<const ExtField>(ModPoly::x(2));
    ExtPoly w = ExtPoly::from_coeffs(F2, {F2->one(), F2->one(), F2->one()});
    CHECK(w.is_squarefree());
    REQUIRE(w.factor().size() == 1);
    CHECK(w.factor()[0].second == 1);
}

TEST_CASE("phi-expansion and reconstruction") {
    IntPoly f = IntPoly::pure(14, 41);
    IntPoly phi = parse_poly("x^3 + x + 1");
    PhiExpansion e = phi_expansion(f, phi);
    CHECK(static_cast<long>(e.terms.size()) == 14 / 3 + 1);
    for (const IntPoly& t : e.terms) CHECK(t.degree() < phi.degree());
    CHECK(reconstruct(e) == f);

    // expansion by x - c is the Taylor shift
    IntPoly g = parse_poly("x^2 - 5");
    PhiExpansion t = phi_expansion(g, parse_poly("x - 1"));
    REQUIRE(t.terms.size() == 3);
    CHECK(t.terms[0] == IntPoly::constant(-4));  // g(1)
    CHECK(t.terms[1] == IntPoly::constant(2));   // g'(1)
    CHECK(t.terms[2] == IntPoly::constant(1));

    CHECK_THROWS_AS(phi_expansion(f, IntPoly::from_coeffs({1, 2})), std::invalid_argument);
}

TEST_CASE("Gauss valuation of coefficients") {
    CHECK(gauss_valuation(parse_poly("4*x^2 + 6*x + 8"), 2) == Valuation::finite(1));
    CHECK(gauss_valuation(parse_poly("9*x - 27"), 3) == Valuation::finite(2));
    CHECK(gauss_valuation(parse_poly("x + 2"), 2) == Valuation::finite(0));
    CHECK(gauss_valuation(IntPoly(), 5).is_infinite());
}

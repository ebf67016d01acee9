#include <utility>
#include <vector>

#include "doctest.h"
#include "purindex/oracle.hpp"

using namespace purindex;

namespace {

using Census = std::vector<std::pair<long, long>>;

void expect(long n, const mpz_class& m, const mpz_class& p, long val, const Census& census) {
    OracleReport r = oracle_analyze(IntPoly::pure(n, m), p);
    CHECK(r.p == p);
    CHECK(r.index_valuation == val);
    CHECK(r.census == census);
    CHECK(r.iterations >= 1);
}

}  // namespace

TEST_CASE("maximal-order battery: quadratic through degree 14") {
    expect(2, 5, 2, 1, {{2, 1}});        // 2 inert, index 2
    expect(4, 17, 2, 3, {{1, 3}});
    expect(4, 68, 2, 4, {{1, 2}});
    expect(4, 12, 2, 4, {{1, 1}});
    expect(6, 180, 2, 6, {{2, 1}});
    expect(6, 80, 3, 2, {{2, 2}});
    expect(9, 54, 3, 13, {{1, 1}});
    expect(10, 1000, 5, 9, {{1, 1}});
    expect(14, 41, 2, 7, {{1, 2}, {3, 4}});
}

TEST_CASE("maximal-order battery: wild higher-degree cases") {
    expect(8, 33, 2, 7, {{1, 4}});
    expect(12, 272, 2, 28, {{1, 3}});
    expect(24, 264, 2, 24, {{1, 1}, {2, 1}});
    expect(27, 80, 3, 13, {{1, 4}});
    expect(27, 82, 3, 13, {{1, 4}});
    expect(27, 2214, 3, 40, {{1, 2}});
}

TEST_CASE("maximal-order battery: the degree-48 stress case") {
    expect(48, 528, 2, 126, {{1, 4}});
}

TEST_CASE("non-pure inputs work too") {
    // Z[zeta_5] is maximal; 5 is totally ramified
    OracleReport r = oracle_analyze(parse_poly("x^4 + x^3 + x^2 + x + 1"), 5);
    CHECK(r.index_valuation == 0);
    Census want = {{1, 1}};
    CHECK(r.census == want);

    // disc(x^3 - x - 1) = -23 is squarefree, so the index is trivial
    OracleReport s = oracle_analyze(parse_poly("x^3 - x - 1"), 23);
    CHECK(s.index_valuation == 0);
}

TEST_CASE("index zero agrees with a maximal equation order") {
    OracleReport r = oracle_analyze(IntPoly::pure(4, 2), 2);  // Eisenstein
    CHECK(r.index_valuation == 0);
    Census want = {{1, 1}};
    CHECK(r.census == want);
    CHECK(r.iterations == 0);  // already maximal: no enlargement step ran
}

TEST_CASE("envelope refusals") {
    CHECK_THROWS_AS(oracle_analyze(IntPoly::pure(61, 2), 2), refusal_error);
    CHECK_THROWS_AS(oracle_analyze(IntPoly::pure(2, 5), 53), refusal_error);
    CHECK_THROWS_AS(oracle_analyze(IntPoly::pure(216, 5), 2), refusal_error);
    // inside the envelope on both axes is fine
    CHECK_NOTHROW(oracle_analyze(IntPoly::pure(2, 5), 47));
}

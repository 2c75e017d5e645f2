#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ffgamma/brackets.hpp"
#include "ffgamma/error.hpp"
#include "ffgamma/relations.hpp"
#include "ffgamma/series.hpp"

using namespace ffg;

namespace {

FqPoly P(const FieldPtr& f, const std::string& s) { return parsePoly(s, f); }
FracX X(const FieldPtr& f, const std::string& s) { return parseFracX(s, f); }

struct Gen {
  std::mt19937 rng;
  explicit Gen(unsigned seed) : rng(seed) {}

  FracX x(const FieldPtr& f, unsigned maxDeg) {
    std::uniform_int_distribution<unsigned> dd(0, maxDeg);
    const unsigned d = dd(rng);
    auto mons = monicEnumerate(d, f);
    auto nums = polysBelow(d, f);
    std::uniform_int_distribution<std::size_t> pm(0, mons.size() - 1), pn(0, nums.empty() ? 0 : nums.size() - 1);
    if (nums.empty()) return FracX(FqPoly(f), mons[pm(rng)]);
    return FracX(nums[pn(rng)], mons[pm(rng)]);
  }

  BigRat y(unsigned p) {
    static const long dens[] = {1, 2, 3, 4, 5, 7, 8, 9, 11, 13, 15, 16, 24, 26, 31, 63, 80};
    std::uniform_int_distribution<std::size_t> pd(0, std::size(dens) - 1);
    long d;
    do d = dens[pd(rng)];
    while (d % long(p) == 0);
    std::uniform_int_distribution<long> pn(-3 * d, 3 * d);
    return rat(pn(rng), d);
  }
};

// <x>_N read off the 1/theta-expansion of a/c.
int geoOracle(const FracX& x, unsigned N) {
  if (x.isZero()) return 0;
  auto s = LaurentSeries::fromFraction(x.num(), x.den(), long(N) + 2);
  for (unsigned i = 1; i <= N; ++i)
    if (s.coeff(long(i))) return 0;
  return s.coeff(long(N) + 1) == 1 ? 1 : 0;
}

BigInt qpow(unsigned q, unsigned k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, k);
  return r;
}

}  // namespace

TEST_CASE("FracX reduction and printing") {
  auto F = Field::make(3);
  CHECK(X(F, "t^2+1/t") == X(F, "1/t"));
  CHECK(X(F, "t/t^2") == X(F, "1/t"));
  CHECK(X(F, "2/(2*t)") == X(F, "1/t"));
  CHECK(X(F, "t+1").isZero());
  CHECK(X(F, "0").toString() == "0");
  CHECK(X(F, "(t+1)/(t^2)").toString() == "(t+1)/t^2");
  CHECK(X(F, "(t+1)/(t^2)").ordInf() == 1);
  CHECK(parseFracX(X(F, "(2*t+1)/(t^3+t)").toString(), F) == X(F, "(2*t+1)/(t^3+t)"));
  CHECK_THROWS_AS(X(F, "1/0"), DomainError);
  CHECK((X(F, "1/t") + X(F, "2/t")).isZero());
  CHECK(X(F, "1/t^2").mul(P(F, "t")) == X(F, "1/t"));
}

TEST_CASE("arithmetic bracket and digits") {
  CHECK(ariBracket(rat(-3, 8)) == rat(5, 8));
  CHECK(ariBracket(rat(7)) == 0);
  for (long n = 1; n < 20; ++n) CHECK(ariBracket(rat(n, 7)) + ariBracket(rat(-n, 7)) == (n % 7 ? 1 : 0));
  auto d = qDigits(rat(5, 8), 3, 3);
  CHECK(d.ell == 2);
  CHECK(d.digits == std::vector<unsigned>{2, 1});
  d = qDigits(rat(1, 2), 3, 3);
  CHECK(d.ell == 1);
  CHECK(d.digits == std::vector<unsigned>{1});
  d = qDigits(rat(1, 3), 2, 2);
  CHECK(d.ell == 2);
  CHECK(d.digits == std::vector<unsigned>{1, 0});
  d = qDigits(rat(4), 5, 5);
  CHECK(d.ell == 1);
  CHECK(d.digits == std::vector<unsigned>{0});
  CHECK_THROWS_AS(qDigits(rat(1, 6), 3, 3), DomainError);
  CHECK_THROWS_AS(partial(rat(1, 4), 2, 2), DomainError);
}

TEST_CASE("digit expansion reconstructs <y> and ari relations hold") {
  Gen g(11);
  for (unsigned q : {2u, 3u, 4u, 5u, 9u}) {
    const unsigned p = q == 4 ? 2 : q == 9 ? 3 : q;
    for (int it = 0; it < 60; ++it) {
      const BigRat y = g.y(p);
      auto d = qDigits(y, q, p);
      BigRat s = 0;
      for (unsigned i = 0; i < d.ell; ++i) {
        CHECK(d.digits[i] < q);
        s += BigRat(qpow(q, i) * d.digits[i]);
      }
      s /= BigRat(qpow(q, d.ell) - 1);
      CHECK(s == ariBracket(y));
      // minimal period
      for (unsigned l = 1; l < d.ell; ++l) CHECK(!isInteger(ariBracket(y) * BigRat(qpow(q, l) - 1)));
      // sum over the Frobenius orbit
      BigRat orbit = 0;
      for (unsigned i = 0; i < d.ell; ++i) orbit += ariBracket(y * BigRat(qpow(q, i)));
      CHECK(orbit == BigRat(d.ell) * wt0Ari(y, q, p) / (q - 1));
      // y_i of <y> and of <-y> are complementary
      if (!isInteger(y)) {
        auto e = qDigits(-y, q, p);
        REQUIRE(e.ell == d.ell);
        for (unsigned i = 0; i < d.ell; ++i) CHECK(d.digits[i] + e.digits[i] == q - 1);
      }
    }
  }
}

TEST_CASE("p-adic digits agree with a modular oracle") {
  Gen g(5);
  for (unsigned q : {2u, 3u, 5u, 4u}) {
    const unsigned p = q == 4 ? 2 : q;
    for (int it = 0; it < 60; ++it) {
      const BigRat y = g.y(p) * 7 - 3;
      auto pd = padicDigits(y, q, p);
      const unsigned M = 30;
      const BigInt mod = qpow(q, M);
      BigInt inv;
      mpz_invert(inv.get_mpz_t(), y.get_den().get_mpz_t(), mod.get_mpz_t());
      BigInt r = (y.get_num() * inv) % mod;
      if (r < 0) r += mod;
      BigRat truncated = 0;
      for (unsigned i = 0; i < M; ++i) {
        BigInt di = r % q;
        r /= q;
        CHECK(pd.digit(i) == di.get_ui());
        truncated += BigRat(BigInt(i) * di * qpow(q, i));
      }
      // the digit series for d(y) converges q-adically to the closed value
      BigRat diff = partial(y, q, p) - truncated;
      diff.canonicalize();
      if (diff != 0) {
        CHECK(diff.get_num() % qpow(p, M - 1) == 0);
        CHECK(diff.get_den() % p != 0);
      }
    }
  }
}

TEST_CASE("partial derivative examples") {
  for (unsigned q : {2u, 3u, 5u}) {
    CHECK(partial(0, q, q) == 0);
    CHECK(partial(1, q, q) == 0);
    CHECK(partial(BigRat(q), q, q) == BigRat(q));
    for (unsigned ell = 1; ell <= 3; ++ell)
      for (unsigned c = 0; c < ell; ++c) {
        const BigRat qc(qpow(q, c)), ql(qpow(q, ell));
        const BigRat y = qc / (1 - ql);
        BigRat expect = BigRat(c) * qc / (1 - ql) + BigRat(ell) * ql * qc / ((1 - ql) * (1 - ql));
        expect.canonicalize();
        CHECK(partial(y, q, q) == expect);
      }
  }
  auto F = Field::make(3);
  CHECK(partialTwoVar(X(F, "1/t"), rat(-3, 8)) == twoVarBracket(X(F, "1/t"), rat(3, 8)));
}

TEST_CASE("geometric bracket: closed form against the expansion oracle") {
  for (unsigned p : {2u, 3u, 5u}) {
    auto F = Field::make(p);
    for (unsigned d = 0; d <= 3; ++d)
      for (auto& c : monicEnumerate(d, F))
        for (auto& a : polysBelow(d, F)) {
          FracX x(a, c);
          int total = 0;
          for (unsigned N = 0; N <= 5; ++N) {
            CHECK(geoBracketN(x, N) == geoOracle(x, N));
            total += geoBracketN(x, N);
          }
          CHECK(total == geoBracket(x));
        }
  }
  auto F3 = Field::make(3);
  CHECK(geoBracketN(X(F3, "1/t"), 0) == 1);
  for (unsigned N = 0; N < 4; ++N) {
    CHECK(geoBracketN(X(F3, "2/t"), N) == 0);
    CHECK(geoBracketN(X(F3, "0"), N) == 0);
  }
  CHECK(geoBracket(X(F3, "1/t")) == 1);
  CHECK(geoBracket(X(F3, "2/t")) == 0);
}

TEST_CASE("two-variable bracket: closed form equals digit sum exhaustively") {
  for (unsigned p : {2u, 3u}) {
    auto F = Field::make(p);
    std::vector<BigRat> ys;
    for (long den : {1L, 3L, 5L, 7L, 8L, 13L})
      if (den % long(p))
        for (long n = 0; n < den; ++n) ys.push_back(rat(n, den));
    for (unsigned d = 0; d <= 3; ++d)
      for (auto& c : monicEnumerate(d, F))
        for (auto& a : polysBelow(d, F)) {
          FracX x(a, c);
          for (auto& y : ys) CHECK(twoVarBracket(x, y) == twoVarBracketDigitSum(x, y));
        }
  }
  auto F = Field::make(3);
  CHECK(twoVarBracket(X(F, "1/t"), rat(3, 8)) == 1);
  CHECK(twoVarBracket(X(F, "1/t"), rat(1, 8)) == 0);
}

TEST_CASE("two-variable bracket relations on random inputs") {
  Gen g(2024);
  for (unsigned p : {2u, 3u, 5u}) {
    auto F = Field::make(p);
    const unsigned q = p;
    for (int it = 0; it < 200; ++it) {
      const FracX x = g.x(F, 3);
      const BigRat y = g.y(p);
      // <x, 1/(q-1)> = <x>_geo for q > 2 (at q = 2, 1/(q-1) is an integer) and <a, y> = 0
      if (q > 2) CHECK(twoVarBracket(x, rat(1, long(q) - 1)) == geoBracket(x));
      CHECK(twoVarBracket(FracX(F), y) == 0);
      // reflection in y
      const BigRat refl = twoVarBracket(x, y) + twoVarBracket(x, -y);
      CHECK(refl == (isInteger(y) ? BigRat(0) : BigRat((q - 1) * geoBracket(x))));
      // reflection over eps for the basis values q^i/(q^l - 1)
      const auto d = qDigits(y, q, p);
      for (unsigned i = 0; i < d.ell; ++i) {
        const BigRat yi = BigRat(qpow(q, i)) / BigRat(qpow(q, d.ell) - 1);
        if (isInteger(yi)) continue;  // q = 2, l = 1
        BigRat s = 0;
        for (Fe e = 1; e < q; ++e) s += twoVarBracket(x.scale(e), yi);
        const long ord = x.ordInf();
        const bool hit = !x.isZero() && (((ord + long(i)) % long(d.ell)) + long(d.ell)) % long(d.ell) == 0;
        CHECK(s == (hit ? 1 : 0));
      }
      // full reflection: sum over Frobenius and eps gives l * wt_0
      BigRat s = 0;
      for (unsigned i = 0; i < d.ell; ++i)
        for (Fe e = 1; e < q; ++e) s += twoVarBracket(x.scale(e), y * BigRat(qpow(q, i)));
      CHECK(s == BigRat(d.ell) * weights(x, y).wt0);
      // geometric reflection
      int gs = 0;
      for (Fe e = 1; e < q; ++e) gs += geoBracket(x.scale(e));
      CHECK(BigRat(gs) == weights(x, y).wt0Geo);
    }
  }
}

TEST_CASE("multiplication relations on random inputs") {
  Gen g(77);
  for (unsigned p : {2u, 3u, 5u}) {
    auto F = Field::make(p);
    const unsigned q = p;
    for (int it = 0; it < 80; ++it) {
      const FracX x = g.x(F, 2);
      const BigRat y = g.y(p);
      std::uniform_int_distribution<unsigned> dd(1, 2);
      const unsigned dn = dd(g.rng);
      auto mons = monicEnumerate(dn, F);
      const FqPoly n = mons[std::uniform_int_distribution<std::size_t>(0, mons.size() - 1)(g.rng)];
      const BigInt absn = qpow(q, dn);
      BigRat lhs = 0;
      int glhs = 0;
      for (auto& a : polysBelow(dn, F)) {
        const FracX xa = x + FracX(a, n);
        lhs += twoVarBracket(xa, y);
        glhs += geoBracket(xa);
      }
      const BigRat ny = y * BigRat(absn);
      CHECK(lhs == twoVarBracket(x.mul(n), ny) - ariBracket(ny) + BigRat(absn) * ariBracket(y));
      CHECK(BigRat(glhs) == geoBracket(x.mul(n)) + BigRat(absn - 1) / BigRat(q - 1));
    }
  }
}

TEST_CASE("weights") {
  // at q = 2 the class of 1/(1-q) is 0, so its arithmetic weight vanishes
  CHECK(weights(FracX(Field::make(2)), rat(-1)).wtAri == 0);
  for (unsigned q : {3u, 5u}) {
    auto F = Field::make(q);
    auto w = weights(FracX(F), rat(1, 1 - long(q)));
    CHECK(w.wtAri == 1);
    CHECK(w.wtGeo == -1);
    CHECK(w.wt0Geo == 0);
    CHECK(w.wt == -1);
    auto w1 = weights(X(F, "1/t"), rat(1, long(q) - 1));
    CHECK(w1.wt0Geo == 1);
    CHECK(w1.wtGeo == 0);
    CHECK(w1.wt0 == 1);
  }
  auto F = Field::make(3);
  auto w = weights(X(F, "1/t"), rat(5, 8));
  CHECK(w.wt0Ari == rat(3, 2));
  CHECK(w.wtAri == rat(1, 2));
}

TEST_CASE("relation suite holds on every instance") {
  for (unsigned p : {2u, 3u, 5u}) {
    auto F = Field::make(p);
    auto checks = bracketRelationSuite(F, 40, 11 + p, p == 5 ? 2 : 3);
    CHECK(checks.size() == 40 * 10);
    for (auto& c : checks) {
      INFO(c.relation << " " << c.instance);
      CHECK(c.holds);
    }
  }
}

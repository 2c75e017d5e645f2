#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ffgamma/carlitz.hpp"
#include "ffgamma/error.hpp"
#include "ffgamma/gamma.hpp"

using namespace ffg;

namespace {

FracX X(const FieldPtr& f, const std::string& s) { return parseFracX(s, f); }

std::vector<FracX> reducedUpTo(const FieldPtr& f, unsigned maxDeg) {
  std::vector<FracX> out;
  for (unsigned d = 1; d <= maxDeg; ++d)
    for (auto& c : monicEnumerate(d, f))
      for (auto& a : polysBelow(d, f)) {
        if (a.isZero() || polyGcd(a, c).deg() > 0) continue;
        out.push_back(FracX(a, c));
      }
  return out;
}

BigRat randomY(std::mt19937& rng, unsigned p) {
  static const long dens[] = {1, 2, 3, 4, 5, 7, 8, 13, 26, 80};
  long d;
  do d = dens[std::uniform_int_distribution<std::size_t>(0, std::size(dens) - 1)(rng)];
  while (d % long(p) == 0);
  return rat(std::uniform_int_distribution<long>(-4 * d, 4 * d)(rng), d);
}

// prod_{i>=1} (1 - u^(q^i - 1))^(-1), built term by term.
LaurentSeries reflectionProduct(const FieldPtr& f, long budget) {
  LaurentSeries acc = LaurentSeries::one(f, 1).truncate(budget);
  for (long m = long(f->q()) - 1; m < budget; m = (m + 1) * long(f->q()) - 1)
    acc = (acc * LaurentSeries::geometricInverse(f, 1, m, budget)).truncate(budget);
  return acc;
}

}  // namespace

TEST_CASE("fast level product matches the naive product bit for bit") {
  for (unsigned p : {2u, 3u, 5u}) {
    auto F = Field::make(p);
    const long budget = 40;
    for (auto& x : reducedUpTo(F, p == 5 ? 2 : 3)) {
      for (unsigned i = 0; i <= 3; ++i) {
        if (ipow(p, i) > 125) break;
        auto fast = levelProduct(x, i, budget);
        auto naive = levelProductNaive(x, i, budget);
        CHECK(fast == naive);
        const long dev = levelDeviation(x, i);
        if (dev < budget) CHECK((fast - LaurentSeries::one(F, 1)).valuation() == dev);
        else CHECK((fast - LaurentSeries::one(F, 1)).isZero());
      }
    }
  }
}

TEST_CASE("level product over an extension field") {
  auto F = Field::make(2, 2);
  for (auto& x : reducedUpTo(F, 2))
    for (unsigned i = 0; i <= 2; ++i) CHECK(levelProduct(x, i, 30) == levelProductNaive(x, i, 30));
}

TEST_CASE("arithmetic factorial basics") {
  std::mt19937 rng(3);
  for (unsigned p : {2u, 3u, 5u}) {
    auto F = Field::make(p);
    auto one = LaurentSeries::one(F, 1).truncate(40);
    CHECK(piAri(F, 0, 40) == one);
    CHECK(piAri(F, 1, 40) == one);  // digit y_0 is not used
    for (int it = 0; it < 20; ++it) {
      auto s = piAri(F, randomY(rng, p), 40);
      CHECK(s.prec() == 40);
      CHECK(s.valuation() == 0);
      CHECK(s.coeff(0) == 1);
    }
  }
}

TEST_CASE("arithmetic reflection formula to budget 40") {
  std::mt19937 rng(17);
  for (unsigned p : {2u, 3u}) {
    auto F = Field::make(p);
    const long budget = 40;
    const auto rhs = reflectionProduct(F, budget);
    // the same product is the period up to eta^q
    auto pi = carlitzPeriod(F, budget * long(p - 1));
    auto rhsR = p == 2 ? rhs : rhs.embedRamified();
    CHECK(rhsR.shift(-long(p)).truncate(pi.prec()).agreesWith(pi));
    for (int it = 0; it < 20; ++it) {
      const BigRat y = randomY(rng, p);
      auto lhs = (gammaAri(F, y, budget) * gammaAri(F, 1 - y, budget)).truncate(budget);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("geometric factorials") {
  std::mt19937 rng(8);
  for (unsigned p : {2u, 3u}) {
    auto F = Field::make(p);
    CHECK(piGeoTwo(FracX(F), rat(5, 7), 30) == LaurentSeries::one(F, 1).truncate(30));
    auto xs = reducedUpTo(F, 2);
    for (int it = 0; it < 20; ++it) {
      const FracX x = xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
      const BigRat y = randomY(rng, p);
      auto fast = piGeoTwo(x, y, 30);
      CHECK(fast == piGeoTwo(x, y, 30, true));
      CHECK(fast.valuation() == 0);
    }
    for (auto& x : xs) CHECK(piGeo(x, 30) == piGeoTwo(x, rat(1, 1 - long(p)), 30));
  }
}

TEST_CASE("digit splitting is exact for purely periodic arguments") {
  // y = sum y_i q^i/(1 - q^l) has digits y_0..y_(l-1) repeated, so the factorials
  // split multiplicatively along the basis q^i/(1 - q^l)
  for (unsigned p : {2u, 3u}) {
    auto F = Field::make(p);
    const long budget = 40;
    for (unsigned ell = 1; ell <= 3; ++ell) {
      const long ql = long(ipow(p, ell));
      for (long m = 0; m < ql; m += (ell == 3 ? 5 : 1)) {
        const BigRat y = rat(m, 1 - ql);
        auto ari = LaurentSeries::one(F, 1).truncate(budget);
        long mm = m;
        for (unsigned i = 0; i < ell; ++i, mm /= long(p)) {
          const long yi = mm % long(p);
          ari = (ari * piAri(F, rat(long(ipow(p, i)), 1 - ql), budget).pow(yi, budget)).truncate(budget);
        }
        CHECK(piAri(F, y, budget) == ari);
        for (auto& x : {X(F, "1/t"), X(F, "1/(t+1)"), X(F, "t/(t^2+1)")}) {
          auto geo = LaurentSeries::one(F, 1).truncate(budget);
          mm = m;
          for (unsigned i = 0; i < ell; ++i, mm /= long(p)) {
            const long yi = mm % long(p);
            geo = (geo * piGeoTwo(x, rat(long(ipow(p, i)), 1 - ql), budget).pow(yi, budget)).truncate(budget);
          }
          CHECK(piGeoTwo(x, y, budget) == geo);
        }
      }
    }
  }
}

TEST_CASE("gamma tilde: valuations and special values") {
  for (unsigned p : {2u, 3u}) {
    auto F = Field::make(p);
    const std::vector<BigRat> ys = {0, rat(1, 2), rat(1, 3), rat(5, 8), rat(-2, 7), rat(3, 13)};
    for (auto& x : reducedUpTo(F, 2))
      for (auto& y : ys) {
        if (y.get_den() % p == 0) continue;
        auto g = gammaTilde(x, y, 25);
        CHECK(g.valuation() == gammaTildeValuation(x));
        CHECK(gammaTildeValuation(x) == x.num().deg() - x.den().deg());
        CHECK(gammaTwoVar(x, y, 25).valuation() == -long(x.ordInf()));
      }
    CHECK(gammaTilde(FracX(F), 0, 30) == LaurentSeries::one(F, 1).truncate(30));
    CHECK(gammaAri(F, 1, 30) == LaurentSeries::one(F, 1).truncate(30));
    CHECK_THROWS_AS(gammaTwoVar(FracX(F), rat(1, 2 + p), 10), DomainError);
  }
  auto F3 = Field::make(3);
  for (auto& y : {BigRat(0), rat(1, 2), rat(3, 8)}) CHECK(gammaTilde(X(F3, "1/t"), y, 20).valuation() == -1);
}

TEST_CASE("gamma tilde geo against the product form") {
  for (unsigned p : {3u, 5u}) {
    auto F = Field::make(p);
    const long q = long(p);
    const long budget = 30;
    for (auto& x : reducedUpTo(F, p == 3 ? 2 : 1)) {
      auto lhs = gammaTilde(x, rat(1, 1 - q), budget);
      auto rhs = gammaGeo(x, budget) * gammaAri(F, 1 - rat(1, q - 1), budget + 4).inv(budget + 4);
      CHECK(rhs.prec() == budget);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("gamma star valuations") {
  for (unsigned q : {2u, 3u, 5u}) {
    auto F = Field::make(q);
    for (unsigned ell = 1; ell <= 3; ++ell)
      for (unsigned c = 0; c < ell; ++c) {
        const BigRat qc(long(ipow(q, c))), ql(long(ipow(q, ell)));
        const BigRat y = 1 - qc / (ql - 1);
        BigRat expect = BigRat(c) * qc / (1 - ql) + BigRat(ell) * ql * qc / ((1 - ql) * (1 - ql));
        expect.canonicalize();
        CHECK(gammaStarAriValuation(F, y) == expect);
        CHECK(gammaStarValuation(FracX(F), y) == -expect);
      }
    CHECK(gammaStarAriValuation(F, 1) == 0);
    CHECK(gammaStarValuation(FracX(F), 1) == 0);
    // for integral y the bracket term vanishes and only -d(y-1) remains,
    // which is 0 exactly when y-1 is a single base-q digit
    for (auto& x : reducedUpTo(F, 2)) {
      for (long N = 1; N <= long(q); ++N) CHECK(gammaStarValuation(x, N) == 0);
      for (long N : {0L, long(q) + 1, 7L}) CHECK(gammaStarValuation(x, N) == -partial(N - 1, q, q));
    }
    CHECK(gammaStarValuation(X(F, "1/t"), long(q) + 1) == -BigRat(q));
  }
  // nonzero x: -<x, 1-y> ord(x) - d(y-1)
  auto F = Field::make(3);
  const FracX x = X(F, "1/t^2");
  const BigRat y = rat(5, 8);
  CHECK(gammaStarValuation(x, y) == -twoVarBracket(x, 1 - y) * 2 - partial(y - 1, 3, 3));
}

TEST_CASE("gamma star valuation against series") {
  // v(Gamma*) = (1 - d(x, y-1)) ord(x) - d(y-1) + v(Gamma(x, y)), with the
  // last term read off the computed series
  for (unsigned q : {2u, 3u}) {
    auto F = Field::make(q);
    for (auto& x : reducedUpTo(F, 2)) {
      if (x.isZero()) continue;
      for (unsigned ell = 1; ell <= 2; ++ell) {
        const long m = long(ipow(q, ell)) - 1;
        for (long k = 0; k < m; k += 2) {
          const BigRat y = rat(k, m);
          const LaurentSeries g = gammaTwoVar(x, y, 12);
          const BigRat vx(x.ordInf());
          BigRat v = (1 - partialTwoVar(x, y - 1)) * vx - partial(y - 1, q, q) + BigRat(g.valuation());
          v.canonicalize();
          CHECK(v == gammaStarValuation(x, y));
        }
      }
    }
  }
}

TEST_CASE("gamma monomials") {
  auto F = Field::make(3);
  GammaMonomial empty;
  auto v = monomialEvaluate(empty, F, 20);
  CHECK(v.valuation == 0);
  REQUIRE(v.series);
  CHECK(*v.series == LaurentSeries::one(F, 1).truncate(20));

  GammaMonomial pi;
  pi.piExponent = 1;
  v = monomialEvaluate(pi, F, 20);
  CHECK(v.valuation == rat(-3, 2));
  REQUIRE(v.series);
  CHECK(v.series->agreesWith(carlitzPeriod(F, 40)));
  CHECK(v.series->prec() == 40);
  CHECK(v.series->normalizedValuation() == v.valuation);

  GammaMonomial m;
  m.add(X(F, "1/t"), rat(1, 2), 2);
  m.add(X(F, "2/t^2"), rat(-3, 8), -1);
  m.add(X(F, "1/t"), rat(3, 2), -1);  // same key as (1/t, 1/2)
  CHECK(m.factors.size() == 2);
  CHECK(m.factors.at({X(F, "1/t"), rat(1, 2)}) == 1);
  v = monomialEvaluate(m, F, 25);
  CHECK(v.valuation == -1 + 2);
  REQUIRE(v.series);
  auto direct = (gammaTilde(X(F, "1/t"), rat(1, 2), 40) * gammaTilde(X(F, "2/t^2"), rat(5, 8), 40).inv(40)).truncate(25);
  CHECK(*v.series == direct);
  CHECK(v.series->normalizedValuation() == v.valuation);

  m.add(X(F, "1/t"), rat(1, 2), -1);
  m.add(X(F, "1/t"), rat(1, 2), rat(1, 2));
  m.piExponent = rat(1, 2);
  v = monomialEvaluate(m, F, 25);
  CHECK(!v.series);
  CHECK(v.valuation == rat(1, 2) * rat(-3, 2) + rat(1, 2) * (-1) + 2);

  // pi times gamma factors in the ramified field
  GammaMonomial mix;
  mix.piExponent = -1;
  mix.add(X(F, "1/t"), 0, 1);
  v = monomialEvaluate(mix, F, 20);
  REQUIRE(v.series);
  CHECK(v.series->ram() == 2);
  CHECK(v.series->prec() == 40);
  CHECK(v.series->normalizedValuation() == v.valuation);
  CHECK(v.valuation == rat(3, 2) - 1);
}

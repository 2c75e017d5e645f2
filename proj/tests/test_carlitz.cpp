#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ffgamma/carlitz.hpp"
#include "ffgamma/error.hpp"

using namespace ffg;

namespace {

FqPoly P(const FieldPtr& f, const std::string& s) { return parsePoly(s, f); }

BivarPoly B(const FieldPtr& f, std::vector<std::string> zc) {
  std::vector<FqPoly> v;
  for (auto& s : zc) v.push_back(s.empty() ? FqPoly(f) : P(f, s));
  return BivarPoly(f, v);
}

// C_a by composing the generic bivariate polynomials C_b(t, tz + z^q) + eps z.
BivarPoly divisionByComposition(const FqPoly& a) {
  const FieldPtr& f = a.field();
  const BivarPoly z = BivarPoly::z(f);
  BivarPoly zq = z;
  for (unsigned k = 1; k < f->q(); ++k) zq = zq * z;
  const BivarPoly inner = BivarPoly::constant(FqPoly::t(f)) * z + zq;
  BivarPoly c(f);
  for (int k = a.deg(); k >= 0; --k)
    c = c.compose(inner) + BivarPoly::constant(FqPoly::constant(f, a.coeff(k))) * z;
  return c;
}

std::vector<FqPoly> monicUpTo(const FieldPtr& f, unsigned d) {
  std::vector<FqPoly> out;
  for (unsigned k = 1; k <= d; ++k)
    for (auto& m : monicEnumerate(k, f)) out.push_back(m);
  return out;
}

}  // namespace

TEST_CASE("division polynomial examples") {
  auto F = Field::make(3);
  CarlitzContext C(F);
  CHECK(C.divisionPoly(FqPoly(F)).isZero());
  CHECK(C.divisionPoly(P(F, "1")) == BivarPoly::z(F));
  CHECK(C.divisionPoly(P(F, "t")) == B(F, {"", "t", "", "1"}));
  CHECK(C.divisionPoly(P(F, "t^2")) == B(F, {"", "t^2", "", "t^3+t", "", "", "", "", "", "1"}));
  auto F2 = Field::make(2);
  CHECK(CarlitzContext(F2).divisionPoly(P(F2, "t")) == B(F2, {"", "t", "1"}));
}

TEST_CASE("additive recursion agrees with bivariate composition") {
  for (unsigned p : {2u, 3u}) {
    auto F = Field::make(p);
    CarlitzContext C(F);
    for (unsigned d = 0; d <= 3; ++d)
      for (auto& a : polysBelow(d + 1, F)) {
        if (a.deg() != int(d)) continue;
        CHECK(C.divisionPoly(a) == divisionByComposition(a));
        if (!a.isZero()) CHECK(C.divisionPoly(a).degZ() == int(ipow(p, d)));
      }
  }
}

TEST_CASE("module axioms: linearity and composition") {
  std::mt19937 rng(4);
  for (unsigned p : {2u, 3u}) {
    auto F = Field::make(p);
    CarlitzContext C(F);
    auto small = polysBelow(3, F);
    std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
    for (int it = 0; it < 25; ++it) {
      auto a = small[pick(rng)], b = small[pick(rng)];
      CHECK(C.divisionPoly(a * b) == C.divisionPoly(a).compose(C.divisionPoly(b)));
      CHECK(C.divisionPoly(a + b) == C.divisionPoly(a) + C.divisionPoly(b));
      // only z^(q^k) terms occur
      for (auto& [ij, c] : C.divisionPoly(a).terms()) {
        std::uint64_t j = std::uint64_t(ij.second);
        while (j % p == 0) j /= p;
        CHECK(j == 1);
      }
    }
  }
}

TEST_CASE("cyclotomic polynomial examples") {
  auto F = Field::make(3);
  CarlitzContext C(F);
  CHECK(C.cyclotomicPoly(P(F, "1")) == BivarPoly::z(F));
  CHECK(C.cyclotomicPoly(P(F, "t")) == B(F, {"t", "", "1"}));
  CHECK(C.cyclotomicPoly(P(F, "t^2")) == B(F, {"t", "", "t^2", "", "2*t", "", "1"}));
  CHECK_THROWS_AS(C.cyclotomicPoly(P(F, "2*t")), DomainError);
}

TEST_CASE("cyclotomic factors reconstruct C_n and have degree #(A/n)^x") {
  for (unsigned p : {2u, 3u}) {
    auto F = Field::make(p);
    CarlitzContext C(F);
    for (auto& n : monicUpTo(F, 3)) {
      BivarPoly prod = BivarPoly::constant(FqPoly::constant(F, 1));
      for (auto& m : monicDivisors(n)) prod = prod * C.cyclotomicPoly(m);
      CHECK(prod == C.divisionPoly(n));
      CHECK(C.cyclotomicPoly(n).degZ() == int(eulerPhi(n)));
      CHECK(C.cyclotomicPoly(n).zcoeffs().back().isOne());
    }
  }
}

TEST_CASE("D_i recursion and product form") {
  for (unsigned p : {2u, 3u, 5u}) {
    auto F = Field::make(p);
    CarlitzContext C(F);
    CHECK(C.D(0).isOne());
    for (unsigned i = 1; i <= 3; ++i) {
      FqPoly prod = FqPoly::constant(F, 1);
      for (unsigned j = 0; j < i; ++j)
        prod = prod * (FqPoly::monomial(F, 1, unsigned(ipow(p, i))) - FqPoly::monomial(F, 1, unsigned(ipow(p, j))));
      CHECK(C.D(i) == prod);
      CHECK(C.D(i).deg() == int(i * ipow(p, i)));
    }
  }
}

TEST_CASE("exp at zero and the functional equation") {
  std::mt19937 rng(9);
  for (unsigned p : {2u, 3u}) {
    auto F = Field::make(p);
    CarlitzContext C(F);
    CHECK(C.exp(LaurentSeries::zero(F, 1), 30).isZero());
    const long budget = 30;
    std::uniform_int_distribution<unsigned> cd(0, p - 1);
    std::uniform_int_distribution<int> vd(1, 3);
    for (int it = 0; it < 10; ++it) {
      std::vector<Fe> c(40);
      for (auto& x : c) x = cd(rng);
      c[0] = 1;
      LaurentSeries z(F, 1, vd(rng), c, 60);
      LaurentSeries th = C.theta(1);
      LaurentSeries lhs = C.exp(th * z, budget + 10);
      LaurentSeries ez = C.exp(z, budget + 10);
      LaurentSeries rhs = th * ez + ez.frobenius(1);
      CHECK(lhs.agreesWith(rhs));
      CHECK(std::min(lhs.prec(), rhs.prec()) >= budget);
    }
  }
}

TEST_CASE("exp agrees with the truncated lattice product") {
  // exp(z) = z prod_{a != 0} (1 - z/(pi a)); with z = pi/theta^2 every factor is
  // 1 - 1/(theta^2 a), and omitting deg a > D leaves an error of valuation
  // at least v(z) + 2 + D + 1 in v_inf units.
  for (unsigned p : {2u, 3u}) {
    auto F = Field::make(p);
    CarlitzContext C(F);
    const unsigned R = p - 1;
    const unsigned D = 3;
    const long budget = 40;
    auto lam = C.lambda(P(F, "t^2"), budget);
    auto pi = C.period(budget + 10);
    const long cap1 = 30;
    LaurentSeries prod = LaurentSeries::one(F, 1);
    for (unsigned d = 0; d <= D; ++d)
      for (auto& m : monicEnumerate(d, F))
        for (Fe e = 1; e < p; ++e) {
          FqPoly a = m.scale(e);
          FqPoly den = a * P(F, "t^2");
          prod = (prod * (LaurentSeries::one(F, 1) - LaurentSeries::fromFraction(FqPoly::constant(F, 1), den, cap1)))
                     .truncate(cap1);
        }
    LaurentSeries th2inv = LaurentSeries::fromFraction(FqPoly::constant(F, 1), P(F, "t^2"), cap1);
    LaurentSeries zz = R == 1 ? th2inv : th2inv.embedRamified();
    LaurentSeries pr = R == 1 ? prod : prod.embedRamified();
    LaurentSeries rhs = pi * zz * pr;
    // provable precision in v_inf units: v(z) + 2 + D + 1 with v(z) = -q/(q-1) + 2
    const BigRat vz = rat(-long(p), long(R)) + 2;
    const BigRat bound = vz + 2 + D + 1;
    const long boundU = long(ratFloor(bound * R).get_si());
    CHECK(lam.truncate(boundU).agreesWith(rhs.truncate(boundU)));
    CHECK(std::min(lam.prec(), rhs.prec()) >= boundU);
    CHECK(lam.normalizedValuation() == vz);
  }
}

TEST_CASE("period valuation, unramified power, and budget stability") {
  for (unsigned p : {2u, 3u, 5u}) {
    auto F = Field::make(p);
    CarlitzContext C(F);
    auto pi = C.period(30);
    CHECK(pi.prec() == 30);
    CHECK(pi.normalizedValuation() == rat(-long(p), long(p - 1)));
    auto piq = pi.pow(p - 1);
    for (std::size_t k = 0; k < piq.coeffs().size(); ++k)
      if (piq.coeffs()[k]) CHECK((piq.v0() + long(k)) % long(p - 1) == 0);
    CHECK(pi.agreesWith(C.period(61)));
    // the period lies in the kernel of exp
    auto e = C.exp(pi, 30);
    CHECK(e.isZero());
    CHECK(e.prec() == 30);
  }
}

TEST_CASE("lambda_t squares to -theta at q = 3") {
  auto F = Field::make(3);
  CarlitzContext C(F);
  auto lam = C.lambda(P(F, "t"), 30);
  CHECK(lam.valuation() == -1);
  CHECK((lam.coeffs()[0] == 1 || lam.coeffs()[0] == 2));
  auto r = C.theta(2) + lam * lam;
  CHECK(r.isZero());
  CHECK(r.prec() >= 30 - 2 * 2);
}

TEST_CASE("torsion relation C_t(theta, lambda_{t^2}) = lambda_t") {
  for (unsigned p : {2u, 3u}) {
    auto F = Field::make(p);
    CarlitzContext C(F);
    const unsigned R = p - 1;
    auto l2 = C.lambda(P(F, "t^2"), 40);
    auto l1 = C.lambda(P(F, "t"), 40);
    auto lhs = C.evaluate(C.divisionPoly(P(F, "t")), C.theta(R), l2);
    CHECK(lhs.agreesWith(l1));
    CHECK(std::min(lhs.prec(), l1.prec()) >= 40 - 2 * long(R));
  }
}

TEST_CASE("lambda_n is a root of C*_n to the precision bound") {
  for (unsigned p : {2u, 3u}) {
    auto F = Field::make(p);
    CarlitzContext C(F);
    const long R = long(p) - 1;
    for (auto ns : {"t", "t+1", "t^2", "t^2+t"}) {
      for (long budget : {30L, 45L}) {
        auto n = P(F, ns);
        auto lam = C.lambda(n, budget);
        auto val = C.evaluate(C.cyclotomicPoly(n), C.theta(unsigned(R)), lam);
        // v_inf(C*_n(theta, lambda_n)) >= budget/(q-1) - 2, i.e. in u-units >= budget - 2(q-1)
        CHECK(val.isZero());
        CHECK(val.valuationBound() >= budget - 2 * R);
      }
    }
  }
}

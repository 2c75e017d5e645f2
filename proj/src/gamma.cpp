#include "ffgamma/gamma.hpp"

#include <limits>

#include "ffgamma/carlitz.hpp"
#include "ffgamma/error.hpp"

namespace ffg {

namespace {

constexpr long kBig = std::numeric_limits<long>::max() / 8;

// q^k saturated at kBig.
long qpowSat(unsigned q, unsigned k) {
  long r = 1;
  for (unsigned j = 0; j < k; ++j) {
    if (r > kBig / long(q)) return kBig;
    r *= long(q);
  }
  return r;
}

LaurentSeries xSeries(const FracX& x, long budget) { return LaurentSeries::fromFraction(x.num(), x.den(), budget); }

void requireBudget(long budget) {
  if (budget < 0 || budget >= LaurentSeries::kExact) throw DomainError("budget must be a finite non-negative precision");
}

}  // namespace

long levelDeviation(const FracX& x, unsigned i) {
  if (x.isZero()) return kBig;
  const unsigned q = x.field()->q();
  long s = x.ordInf();
  for (unsigned k = 1; k <= i; ++k) {
    const long qk = qpowSat(q, k);
    if (qk >= kBig || s >= kBig - qk) return kBig;
    s += qk;
  }
  return s;
}

LaurentSeries levelProduct(const FracX& x, unsigned i, long budget) {
  requireBudget(budget);
  const FieldPtr& f = x.field();
  const LaurentSeries one = LaurentSeries::one(f, 1);
  if (levelDeviation(x, i) >= budget) return one.truncate(budget);
  const unsigned q = f->q();
  LaurentSeries fi = xSeries(x, budget);
  for (unsigned k = 0; k < i; ++k) {
    const long qk1 = qpowSat(q, k + 1);
    // 1/(theta^(q^(k+1)) - theta) = u^(q^(k+1)) (1 - u^(q^(k+1) - 1))^(-1)
    LaurentSeries ratio = LaurentSeries::geometricInverse(f, 1, qk1 - 1, budget).shift(qk1);
    fi = ((fi.frobenius(1, budget) - fi) * ratio).truncate(budget);
  }
  return (one + fi).truncate(budget);
}

LaurentSeries levelProductNaive(const FracX& x, unsigned i, long budget) {
  requireBudget(budget);
  const FieldPtr& f = x.field();
  const LaurentSeries one = LaurentSeries::one(f, 1);
  LaurentSeries acc = one.truncate(budget);
  if (x.isZero()) return acc;
  for (const auto& a : monicEnumerate(i, f))
    acc = (acc * (one + LaurentSeries::fromFraction(x.num(), x.den() * a, budget))).truncate(budget);
  return acc;
}

LaurentSeries piAri(const FieldPtr& f, const BigRat& y, long budget) {
  requireBudget(budget);
  const unsigned q = f->q();
  const PadicDigits d = padicDigits(y, q, f->p());
  LaurentSeries acc = LaurentSeries::one(f, 1).truncate(budget);
  for (unsigned i = 1;; ++i) {
    const long qi = qpowSat(q, i), qi1 = qpowSat(q, i - 1);
    if (qi >= kBig || qi - qi1 >= budget) break;
    const unsigned di = d.digit(i);
    if (!di) continue;
    LaurentSeries Ai = LaurentSeries::one(f, 1);
    for (unsigned j = 0; j < i; ++j)
      Ai = (Ai * (LaurentSeries::one(f, 1) - LaurentSeries::monomial(f, 1, 1, qi - qpowSat(q, j)))).truncate(budget);
    acc = (acc * Ai.pow(di, budget)).truncate(budget);
  }
  return acc;
}

LaurentSeries piGeoTwo(const FracX& x, const BigRat& y, long budget, bool naive) {
  requireBudget(budget);
  const FieldPtr& f = x.field();
  LaurentSeries acc = LaurentSeries::one(f, 1).truncate(budget);
  if (x.isZero()) return acc;
  const PadicDigits d = padicDigits(y, f->q(), f->p());
  for (unsigned i = 0; levelDeviation(x, i) < budget; ++i) {
    const unsigned di = d.digit(i);
    if (!di) continue;
    LaurentSeries L = naive ? levelProductNaive(x, i, budget) : levelProduct(x, i, budget);
    acc = (acc * L.pow(-static_cast<long long>(di), budget)).truncate(budget);
  }
  return acc;
}

LaurentSeries piGeo(const FracX& x, long budget) {
  const long q = long(x.field()->q());
  return piGeoTwo(x, rat(1, 1 - q), budget);
}

LaurentSeries gammaAri(const FieldPtr& f, const BigRat& y, long budget) { return piAri(f, y - 1, budget); }

LaurentSeries gammaGeo(const FracX& x, long budget) {
  if (x.isZero()) throw DomainError("Gamma_geo has a pole at 0");
  const long g = x.ordInf();
  LaurentSeries xinv = LaurentSeries::fromFraction(x.den(), x.num(), budget);
  return (xinv * piGeo(x, budget + g)).truncate(budget);
}

LaurentSeries gammaTwoVar(const FracX& x, const BigRat& y, long budget) {
  if (x.isZero()) throw DomainError("Gamma(x, y) has a pole at x = 0");
  const FieldPtr& f = x.field();
  const long g = x.ordInf();
  const BigRat y1 = y - 1;
  LaurentSeries xinv = LaurentSeries::fromFraction(x.den(), x.num(), budget);
  LaurentSeries pg = piGeoTwo(x, y1, budget + g);
  LaurentSeries pa = piAri(f, y1, budget + g);
  return (xinv * pg * pa.inv(budget + g)).truncate(budget);
}

LaurentSeries gammaTildeAri(const FieldPtr& f, const BigRat& y, long budget) {
  return gammaAri(f, 1 - ariBracket(-y), budget);
}

LaurentSeries gammaTilde(const FracX& x, const BigRat& y, long budget) {
  if (x.isZero()) return gammaTildeAri(x.field(), y, budget).inv(budget);
  return gammaTwoVar(x, 1 - ariBracket(-y), budget);
}

long gammaTildeValuation(const FracX& x) { return x.isZero() ? 0 : -long(x.ordInf()); }

BigRat gammaStarValuation(const FracX& x, const BigRat& y) {
  const FieldPtr& f = x.field();
  const BigRat dy = partial(y - 1, f->q(), f->p());
  if (x.isZero()) return -dy;
  BigRat v = -partialTwoVar(x, y - 1) * BigRat(x.ordInf()) - dy;
  v.canonicalize();
  return v;
}

BigRat gammaStarAriValuation(const FieldPtr& f, const BigRat& y) { return partial(y - 1, f->q(), f->p()); }

void GammaMonomial::add(const FracX& x, const BigRat& y, const BigRat& e) {
  const auto key = std::make_pair(x, ariBracket(y));
  BigRat& slot = factors[key];
  slot += e;
  slot.canonicalize();
  if (slot == 0) factors.erase(key);
}

std::string GammaMonomial::toString() const {
  std::string s = "pi^(" + ratToString(piExponent) + ")";
  for (const auto& [k, e] : factors)
    s += " * Gt(" + k.first.toString() + ", " + ratToString(k.second) + ")^(" + ratToString(e) + ")";
  return s;
}

MonomialValue monomialEvaluate(const GammaMonomial& m, const FieldPtr& f, long budget) {
  requireBudget(budget);
  const long q = long(f->q());
  MonomialValue out;
  out.valuation = m.piExponent * rat(-q, q - 1);
  bool integral = isInteger(m.piExponent);
  for (const auto& [k, e] : m.factors) {
    out.valuation += e * BigRat(gammaTildeValuation(k.first));
    integral = integral && isInteger(e);
  }
  out.valuation.canonicalize();
  if (!integral) return out;

  const bool ramified = m.piExponent != 0;
  const long R = ramified ? q - 1 : 1;
  const long target = budget * R;
  long B = budget;
  for (int attempt = 0; attempt < 8; ++attempt) {
    LaurentSeries acc = LaurentSeries::one(f, 1);
    for (const auto& [k, e] : m.factors) {
      const long ei = e.get_num().get_si();
      acc = acc * gammaTilde(k.first, k.second, B).pow(ei, B);
    }
    if (ramified) {
      if (R != 1) acc = acc.embedRamified();
      const long r = m.piExponent.get_num().get_si();
      acc = acc * carlitzPeriod(f, B * R).pow(r, B * R);
    }
    if (acc.prec() >= target) {
      out.series = acc.truncate(target);
      return out;
    }
    B += budget + 8;
  }
  throw PrecisionError("monomial evaluation did not reach the requested precision");
}

}  // namespace ffg

#pragma once

#include <map>
#include <optional>
#include <utility>

#include "ffgamma/brackets.hpp"
#include "ffgamma/series.hpp"

namespace ffg {

// Budgets are absolute precisions in v_inf units; every series here lives in
// k_inf (u = 1/theta) except where a period power forces the ramified field.

// prod_{a monic, deg a = i} (1 + x/a) for reduced x. The fast form uses
// f_{i+1} = (f_i^q - f_i)/(theta^(q^(i+1)) - theta), f_0 = x, with the level
// product equal to 1 + f_i; the naive form multiplies the q^i factors.
LaurentSeries levelProduct(const FracX& x, unsigned i, long budget);
LaurentSeries levelProductNaive(const FracX& x, unsigned i, long budget);
// Exact v_inf of levelProduct - 1: ord(x) + q + q^2 + ... + q^i.
long levelDeviation(const FracX& x, unsigned i);

// Pi_ari(y) = prod_{i>=1} A_i^(y_i), A_i = prod_{j<i} (1 - theta^(q^j - q^i)),
// y_i the p-adic base-q digits of y.
LaurentSeries piAri(const FieldPtr& f, const BigRat& y, long budget);
// Pi_geo(x, y) = prod_{i>=0} levelProduct(x, i)^(-y_i).
LaurentSeries piGeoTwo(const FracX& x, const BigRat& y, long budget, bool naive = false);
// Pi_geo(x) = Pi_geo(x, 1/(1-q)).
LaurentSeries piGeo(const FracX& x, long budget);

// Gamma_ari(y) = Pi_ari(y - 1).
LaurentSeries gammaAri(const FieldPtr& f, const BigRat& y, long budget);
// Gamma_geo(x) = Pi_geo(x)/x; x reduced and nonzero.
LaurentSeries gammaGeo(const FracX& x, long budget);
// Gamma(x, y) = Pi_geo(x, y-1) / (x Pi_ari(y-1)); x reduced and nonzero.
LaurentSeries gammaTwoVar(const FracX& x, const BigRat& y, long budget);
// Gamma~(x, y) = Gamma(x, 1 - <-y>) for x != 0, Gamma~_ari(y)^(-1) for x = 0.
LaurentSeries gammaTilde(const FracX& x, const BigRat& y, long budget);
// Gamma~_ari(y) = Gamma_ari(1 - <-y>).
LaurentSeries gammaTildeAri(const FieldPtr& f, const BigRat& y, long budget);
// v_inf(Gamma~(x, y)) = deg a - deg c for x = a/c != 0, else 0.
long gammaTildeValuation(const FracX& x);

// v_inf(Gamma*(x, y)) = -d(x, y-1) ord(x) - d(y-1). At x = 0 this is
// -d(y-1), the valuation of Gamma*(0, y) = Gamma*_ari(y)^(-1). Gamma* itself
// involves rational powers of x and theta and is not constructed.
BigRat gammaStarValuation(const FracX& x, const BigRat& y);
// v_inf(Gamma*_ari(y)) = d(y-1).
BigRat gammaStarAriValuation(const FieldPtr& f, const BigRat& y);

// pi~^r * prod Gamma~(x, y)^e(x, y); keys have y reduced to <y>.
struct GammaMonomial {
  BigRat piExponent = 0;
  std::map<std::pair<FracX, BigRat>, BigRat> factors;

  void add(const FracX& x, const BigRat& y, const BigRat& e);
  bool operator==(const GammaMonomial& o) const { return piExponent == o.piExponent && factors == o.factors; }
  std::string toString() const;
};

struct MonomialValue {
  BigRat valuation;
  // Present when r and all exponents are integers; ramified when r != 0, with
  // u-precision budget*(q-1) in that case.
  std::optional<LaurentSeries> series;
};

MonomialValue monomialEvaluate(const GammaMonomial& m, const FieldPtr& f, long budget);

}  // namespace ffg

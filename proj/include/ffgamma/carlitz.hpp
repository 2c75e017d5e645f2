#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ffgamma/bivar.hpp"
#include "ffgamma/series.hpp"

namespace ffg {

// Carlitz module over A = F_q[t]. Budgets for series results are absolute
// precisions in the u-units of the series involved: u = 1/theta for
// unramified inputs, u = 1/eta for the ramified field that holds the period.
class CarlitzContext {
 public:
  explicit CarlitzContext(FieldPtr f);

  const FieldPtr& field() const { return f_; }

  // C_a = sum_k f_k z^(q^k); returns the f_k in F_q[t].
  std::vector<FqPoly> additiveCoeffs(const FqPoly& a) const;
  BivarPoly divisionPoly(const FqPoly& a) const;
  // C*_n: C_n divided by C*_m over the proper monic divisors m of n. The
  // division is checked to be exact.
  BivarPoly cyclotomicPoly(const FqPoly& n) const;

  // D_0 = 1, D_i = (theta^(q^i) - theta) D_(i-1)^q.
  FqPoly D(unsigned i) const;

  // sum_i z^(q^i) / D_i, to absolute precision min(prec z, budget).
  LaurentSeries exp(const LaurentSeries& z, long budget) const;
  // Carlitz period in the ramified field (eta^(q-1) = -theta, u = 1/eta):
  // u^(-q) * prod_{i>=1} (1 - theta^(1-q^i))^(-1), precision budget.
  LaurentSeries period(long budget) const;
  // lambda_n = exp_C(period / n(theta)), ramified, precision budget.
  LaurentSeries lambda(const FqPoly& n, long budget) const;
  // F(T, Z) for F in F_q[t][z]. Powers of Z are formed first so precision
  // loss is bounded by the derivative terms.
  LaurentSeries evaluate(const BivarPoly& F, const LaurentSeries& T, const LaurentSeries& Z) const;
  // theta as an exact series with the given ramification.
  LaurentSeries theta(unsigned ram) const;

 private:
  FieldPtr f_;
  mutable std::mutex mu_;
  mutable std::map<std::vector<Fe>, BivarPoly> cyclo_;
  mutable std::vector<FqPoly> d_;
};

BivarPoly divisionPoly(const FqPoly& a);
BivarPoly cyclotomicPoly(const FqPoly& n);
LaurentSeries carlitzExp(const LaurentSeries& z, long budget);
LaurentSeries carlitzPeriod(const FieldPtr& f, long budget);
LaurentSeries carlitzLambda(const FqPoly& n, long budget);

}  // namespace ffg

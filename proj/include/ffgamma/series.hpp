#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ffgamma/field.hpp"
#include "ffgamma/poly.hpp"
#include "ffgamma/rational.hpp"

namespace ffg {

// Truncated Laurent series sum_{k >= v0} c_k u^k known modulo u^prec.
// ram = 1: u = 1/theta, the field k_inf. ram = q-1: u = 1/eta with
// eta^(q-1) = -theta, the totally ramified extension holding the Carlitz
// period. prec == kExact marks a finite exact expression.
//
// Normal form: the first stored coefficient is nonzero, nothing is stored at
// or beyond prec. A series with no stored coefficients is zero modulo u^prec.
class LaurentSeries {
 public:
  static constexpr long kExact = std::numeric_limits<long>::max() / 4;

  LaurentSeries() = default;
  LaurentSeries(FieldPtr f, unsigned ram, long v0, std::vector<Fe> coeffs, long prec);

  static LaurentSeries zero(const FieldPtr& f, unsigned ram, long prec = kExact);
  static LaurentSeries one(const FieldPtr& f, unsigned ram);
  static LaurentSeries monomial(const FieldPtr& f, unsigned ram, Fe c, long e);
  // a(theta) as an exact element of k_inf (ram = 1).
  static LaurentSeries fromPoly(const FqPoly& a);
  // a(theta)/c(theta) expanded in k_inf to absolute precision prec.
  static LaurentSeries fromFraction(const FqPoly& a, const FqPoly& c, long prec);
  // (1 - u^m)^(-1) for m >= 1, to precision prec.
  static LaurentSeries geometricInverse(const FieldPtr& f, unsigned ram, long m, long prec);

  const FieldPtr& field() const { return f_; }
  unsigned ram() const { return ram_; }
  long prec() const { return prec_; }
  bool exact() const { return prec_ >= kExact; }
  // True when no coefficient below prec is nonzero.
  bool isZero() const { return c_.empty(); }
  // Lowest exponent with a nonzero coefficient; throws PrecisionError when
  // the series is zero at its precision.
  long valuation() const;
  // Lowest exponent if nonzero, else prec (a lower bound for the valuation).
  long valuationBound() const { return c_.empty() ? prec_ : v0_; }
  long v0() const { return v0_; }
  const std::vector<Fe>& coeffs() const { return c_; }
  Fe coeff(long e) const;

  LaurentSeries operator+(const LaurentSeries& o) const;
  LaurentSeries operator-(const LaurentSeries& o) const;
  LaurentSeries operator-() const;
  LaurentSeries operator*(const LaurentSeries& o) const;
  LaurentSeries scale(Fe s) const;
  // Multiply by u^k.
  LaurentSeries shift(long k) const;
  LaurentSeries truncate(long prec) const;
  // Inverse; an exact input yields an infinite expansion, cut at cap.
  LaurentSeries inv(long cap = kExact) const;
  // a^n for integer n; negative n goes through inv(cap).
  LaurentSeries pow(long long n, long cap = kExact) const;
  // a^(q^k): exponents scale by q^k, coefficients are fixed by Frobenius.
  LaurentSeries frobenius(unsigned k, long cap = kExact) const;
  // theta^(-i) -> (-1)^i u^((q-1)i); requires ram = 1.
  LaurentSeries embedRamified() const;

  // v_inf = valuation / ram, so that |theta|_inf = q.
  BigRat normalizedValuation() const;

  // Same coefficients below min(prec, o.prec), same field and ram.
  bool agreesWith(const LaurentSeries& o) const;
  // Exact structural equality (coefficients and precision).
  bool operator==(const LaurentSeries& o) const;

  // "c*u^e + ... + O(u^prec)". The header names u.
  std::string toString() const;
  std::string header() const;

 private:
  void normalize();
  void checkCompatible(const LaurentSeries& o) const;
  FieldPtr f_;
  unsigned ram_ = 1;
  long v0_ = 0;
  std::vector<Fe> c_;
  long prec_ = kExact;
};

// Product of 1-units from a stream (nullopt ends it). Stops at the first
// factor congruent to 1 modulo u^budget; the stream's deviations must be
// nondecreasing. Result precision is at most budget.
LaurentSeries oneUnitProduct(const FieldPtr& f, unsigned ram,
                             const std::function<std::optional<LaurentSeries>()>& next, long budget);

// Smallest k with v(a - 1) = k; throws DomainError unless a is a 1-unit.
long oneUnitDeviation(const LaurentSeries& a);

}  // namespace ffg

#pragma once

#include <string>
#include <vector>

#include "ffgamma/poly.hpp"
#include "ffgamma/rational.hpp"

namespace ffg {

// x = a(theta)/c(theta) in k/A, stored as its fractional part: c monic,
// deg a < deg c, gcd(a, c) = 1. Zero is a = 0, c = 1.
class FracX {
 public:
  FracX() = default;
  explicit FracX(const FieldPtr& f) : a_(f), c_(FqPoly::constant(f, 1)) {}
  // Reduces a/c modulo A; throws DomainError if c = 0.
  FracX(const FqPoly& a, const FqPoly& c);

  const FqPoly& num() const { return a_; }
  const FqPoly& den() const { return c_; }
  const FieldPtr& field() const { return c_.field(); }
  bool isZero() const { return a_.isZero(); }
  // ord_inf = deg c - deg a (0 for x = 0 by convention).
  int ordInf() const { return isZero() ? 0 : c_.deg() - a_.deg(); }

  FracX operator+(const FracX& o) const;
  FracX operator-() const;
  FracX operator-(const FracX& o) const { return *this + (-o); }
  FracX mul(const FqPoly& m) const;  // m*x mod A
  FracX scale(Fe e) const;

  bool operator==(const FracX& o) const { return a_ == o.a_ && c_ == o.c_; }
  bool operator!=(const FracX& o) const { return !(*this == o); }
  bool operator<(const FracX& o) const { return c_ < o.c_ || (c_ == o.c_ && a_ < o.a_); }

  // "a/c" with polynomials in t, or "0".
  std::string toString() const;

 private:
  FqPoly a_, c_;
};

// "a/c", "a" (reduces to 0) or "0"; polynomials in t.
FracX parseFracX(const std::string& s, const FieldPtr& f);

// Base-q digits of <y>_ari over its minimal period: <y> = sum y_i q^i/(q^l - 1).
struct DigitExpansion {
  unsigned ell = 1;
  std::vector<unsigned> digits{0};
};

// p-adic base-q expansion y = sum d_i q^i: pre-period digits then a repeating
// block. Non-negative integers end in the block (0); negative ones in (q-1).
struct PadicDigits {
  std::vector<unsigned> pre;
  std::vector<unsigned> period;
  unsigned digit(std::size_t i) const;
};

void checkPAdic(const BigRat& y, unsigned p);
BigRat ariBracket(const BigRat& y);
DigitExpansion qDigits(const BigRat& y, unsigned q, unsigned p);
PadicDigits padicDigits(const BigRat& y, unsigned q, unsigned p);

int geoBracketN(const FracX& x, unsigned N);
int geoBracket(const FracX& x);
// Closed form: the single supported N picks digit i* = -(deg c - deg a) mod l.
BigRat twoVarBracket(const FracX& x, const BigRat& y);
// Definitional sum_i y_i sum_{N = -1-i mod l} <x>_N.
BigRat twoVarBracketDigitSum(const FracX& x, const BigRat& y);

struct Weights {
  BigRat wt0Geo, wt0Ari, wt0, wtGeo, wtAri, wt;
};
BigRat wt0Ari(const BigRat& y, unsigned q, unsigned p);
Weights weights(const FracX& x, const BigRat& y);

// d(y) = sum_i i y_i q^i as the rational value of the p-adic series.
BigRat partial(const BigRat& y, unsigned q, unsigned p);
// d(x, y) = <x, -y>.
BigRat partialTwoVar(const FracX& x, const BigRat& y);

}  // namespace ffg

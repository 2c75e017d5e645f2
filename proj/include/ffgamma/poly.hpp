#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ffgamma/field.hpp"

namespace ffg {

// Element of A = F_q[t]. Coefficients low degree first, trailing zeros
// stripped. deg() of the zero polynomial is kZeroDeg.
class FqPoly {
 public:
  static constexpr int kZeroDeg = -1;

  FqPoly() = default;
  explicit FqPoly(FieldPtr f) : f_(std::move(f)) {}
  FqPoly(FieldPtr f, std::vector<Fe> coeffs);

  static FqPoly constant(const FieldPtr& f, Fe c);
  static FqPoly monomial(const FieldPtr& f, Fe c, unsigned d);
  static FqPoly t(const FieldPtr& f) { return monomial(f, 1, 1); }
  // Inverse of index(): base-q digits become coefficients.
  static FqPoly fromIndex(const FieldPtr& f, std::uint64_t idx);

  const FieldPtr& field() const { return f_; }
  const std::vector<Fe>& coeffs() const { return c_; }
  int deg() const { return c_.empty() ? kZeroDeg : int(c_.size()) - 1; }
  bool isZero() const { return c_.empty(); }
  bool isOne() const { return c_.size() == 1 && c_[0] == 1; }
  bool isMonic() const { return !c_.empty() && c_.back() == 1; }
  Fe coeff(int k) const { return k >= 0 && k < int(c_.size()) ? c_[k] : 0; }
  Fe lead() const { return c_.empty() ? 0 : c_.back(); }
  // Base-q integer whose digits are the coefficients.
  std::uint64_t index() const;

  FqPoly operator+(const FqPoly& o) const;
  FqPoly operator-(const FqPoly& o) const;
  FqPoly operator-() const;
  FqPoly operator*(const FqPoly& o) const;
  FqPoly scale(Fe s) const;
  FqPoly shift(unsigned k) const;  // multiply by t^k
  FqPoly pow(std::uint64_t k) const;
  FqPoly monic() const;
  Fe eval(Fe x) const;

  bool operator==(const FqPoly& o) const { return c_ == o.c_; }
  bool operator!=(const FqPoly& o) const { return c_ != o.c_; }
  // Total order: by degree, then coefficients from the top.
  bool operator<(const FqPoly& o) const;

  std::string toString(const std::string& var = "t") const;

 private:
  void trim();
  FieldPtr f_;
  std::vector<Fe> c_;
};

// (quotient, remainder) with f = quotient*g + remainder, deg remainder < deg g.
std::pair<FqPoly, FqPoly> polyDivRem(const FqPoly& f, const FqPoly& g);
FqPoly polyMod(const FqPoly& f, const FqPoly& g);
bool divides(const FqPoly& d, const FqPoly& f);
// Monic gcd (zero if both are zero).
FqPoly polyGcd(FqPoly a, FqPoly b);
// Returns (g, s) with s*a = g mod m, g = gcd(a, m) monic.
std::pair<FqPoly, FqPoly> polyInvMod(const FqPoly& a, const FqPoly& m);
FqPoly mulMod(const FqPoly& a, const FqPoly& b, const FqPoly& m);

// The q^d monic polynomials of degree d, ordered lexicographically on the
// coefficient tuple (c_{d-1}, ..., c_0) with 0 < 1 < ... in code order; this
// is the order of index().
std::vector<FqPoly> monicEnumerate(unsigned d, const FieldPtr& f);
// All polynomials of degree < d, ordered by index().
std::vector<FqPoly> polysBelow(unsigned d, const FieldPtr& f);
// Monic divisors of a nonzero n, ordered by degree then index().
std::vector<FqPoly> monicDivisors(const FqPoly& n);
bool isIrreducible(const FqPoly& f);
// Monic irreducible factors with multiplicity, ascending.
std::vector<std::pair<FqPoly, unsigned>> factorMonic(const FqPoly& n);
// #(A/n)^x for monic n.
std::uint64_t eulerPhi(const FqPoly& n);
std::uint64_t ipow(std::uint64_t b, unsigned e);

// Grammar: poly := term (('+'|'-') term)* ; term := coef ['*' var ['^' int]] |
// var ['^' int] ; coef := int | 'g^' int | 'g'. Whitespace is ignored.
// Integer coefficients are reduced mod p. Throws DomainError with the
// 1-based column of the offending character.
FqPoly parsePoly(const std::string& s, const FieldPtr& f, const std::string& var = "t");

}  // namespace ffg

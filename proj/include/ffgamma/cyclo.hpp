#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffgamma/rational.hpp"

namespace ffg {

// Polynomial over Q, low degree first, trailing zeros stripped.
using QPoly = std::vector<BigRat>;

void qpolyTrim(QPoly& a);
QPoly qpolyMul(const QPoly& a, const QPoly& b);
// (quotient, remainder); b nonzero.
std::pair<QPoly, QPoly> qpolyDivRem(const QPoly& a, const QPoly& b);

// N-th cyclotomic polynomial, by exact division of x^N - 1 by the lower
// cyclotomic factors. Results are memoised behind a mutex.
const QPoly& cycloPhi(unsigned N);
unsigned eulerTotient(unsigned N);

// Element of Q(zeta_N) as its canonical representative modulo Phi_N:
// exactly deg Phi_N coefficients in the power basis of zeta_N.
class CycloNum {
 public:
  CycloNum() : CycloNum(1) {}
  explicit CycloNum(unsigned N);
  CycloNum(unsigned N, const BigRat& r);
  // Reduces an arbitrary polynomial in zeta_N.
  static CycloNum fromPoly(unsigned N, QPoly p);
  static CycloNum root(unsigned N, long long k);  // zeta_N^k

  unsigned order() const { return N_; }
  const std::vector<BigRat>& coeffs() const { return c_; }
  bool isZero() const;

  CycloNum operator+(const CycloNum& o) const;
  CycloNum operator-(const CycloNum& o) const;
  CycloNum operator-() const;
  CycloNum operator*(const CycloNum& o) const;
  CycloNum operator*(const BigRat& r) const;
  CycloNum inv() const;  // throws DomainError on 0
  CycloNum operator/(const CycloNum& o) const { return *this * o.inv(); }
  CycloNum& operator+=(const CycloNum& o) { return *this = *this + o; }
  CycloNum& operator*=(const CycloNum& o) { return *this = *this * o; }
  bool operator==(const CycloNum& o) const { return N_ == o.N_ && c_ == o.c_; }
  bool operator!=(const CycloNum& o) const { return !(*this == o); }

  // Same number in Q(zeta_M), M a multiple of N.
  CycloNum lift(unsigned M) const;
  // Galois action zeta -> zeta^k, gcd(k, N) = 1; complex conjugation is k = -1.
  CycloNum galois(long long k) const;
  CycloNum conj() const { return galois(-1); }

  std::optional<BigRat> isRational() const;
  std::string toString() const;

 private:
  unsigned N_;
  std::vector<BigRat> c_;
};

// Sum of rational multiples of powers of zeta_N, reduced once at the end.
class CycloAccumulator {
 public:
  explicit CycloAccumulator(unsigned N) : N_(N), acc_(N) {}
  void add(long long k, const BigRat& r);
  void add(const CycloNum& v);
  CycloNum value() const;

 private:
  unsigned N_;
  std::vector<BigRat> acc_;
};

}  // namespace ffg

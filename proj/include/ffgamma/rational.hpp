#pragma once

#include <gmpxx.h>

#include <string>

namespace ffg {

using BigRat = mpq_class;
using BigInt = mpz_class;

// Canonical a/b (mpq_class(a, b) alone is not reduced).
inline BigRat rat(long a, long b = 1) {
  BigRat r(a, b);
  r.canonicalize();
  return r;
}

// "p/q" or "p" when the denominator is 1.
std::string ratToString(const BigRat& r);
// Accepts "p", "p/q", "-p/q" with optional surrounding whitespace.
BigRat parseRat(const std::string& s);

// Floor and fractional part of a rational.
BigInt ratFloor(const BigRat& r);
BigRat ratFrac(const BigRat& r);

BigRat ratPow(const BigRat& b, unsigned e);
bool isInteger(const BigRat& r);
// Multiplicative order of q modulo m (m coprime to q, m >= 1).
unsigned long multOrder(unsigned long q, unsigned long m);

}  // namespace ffg

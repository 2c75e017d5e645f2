#include "ffgamma/rational.hpp"

#include <cctype>

#include "ffgamma/error.hpp"

namespace ffg {

std::string ratToString(const BigRat& r) { return r.get_str(); }

BigRat parseRat(const std::string& in) {
  std::size_t b = 0, e = in.size();
  while (b < e && std::isspace(static_cast<unsigned char>(in[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(in[e - 1]))) --e;
  const std::string s = in.substr(b, e - b);
  std::size_t i = 0;
  auto digits = [&](const char* what) {
    const std::size_t st = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == st)
      throw DomainError("rational parse error at column " + std::to_string(b + i + 1) + ": expected " +
                        what + " in \"" + in + "\"");
  };
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  digits("numerator");
  if (i < s.size() && s[i] == '/') {
    ++i;
    digits("denominator");
  }
  if (i != s.size())
    throw DomainError("rational parse error at column " + std::to_string(b + i + 1) + " in \"" + in + "\"");
  BigRat r;
  std::string t = s[0] == '+' ? s.substr(1) : s;
  if (r.set_str(t, 10) != 0) throw DomainError("rational parse error in \"" + in + "\"");
  if (r.get_den() == 0) throw DomainError("zero denominator in \"" + in + "\"");
  r.canonicalize();
  return r;
}

BigInt ratFloor(const BigRat& r) {
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return f;
}

BigRat ratFrac(const BigRat& r) { return r - BigRat(ratFloor(r)); }

BigRat ratPow(const BigRat& b, unsigned e) {
  BigRat r = 1;
  for (unsigned k = 0; k < e; ++k) r *= b;
  return r;
}

bool isInteger(const BigRat& r) { return r.get_den() == 1; }

unsigned long multOrder(unsigned long q, unsigned long m) {
  if (m == 1) return 1;
  unsigned long x = q % m, k = 1;
  while (x != 1) {
    x = (x * q) % m;
    ++k;
    if (k > m) throw DomainError("q is not invertible modulo " + std::to_string(m));
  }
  return k;
}

}  // namespace ffg

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ffg {

using Fe = std::uint32_t;  // element of F_q, encoded as sum c_k p^k

// F_q with q = p^e. For e > 1 an element is a polynomial in g over F_p of
// degree < e, reduced modulo `modulus`; it is encoded as the integer whose
// base-p digits are those coefficients. All arithmetic is table driven.
class Field {
 public:
  // Throws DomainError if p is not prime, e < 1, q too large for the
  // tables, or the modulus is not monic irreducible of degree e.
  // An empty modulus selects the built-in default for (p, e).
  static std::shared_ptr<const Field> make(unsigned p, unsigned e = 1,
                                           std::vector<unsigned> modulus = {});

  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  unsigned q() const { return q_; }
  bool prime() const { return e_ == 1; }
  // Coefficients of the modulus, low degree first (empty when e = 1).
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Fe add(Fe a, Fe b) const { return prime() ? Fe((a + b) % p_) : add_[a * q_ + b]; }
  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
  Fe neg(Fe a) const { return neg_[a]; }
  Fe mul(Fe a, Fe b) const { return prime() ? Fe((std::uint64_t(a) * b) % p_) : mul_[a * q_ + b]; }
  Fe inv(Fe a) const;  // throws DomainError on 0
  Fe pow(Fe a, std::uint64_t k) const;

  // Image of an integer in the prime subfield.
  Fe fromInt(long long v) const;
  // Primitive element used by the "g^k" text format.
  Fe generator() const { return gen_; }
  // Discrete log base generator(); throws on 0.
  unsigned log(Fe a) const;

  std::string format(Fe a) const;

  static const std::vector<unsigned>& defaultModulus(unsigned p, unsigned e);

 private:
  Field() = default;
  unsigned p_ = 0, e_ = 0, q_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<Fe> add_, mul_, neg_, inv_;
  std::vector<unsigned> log_;
  Fe gen_ = 1;
};

using FieldPtr = std::shared_ptr<const Field>;

bool isPrime(unsigned long n);

}  // namespace ffg

#include "ffgamma/field.hpp"

#include <map>
#include <utility>

#include "ffgamma/error.hpp"

namespace ffg {

namespace {

using Digits = std::vector<unsigned>;  // polynomial over F_p, low degree first

Digits decode(Fe a, unsigned p, unsigned e) {
  Digits d(e);
  for (unsigned k = 0; k < e; ++k) {
    d[k] = a % p;
    a /= p;
  }
  return d;
}

Fe encode(const Digits& d, unsigned p) {
  Fe a = 0;
  for (std::size_t k = d.size(); k-- > 0;) a = a * p + d[k];
  return a;
}

void trim(Digits& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

// Remainder of f modulo a monic g over F_p.
Digits remMonic(Digits f, const Digits& g, unsigned p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const unsigned lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t k = 0; k <= dg; ++k) f[shift + k] = (f[shift + k] + p * p - lead * g[k] % p) % p;
    trim(f);
  }
  return f;
}

bool irreducibleOverFp(const Digits& m, unsigned p) {
  const unsigned e = unsigned(m.size()) - 1;
  // trial division by every monic polynomial of degree 1 .. e/2
  for (unsigned d = 1; 2 * d <= e; ++d) {
    unsigned long count = 1;
    for (unsigned k = 0; k < d; ++k) count *= p;
    for (unsigned long idx = 0; idx < count; ++idx) {
      Digits g(d + 1);
      unsigned long v = idx;
      for (unsigned k = 0; k < d; ++k) {
        g[k] = v % p;
        v /= p;
      }
      g[d] = 1;
      if (remMonic(m, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool isPrime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

const std::vector<unsigned>& Field::defaultModulus(unsigned p, unsigned e) {
  // low degree first, monic
  static const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> table = {
      {{2, 2}, {1, 1, 1}}, {{2, 3}, {1, 1, 0, 1}}, {{3, 2}, {1, 0, 1}}, {{3, 3}, {1, 2, 0, 1}},
      {{5, 2}, {2, 0, 1}}, {{5, 3}, {1, 1, 0, 1}}, {{7, 2}, {1, 0, 1}}, {{7, 3}, {2, 0, 0, 1}},
  };
  auto it = table.find({p, e});
  if (it == table.end())
    throw DomainError("no default modulus for p=" + std::to_string(p) + ", e=" + std::to_string(e) +
                      "; supply one");
  return it->second;
}

std::shared_ptr<const Field> Field::make(unsigned p, unsigned e, std::vector<unsigned> modulus) {
  if (!isPrime(p)) throw DomainError("p=" + std::to_string(p) + " is not prime");
  if (e < 1) throw DomainError("extension degree must be >= 1");
  unsigned long q = 1;
  for (unsigned k = 0; k < e; ++k) {
    q *= p;
    if (q > 4096) throw DomainError("field too large for table arithmetic (q > 4096)");
  }
  std::shared_ptr<Field> f(new Field());
  f->p_ = p;
  f->e_ = e;
  f->q_ = unsigned(q);
  if (e == 1) {
    if (!modulus.empty() && !(modulus.size() == 2 && modulus[1] % p == 1))
      throw DomainError("a prime field takes no modulus");
  } else {
    if (modulus.empty()) modulus = defaultModulus(p, e);
    for (auto& c : modulus) c %= p;
    if (modulus.size() != e + 1 || modulus.back() != 1)
      throw DomainError("modulus must be monic of degree e");
    if (!irreducibleOverFp(modulus, p)) throw DomainError("modulus is reducible over F_p");
    f->modulus_ = modulus;
  }

  f->neg_.resize(q);
  f->inv_.assign(q, 0);
  if (e == 1) {
    for (unsigned a = 0; a < q; ++a) f->neg_[a] = (p - a) % p;
  } else {
    f->add_.resize(q * q);
    f->mul_.resize(q * q);
    for (unsigned a = 0; a < q; ++a) {
      const Digits da = decode(a, p, e);
      Digits na(e);
      for (unsigned k = 0; k < e; ++k) na[k] = (p - da[k]) % p;
      f->neg_[a] = encode(na, p);
      for (unsigned b = 0; b < q; ++b) {
        const Digits db = decode(b, p, e);
        Digits s(e);
        for (unsigned k = 0; k < e; ++k) s[k] = (da[k] + db[k]) % p;
        f->add_[a * q + b] = encode(s, p);
        Digits prod(2 * e - 1, 0);
        for (unsigned i = 0; i < e; ++i)
          for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        Digits r = remMonic(prod, f->modulus_, p);
        r.resize(e, 0);
        f->mul_[a * q + b] = encode(r, p);
      }
    }
  }
  for (unsigned a = 1; a < q; ++a)
    for (unsigned b = 1; b < q; ++b)
      if (f->mul(a, b) == 1) {
        f->inv_[a] = b;
        break;
      }

  // primitive element: smallest code of multiplicative order q - 1
  f->log_.assign(q, 0);
  for (Fe g = (q == 2 ? 1 : 2); g < q; ++g) {
    Fe x = 1;
    unsigned order = 0;
    do {
      x = f->mul(x, g);
      ++order;
    } while (x != 1);
    if (order == q - 1) {
      f->gen_ = g;
      break;
    }
  }
  Fe x = 1;
  for (unsigned k = 0; k + 1 < q; ++k) {
    f->log_[x] = k;
    x = f->mul(x, f->gen_);
  }
  return f;
}

Fe Field::inv(Fe a) const {
  if (a == 0) throw DomainError("inverse of zero in F_q");
  return inv_[a];
}

Fe Field::pow(Fe a, std::uint64_t k) const {
  Fe r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

Fe Field::fromInt(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return Fe(r);
}

unsigned Field::log(Fe a) const {
  if (a == 0) throw DomainError("discrete log of zero");
  return log_[a];
}

std::string Field::format(Fe a) const {
  if (prime()) return std::to_string(a);
  if (a == 0) return "0";
  const unsigned k = log(a);
  if (k == 0) return "1";
  return "g^" + std::to_string(k);
}

}  // namespace ffg

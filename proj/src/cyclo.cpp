#include "ffgamma/cyclo.hpp"

#include <map>
#include <mutex>
#include <numeric>

#include "ffgamma/error.hpp"

namespace ffg {

void qpolyTrim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly qpolyMul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  qpolyTrim(r);
  return r;
}

std::pair<QPoly, QPoly> qpolyDivRem(const QPoly& a, const QPoly& b) {
  QPoly bb = b;
  qpolyTrim(bb);
  if (bb.empty()) throw DomainError("polynomial division by zero");
  QPoly r = a;
  qpolyTrim(r);
  if (r.size() < bb.size()) return {{}, r};
  QPoly qt(r.size() - bb.size() + 1);
  const BigRat lead = bb.back();
  for (std::size_t k = r.size(); k-- >= bb.size();) {
    if (r[k] == 0) continue;
    const BigRat c = r[k] / lead;
    const std::size_t s = k - (bb.size() - 1);
    qt[s] = c;
    for (std::size_t j = 0; j < bb.size(); ++j) r[s + j] -= c * bb[j];
  }
  qpolyTrim(qt);
  qpolyTrim(r);
  return {qt, r};
}

unsigned eulerTotient(unsigned N) {
  unsigned r = N, m = N;
  for (unsigned p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      r -= r / p;
    }
  if (m > 1) r -= r / m;
  return r;
}

const QPoly& cycloPhi(unsigned N) {
  if (N == 0) throw DomainError("cyclotomic polynomial of order 0");
  static std::mutex mu;
  static std::map<unsigned, QPoly> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
  }
  QPoly num(N + 1);
  num[0] = -1;
  num[N] = 1;
  QPoly den{1};
  for (unsigned d = 1; d < N; ++d)
    if (N % d == 0) den = qpolyMul(den, cycloPhi(d));
  auto [qt, r] = qpolyDivRem(num, den);
  if (!r.empty()) throw ConsistencyError("x^N - 1 not divisible by lower cyclotomic factors");
  std::lock_guard<std::mutex> lk(mu);
  return cache.emplace(N, std::move(qt)).first->second;
}

CycloNum::CycloNum(unsigned N) : N_(N), c_(cycloPhi(N).size() - 1) {}

CycloNum::CycloNum(unsigned N, const BigRat& r) : CycloNum(N) { c_[0] = r; }

CycloNum CycloNum::fromPoly(unsigned N, QPoly p) {
  CycloNum out(N);
  const QPoly& phi = cycloPhi(N);
  const std::size_t d = phi.size() - 1;
  // phi is monic: reduce from the top
  for (std::size_t k = p.size(); k-- > d;) {
    if (p[k] == 0) continue;
    const BigRat c = p[k];
    const std::size_t s = k - d;
    for (std::size_t j = 0; j <= d; ++j) p[s + j] -= c * phi[j];
  }
  for (std::size_t k = 0; k < d && k < p.size(); ++k) out.c_[k] = p[k];
  return out;
}

CycloNum CycloNum::root(unsigned N, long long k) {
  long long m = k % static_cast<long long>(N);
  if (m < 0) m += N;
  QPoly p(std::size_t(m) + 1);
  p[std::size_t(m)] = 1;
  return fromPoly(N, std::move(p));
}

bool CycloNum::isZero() const {
  for (auto& c : c_)
    if (c != 0) return false;
  return true;
}

static void sameOrder(unsigned a, unsigned b) {
  if (a != b) throw DomainError("cyclotomic orders differ: " + std::to_string(a) + " vs " + std::to_string(b));
}

CycloNum CycloNum::operator+(const CycloNum& o) const {
  sameOrder(N_, o.N_);
  CycloNum r(*this);
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] += o.c_[k];
  return r;
}

CycloNum CycloNum::operator-() const {
  CycloNum r(*this);
  for (auto& c : r.c_) c = -c;
  return r;
}

CycloNum CycloNum::operator-(const CycloNum& o) const { return *this + (-o); }

CycloNum CycloNum::operator*(const CycloNum& o) const {
  sameOrder(N_, o.N_);
  return fromPoly(N_, qpolyMul(c_, o.c_));
}

CycloNum CycloNum::operator*(const BigRat& r) const {
  CycloNum out(*this);
  for (auto& c : out.c_) c *= r;
  return out;
}

CycloNum CycloNum::inv() const {
  if (isZero()) throw DomainError("inversion of zero in Q(zeta_N)");
  // extended Euclid: s*a + t*phi = g, g a nonzero constant since phi is irreducible
  QPoly r0 = cycloPhi(N_), r1 = c_;
  qpolyTrim(r1);
  QPoly s0, s1{1};
  while (r1.size() > 1) {
    auto [qt, rr] = qpolyDivRem(r0, r1);
    QPoly s2 = s0;
    QPoly qs = qpolyMul(qt, s1);
    if (s2.size() < qs.size()) s2.resize(qs.size());
    for (std::size_t k = 0; k < qs.size(); ++k) s2[k] -= qs[k];
    qpolyTrim(s2);
    r0 = std::move(r1);
    r1 = std::move(rr);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw ConsistencyError("cyclotomic polynomial is reducible");
  const BigRat g = r1[0];
  for (auto& c : s1) c /= g;
  return fromPoly(N_, std::move(s1));
}

CycloNum CycloNum::lift(unsigned M) const {
  if (M % N_) throw DomainError("lift target order must be a multiple of the source order");
  const unsigned step = M / N_;
  QPoly p(c_.size() ? (c_.size() - 1) * step + 1 : 0);
  for (std::size_t k = 0; k < c_.size(); ++k) p[k * step] = c_[k];
  return fromPoly(M, std::move(p));
}

CycloNum CycloNum::galois(long long k) const {
  long long m = k % static_cast<long long>(N_);
  if (m < 0) m += N_;
  if (std::gcd(static_cast<unsigned long long>(m), static_cast<unsigned long long>(N_)) != 1 && N_ > 1)
    throw DomainError("galois exponent not coprime to the order");
  CycloAccumulator acc(N_);
  for (std::size_t j = 0; j < c_.size(); ++j)
    if (c_[j] != 0) acc.add(static_cast<long long>(j) * m, c_[j]);
  return acc.value();
}

std::optional<BigRat> CycloNum::isRational() const {
  for (std::size_t k = 1; k < c_.size(); ++k)
    if (c_[k] != 0) return std::nullopt;
  return c_[0];
}

std::string CycloNum::toString() const {
  std::string s = "[";
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (k) s += ",";
    s += ratToString(c_[k]);
  }
  return s + "]";
}

void CycloAccumulator::add(long long k, const BigRat& r) {
  long long m = k % static_cast<long long>(N_);
  if (m < 0) m += N_;
  acc_[std::size_t(m)] += r;
}

void CycloAccumulator::add(const CycloNum& v) {
  sameOrder(N_, v.order());
  for (std::size_t k = 0; k < v.coeffs().size(); ++k) acc_[k] += v.coeffs()[k];
}

CycloNum CycloAccumulator::value() const { return CycloNum::fromPoly(N_, acc_); }

}  // namespace ffg

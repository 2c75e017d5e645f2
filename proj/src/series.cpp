#include "ffgamma/series.hpp"

#include <algorithm>

#include "ffgamma/error.hpp"

namespace ffg {

namespace {

long clampPrec(__int128 p) {
  if (p >= LaurentSeries::kExact) return LaurentSeries::kExact;
  if (p <= -LaurentSeries::kExact) return -LaurentSeries::kExact;
  return long(p);
}

}  // namespace

LaurentSeries::LaurentSeries(FieldPtr f, unsigned ram, long v0, std::vector<Fe> coeffs, long prec)
    : f_(std::move(f)), ram_(ram), v0_(v0), c_(std::move(coeffs)), prec_(std::min(prec, kExact)) {
  if (ram_ != 1 && ram_ != f_->q() - 1) throw DomainError("ramification index must be 1 or q-1");
  normalize();
}

void LaurentSeries::normalize() {
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    v0_ = prec_;
    return;
  }
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + long(lead));
    v0_ += long(lead);
  }
  if (v0_ >= prec_) {
    c_.clear();
    v0_ = prec_;
    return;
  }
  if (prec_ < kExact && long(c_.size()) > prec_ - v0_) c_.resize(std::size_t(prec_ - v0_));
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void LaurentSeries::checkCompatible(const LaurentSeries& o) const {
  if (f_ != o.f_ && (f_->q() != o.f_->q() || f_->modulus() != o.f_->modulus()))
    throw DomainError("series over different fields");
  if (ram_ != o.ram_) throw DomainError("series with different ramification; embed first");
}

LaurentSeries LaurentSeries::zero(const FieldPtr& f, unsigned ram, long prec) {
  return LaurentSeries(f, ram, 0, {}, prec);
}

LaurentSeries LaurentSeries::one(const FieldPtr& f, unsigned ram) { return LaurentSeries(f, ram, 0, {1}, kExact); }

LaurentSeries LaurentSeries::monomial(const FieldPtr& f, unsigned ram, Fe c, long e) {
  return LaurentSeries(f, ram, e, {c}, kExact);
}

LaurentSeries LaurentSeries::fromPoly(const FqPoly& a) {
  const FieldPtr& f = a.field();
  if (a.isZero()) return zero(f, 1);
  std::vector<Fe> c(a.coeffs().rbegin(), a.coeffs().rend());
  return LaurentSeries(f, 1, -long(a.deg()), std::move(c), kExact);
}

LaurentSeries LaurentSeries::fromFraction(const FqPoly& a, const FqPoly& c, long prec) {
  if (c.isZero()) throw DomainError("fraction with zero denominator");
  if (a.isZero()) return zero(a.field(), 1);
  const LaurentSeries ci = fromPoly(c).inv(prec + a.deg());
  return (fromPoly(a) * ci).truncate(prec);
}

LaurentSeries LaurentSeries::geometricInverse(const FieldPtr& f, unsigned ram, long m, long prec) {
  if (m < 1) throw DomainError("geometric inverse needs m >= 1");
  std::vector<Fe> c(std::size_t(std::max(prec, 0L)), 0);
  for (long e = 0; e < prec; e += m) c[std::size_t(e)] = 1;
  return LaurentSeries(f, ram, 0, std::move(c), prec);
}

long LaurentSeries::valuation() const {
  if (c_.empty()) throw PrecisionError("series is zero modulo u^" + std::to_string(prec_));
  return v0_;
}

Fe LaurentSeries::coeff(long e) const {
  if (e >= prec_) throw PrecisionError("coefficient beyond known precision");
  if (e < v0_ || e >= v0_ + long(c_.size())) return 0;
  return c_[std::size_t(e - v0_)];
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
  checkCompatible(o);
  const long prec = std::min(prec_, o.prec_);
  if (c_.empty() && o.c_.empty()) return zero(f_, ram_, prec);
  long lo = kExact, hi = -kExact;
  if (!c_.empty()) {
    lo = std::min(lo, v0_);
    hi = std::max(hi, v0_ + long(c_.size()));
  }
  if (!o.c_.empty()) {
    lo = std::min(lo, o.v0_);
    hi = std::max(hi, o.v0_ + long(o.c_.size()));
  }
  hi = std::min(hi, prec);
  if (hi <= lo) return zero(f_, ram_, prec);
  std::vector<Fe> r(std::size_t(hi - lo), 0);
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const long e = v0_ + long(k);
    if (e < hi) r[std::size_t(e - lo)] = f_->add(r[std::size_t(e - lo)], c_[k]);
  }
  for (std::size_t k = 0; k < o.c_.size(); ++k) {
    const long e = o.v0_ + long(k);
    if (e < hi) r[std::size_t(e - lo)] = f_->add(r[std::size_t(e - lo)], o.c_[k]);
  }
  return LaurentSeries(f_, ram_, lo, std::move(r), prec);
}

LaurentSeries LaurentSeries::operator-() const { return scale(f_->neg(1)); }

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::scale(Fe s) const {
  if (s == 0) return zero(f_, ram_, kExact);
  std::vector<Fe> r(c_.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = f_->mul(c_[k], s);
  return LaurentSeries(f_, ram_, v0_, std::move(r), prec_);
}

LaurentSeries LaurentSeries::shift(long k) const {
  const long prec = exact() ? kExact : prec_ + k;
  if (c_.empty()) return zero(f_, ram_, prec);
  return LaurentSeries(f_, ram_, v0_ + k, c_, prec);
}

LaurentSeries LaurentSeries::truncate(long prec) const {
  if (prec >= prec_) return *this;
  return LaurentSeries(f_, ram_, v0_, c_, prec);
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
  checkCompatible(o);
  const bool exactZeroA = c_.empty() && exact();
  const bool exactZeroB = o.c_.empty() && o.exact();
  if (exactZeroA || exactZeroB) return zero(f_, ram_, kExact);
  const long va = valuationBound(), vb = o.valuationBound();
  const long prec = std::min(clampPrec(__int128(prec_) + vb), clampPrec(__int128(o.prec_) + va));
  if (c_.empty() || o.c_.empty()) return zero(f_, ram_, prec);
  const long lo = va + vb;
  long hi = lo + long(c_.size() + o.c_.size()) - 1;
  hi = std::min(hi, prec);
  if (hi <= lo) return zero(f_, ram_, prec);
  const std::size_t n = std::size_t(hi - lo);
  std::vector<Fe> r(n, 0);
  for (std::size_t i = 0; i < c_.size() && i < n; ++i) {
    if (!c_[i]) continue;
    const std::size_t jmax = std::min(o.c_.size(), n - i);
    for (std::size_t j = 0; j < jmax; ++j)
      if (o.c_[j]) r[i + j] = f_->add(r[i + j], f_->mul(c_[i], o.c_[j]));
  }
  return LaurentSeries(f_, ram_, lo, std::move(r), prec);
}

LaurentSeries LaurentSeries::inv(long cap) const {
  const long v = valuation();
  if (c_.size() == 1 && exact()) return LaurentSeries(f_, ram_, -v, {f_->inv(c_[0])}, kExact);
  long prec = exact() ? cap : std::min(cap, prec_ - 2 * v);
  if (prec >= kExact) throw DomainError("inverse of an exact non-monomial series needs a precision cap");
  if (prec <= -v) return zero(f_, ram_, prec);
  const std::size_t n = std::size_t(prec + v);
  const Fe a0i = f_->inv(c_[0]);
  std::vector<Fe> b(n, 0);
  b[0] = a0i;
  for (std::size_t m = 1; m < n; ++m) {
    Fe s = 0;
    const std::size_t kmax = std::min(m, c_.size() - 1);
    for (std::size_t k = 1; k <= kmax; ++k)
      if (c_[k] && b[m - k]) s = f_->add(s, f_->mul(c_[k], b[m - k]));
    b[m] = f_->neg(f_->mul(a0i, s));
  }
  return LaurentSeries(f_, ram_, -v, std::move(b), prec);
}

LaurentSeries LaurentSeries::pow(long long n, long cap) const {
  if (n < 0) return inv(cap).pow(-n, cap);
  LaurentSeries r = one(f_, ram_), b = truncate(cap);
  while (n) {
    if (n & 1) r = (r * b).truncate(cap);
    n >>= 1;
    if (n) b = (b * b).truncate(cap);
  }
  return r;
}

LaurentSeries LaurentSeries::frobenius(unsigned k, long cap) const {
  const __int128 Q = __int128(ipow(f_->q(), k));
  const long prec = std::min(cap, exact() ? kExact : clampPrec(__int128(prec_) * Q));
  if (c_.empty()) return zero(f_, ram_, prec);
  const __int128 lo = __int128(v0_) * Q;
  if (lo >= prec) return zero(f_, ram_, prec);
  const __int128 hi = std::min(__int128(v0_ + long(c_.size()) - 1) * Q + 1, __int128(prec));
  std::vector<Fe> r(std::size_t(hi - lo), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const __int128 pos = __int128(i) * Q;
    if (pos >= hi - lo) break;
    r[std::size_t(pos)] = f_->pow(c_[i], std::uint64_t(ipow(f_->q(), k)));
  }
  return LaurentSeries(f_, ram_, long(lo), std::move(r), prec);
}

LaurentSeries LaurentSeries::embedRamified() const {
  if (ram_ != 1) throw DomainError("embedRamified expects an unramified series");
  const unsigned R = f_->q() - 1;
  const long prec = exact() ? kExact : prec_ * long(R);
  if (c_.empty()) return zero(f_, R, prec);
  std::vector<Fe> r((c_.size() - 1) * R + 1, 0);
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const long e = v0_ + long(k);
    r[k * R] = (e % 2 != 0) ? f_->neg(c_[k]) : c_[k];
  }
  return LaurentSeries(f_, R, v0_ * long(R), std::move(r), prec);
}

BigRat LaurentSeries::normalizedValuation() const {
  BigRat r(valuation(), long(ram_));
  r.canonicalize();
  return r;
}

bool LaurentSeries::agreesWith(const LaurentSeries& o) const {
  checkCompatible(o);
  const long prec = std::min(prec_, o.prec_);
  const long lo = std::min(valuationBound(), o.valuationBound());
  const long hi = std::min(prec, std::max(v0_ + long(c_.size()), o.v0_ + long(o.c_.size())));
  for (long e = lo; e < hi; ++e)
    if (coeff(e) != o.coeff(e)) return false;
  return true;
}

bool LaurentSeries::operator==(const LaurentSeries& o) const {
  return ram_ == o.ram_ && prec_ == o.prec_ && v0_ == o.v0_ && c_ == o.c_;
}

std::string LaurentSeries::header() const {
  return ram_ == 1 ? "u=1/theta" : "u=1/eta, eta^(q-1)=-theta";
}

std::string LaurentSeries::toString() const {
  std::string s;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (!c_[k]) continue;
    if (!s.empty()) s += " + ";
    s += f_->format(c_[k]) + "*u^" + std::to_string(v0_ + long(k));
  }
  if (!exact()) {
    if (!s.empty()) s += " + ";
    s += "O(u^" + std::to_string(prec_) + ")";
  }
  return s.empty() ? "0" : s;
}

long oneUnitDeviation(const LaurentSeries& a) {
  if (a.isZero() || a.v0() != 0 || a.coeffs()[0] != 1)
    throw DomainError("factor is not a 1-unit (valuation 0, constant term 1)");
  return (a - LaurentSeries::one(a.field(), a.ram())).valuationBound();
}

LaurentSeries oneUnitProduct(const FieldPtr& f, unsigned ram,
                             const std::function<std::optional<LaurentSeries>()>& next, long budget) {
  LaurentSeries acc = LaurentSeries::one(f, ram);
  long lastDev = 0;
  while (auto fac = next()) {
    const long dev = oneUnitDeviation(*fac);
    if (dev < lastDev) throw DomainError("1-unit stream deviations must be nondecreasing");
    lastDev = dev;
    if (dev >= budget) break;
    acc = (acc * *fac).truncate(budget);
  }
  return acc.truncate(budget);
}

}  // namespace ffg

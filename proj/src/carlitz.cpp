#include "ffgamma/carlitz.hpp"

#include "ffgamma/error.hpp"

namespace ffg {

CarlitzContext::CarlitzContext(FieldPtr f) : f_(std::move(f)) { d_.push_back(FqPoly::constant(f_, 1)); }

std::vector<FqPoly> CarlitzContext::additiveCoeffs(const FqPoly& a) const {
  std::vector<FqPoly> b;  // C_0 = 0
  const unsigned q = f_->q();
  for (int k = a.deg(); k >= 0; --k) {
    // C_{bt + eps} = sum_k b_k (t^(q^k) z^(q^k) + z^(q^(k+1))) + eps z
    std::vector<FqPoly> nb(b.size() + 1, FqPoly(f_));
    std::uint64_t qk = 1;
    for (std::size_t j = 0; j < b.size(); ++j, qk *= q) {
      nb[j] = nb[j] + b[j] * FqPoly::monomial(f_, 1, unsigned(qk));
      nb[j + 1] = nb[j + 1] + b[j];
    }
    nb[0] = nb[0] + FqPoly::constant(f_, a.coeff(k));
    while (!nb.empty() && nb.back().isZero()) nb.pop_back();
    b = std::move(nb);
  }
  return b;
}

BivarPoly CarlitzContext::divisionPoly(const FqPoly& a) const {
  const auto fk = additiveCoeffs(a);
  if (fk.empty()) return BivarPoly(f_);
  std::vector<FqPoly> z(ipow(f_->q(), unsigned(fk.size() - 1)) + 1, FqPoly(f_));
  std::uint64_t qk = 1;
  for (std::size_t k = 0; k < fk.size(); ++k, qk *= f_->q()) z[qk] = fk[k];
  return BivarPoly(f_, std::move(z));
}

BivarPoly CarlitzContext::cyclotomicPoly(const FqPoly& n) const {
  if (n.isZero() || !n.isMonic()) throw DomainError("cyclotomic polynomial needs a monic nonzero n");
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cyclo_.find(n.coeffs());
    if (it != cyclo_.end()) return it->second;
  }
  BivarPoly r = divisionPoly(n);
  for (const auto& m : monicDivisors(n)) {
    if (m == n) continue;
    auto [qt, rem] = bivarDivRemMonic(r, cyclotomicPoly(m));
    if (!rem.isZero())
      throw ConsistencyError("C_n not divisible by C*_m for m = " + m.toString() + ", n = " + n.toString());
    r = qt;
  }
  std::lock_guard<std::mutex> lk(mu_);
  return cyclo_.emplace(n.coeffs(), r).first->second;
}

FqPoly CarlitzContext::D(unsigned i) const {
  std::lock_guard<std::mutex> lk(mu_);
  while (d_.size() <= i) {
    const unsigned k = unsigned(d_.size());
    const FqPoly th = FqPoly::t(f_);
    FqPoly lin = FqPoly::monomial(f_, 1, unsigned(ipow(f_->q(), k))) - th;
    d_.push_back(lin * d_.back().pow(f_->q()));
  }
  return d_[i];
}

LaurentSeries CarlitzContext::theta(unsigned ram) const {
  LaurentSeries th = LaurentSeries::fromPoly(FqPoly::t(f_));
  return ram == 1 ? th : th.embedRamified();
}

LaurentSeries CarlitzContext::exp(const LaurentSeries& z, long budget) const {
  const unsigned r = z.ram();
  const long target = std::min(z.prec(), budget);
  if (target >= LaurentSeries::kExact) throw DomainError("exp needs a finite budget");
  if (z.isZero() && z.exact()) return LaurentSeries::zero(f_, r);
  const long v = z.valuationBound();
  LaurentSeries acc = LaurentSeries::zero(f_, r);
  for (unsigned i = 0;; ++i) {
    const long qi = long(ipow(f_->q(), i));
    const long termVal = qi * (v + long(r) * long(i));
    if (termVal >= target && v + long(r) * long(i) > 0) break;
    if (i > 60) throw DomainError("exp did not converge");
    const long dval = long(r) * long(i) * qi;  // valuation of 1/D_i
    LaurentSeries zq = z.frobenius(i, target - dval);
    LaurentSeries dinv = LaurentSeries::fromPoly(D(i));
    if (r != 1) dinv = dinv.embedRamified();
    dinv = dinv.inv(target - qi * v);
    acc = acc + zq * dinv;
  }
  return acc.truncate(target);
}

LaurentSeries CarlitzContext::period(long budget) const {
  const long q = f_->q();
  const unsigned R = unsigned(q - 1);
  const long p1 = (budget + q + long(R) - 1) / long(R);  // ceil((budget + q)/(q-1))
  unsigned i = 1;
  auto next = [&]() -> std::optional<LaurentSeries> {
    const long m = long(ipow(f_->q(), i)) - 1;
    ++i;
    if (m >= p1) return LaurentSeries::one(f_, 1) + LaurentSeries::monomial(f_, 1, 1, m);
    return LaurentSeries::geometricInverse(f_, 1, m, p1);
  };
  LaurentSeries prod = oneUnitProduct(f_, 1, next, p1);
  LaurentSeries emb = R == 1 ? prod : prod.embedRamified();
  return emb.shift(-q).truncate(budget);
}

LaurentSeries CarlitzContext::lambda(const FqPoly& n, long budget) const {
  if (n.isZero() || !n.isMonic()) throw DomainError("lambda_n needs a monic nonzero n");
  const long q = f_->q();
  const unsigned R = unsigned(q - 1);
  const long p1 = (budget + q + long(R) - 1) / long(R);
  LaurentSeries ninv = LaurentSeries::fromFraction(FqPoly::constant(f_, 1), n, p1);
  if (R != 1) ninv = ninv.embedRamified();
  LaurentSeries z = (period(budget) * ninv).truncate(budget);
  return exp(z, budget);
}

LaurentSeries CarlitzContext::evaluate(const BivarPoly& F, const LaurentSeries& T, const LaurentSeries& Z) const {
  LaurentSeries acc = LaurentSeries::zero(f_, Z.ram());
  LaurentSeries zpow = LaurentSeries::one(f_, Z.ram());
  for (int j = 0; j <= F.degZ(); ++j) {
    const FqPoly& c = F.zcoeffs()[std::size_t(j)];
    if (!c.isZero()) {
      LaurentSeries cj = LaurentSeries::zero(f_, T.ram());
      LaurentSeries tp = LaurentSeries::one(f_, T.ram());
      for (int i = 0; i <= c.deg(); ++i) {
        if (c.coeff(i)) cj = cj + tp.scale(c.coeff(i));
        tp = tp * T;
      }
      acc = acc + cj * zpow;
    }
    zpow = zpow * Z;
  }
  return acc;
}

BivarPoly divisionPoly(const FqPoly& a) { return CarlitzContext(a.field()).divisionPoly(a); }
BivarPoly cyclotomicPoly(const FqPoly& n) { return CarlitzContext(n.field()).cyclotomicPoly(n); }
LaurentSeries carlitzExp(const LaurentSeries& z, long budget) { return CarlitzContext(z.field()).exp(z, budget); }
LaurentSeries carlitzPeriod(const FieldPtr& f, long budget) { return CarlitzContext(f).period(budget); }
LaurentSeries carlitzLambda(const FqPoly& n, long budget) { return CarlitzContext(n.field()).lambda(n, budget); }

}  // namespace ffg

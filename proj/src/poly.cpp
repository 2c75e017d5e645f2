#include "ffgamma/poly.hpp"

#include <cctype>

#include "ffgamma/error.hpp"

namespace ffg {

FqPoly::FqPoly(FieldPtr f, std::vector<Fe> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
  trim();
}

void FqPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FqPoly FqPoly::constant(const FieldPtr& f, Fe c) { return FqPoly(f, {c}); }

FqPoly FqPoly::monomial(const FieldPtr& f, Fe c, unsigned d) {
  std::vector<Fe> v(d + 1, 0);
  v[d] = c;
  return FqPoly(f, std::move(v));
}

FqPoly FqPoly::fromIndex(const FieldPtr& f, std::uint64_t idx) {
  std::vector<Fe> v;
  while (idx) {
    v.push_back(Fe(idx % f->q()));
    idx /= f->q();
  }
  return FqPoly(f, std::move(v));
}

std::uint64_t FqPoly::index() const {
  std::uint64_t r = 0;
  for (std::size_t k = c_.size(); k-- > 0;) r = r * f_->q() + c_[k];
  return r;
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
  const FieldPtr& f = f_ ? f_ : o.f_;
  std::vector<Fe> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = f->add(coeff(int(k)), o.coeff(int(k)));
  return FqPoly(f, std::move(r));
}

FqPoly FqPoly::operator-() const {
  std::vector<Fe> r(c_.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = f_->neg(c_[k]);
  return FqPoly(f_, std::move(r));
}

FqPoly FqPoly::operator-(const FqPoly& o) const { return *this + (-o); }

FqPoly FqPoly::operator*(const FqPoly& o) const {
  const FieldPtr& f = f_ ? f_ : o.f_;
  if (c_.empty() || o.c_.empty()) return FqPoly(f);
  std::vector<Fe> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = f->add(r[i + j], f->mul(c_[i], o.c_[j]));
  }
  return FqPoly(f, std::move(r));
}

FqPoly FqPoly::scale(Fe s) const {
  std::vector<Fe> r(c_.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = f_->mul(c_[k], s);
  return FqPoly(f_, std::move(r));
}

FqPoly FqPoly::shift(unsigned k) const {
  if (c_.empty()) return *this;
  std::vector<Fe> r(k, 0);
  r.insert(r.end(), c_.begin(), c_.end());
  return FqPoly(f_, std::move(r));
}

FqPoly FqPoly::pow(std::uint64_t k) const {
  FqPoly r = constant(f_, 1), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

FqPoly FqPoly::monic() const {
  if (c_.empty()) return *this;
  return scale(f_->inv(lead()));
}

Fe FqPoly::eval(Fe x) const {
  Fe r = 0;
  for (std::size_t k = c_.size(); k-- > 0;) r = f_->add(f_->mul(r, x), c_[k]);
  return r;
}

bool FqPoly::operator<(const FqPoly& o) const {
  if (deg() != o.deg()) return deg() < o.deg();
  for (std::size_t k = c_.size(); k-- > 0;)
    if (c_[k] != o.c_[k]) return c_[k] < o.c_[k];
  return false;
}

std::string FqPoly::toString(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (!c_[k]) continue;
    if (!s.empty()) s += "+";
    const std::string cf = f_->format(c_[k]);
    if (k == 0) {
      s += cf;
      continue;
    }
    if (c_[k] != 1) s += cf + "*";
    s += var;
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

std::pair<FqPoly, FqPoly> polyDivRem(const FqPoly& f, const FqPoly& g) {
  if (g.isZero()) throw DomainError("polynomial division by zero");
  const FieldPtr& F = g.field();
  std::vector<Fe> r = f.coeffs();
  const int dg = g.deg();
  if (int(r.size()) - 1 < dg) return {FqPoly(F), FqPoly(F, r)};
  std::vector<Fe> qc(r.size() - dg, 0);
  const Fe li = F->inv(g.lead());
  for (int k = int(r.size()) - 1; k >= dg; --k) {
    if (!r[k]) continue;
    const Fe c = F->mul(r[k], li);
    qc[k - dg] = c;
    for (int j = 0; j <= dg; ++j) r[k - dg + j] = F->sub(r[k - dg + j], F->mul(c, g.coeffs()[j]));
  }
  return {FqPoly(F, std::move(qc)), FqPoly(F, std::move(r))};
}

FqPoly polyMod(const FqPoly& f, const FqPoly& g) { return polyDivRem(f, g).second; }

bool divides(const FqPoly& d, const FqPoly& f) { return polyMod(f, d).isZero(); }

FqPoly polyGcd(FqPoly a, FqPoly b) {
  while (!b.isZero()) {
    FqPoly r = polyMod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::pair<FqPoly, FqPoly> polyInvMod(const FqPoly& a, const FqPoly& m) {
  const FieldPtr& F = m.field();
  FqPoly r0 = m, r1 = polyMod(a, m), s0(F), s1 = FqPoly::constant(F, 1);
  while (!r1.isZero()) {
    auto [qt, rr] = polyDivRem(r0, r1);
    FqPoly s2 = s0 - qt * s1;
    r0 = std::move(r1);
    r1 = std::move(rr);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.isZero()) return {r0, s0};
  const Fe li = F->inv(r0.lead());
  return {r0.scale(li), polyMod(s0.scale(li), m)};
}

FqPoly mulMod(const FqPoly& a, const FqPoly& b, const FqPoly& m) { return polyMod(a * b, m); }

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<FqPoly> monicEnumerate(unsigned d, const FieldPtr& f) {
  const std::uint64_t n = ipow(f->q(), d);
  std::vector<FqPoly> out;
  out.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) out.push_back(FqPoly::fromIndex(f, n + k));
  return out;
}

std::vector<FqPoly> polysBelow(unsigned d, const FieldPtr& f) {
  const std::uint64_t n = ipow(f->q(), d);
  std::vector<FqPoly> out;
  out.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) out.push_back(FqPoly::fromIndex(f, k));
  return out;
}

std::vector<FqPoly> monicDivisors(const FqPoly& n) {
  if (n.isZero()) throw DomainError("divisors of the zero polynomial");
  std::vector<FqPoly> out;
  for (int d = 0; d <= n.deg(); ++d)
    for (auto& m : monicEnumerate(unsigned(d), n.field()))
      if (divides(m, n)) out.push_back(m);
  return out;
}

bool isIrreducible(const FqPoly& f) {
  if (f.deg() < 1) return false;
  for (int d = 1; 2 * d <= f.deg(); ++d)
    for (auto& m : monicEnumerate(unsigned(d), f.field()))
      if (divides(m, f)) return false;
  return true;
}

std::vector<std::pair<FqPoly, unsigned>> factorMonic(const FqPoly& n) {
  if (n.isZero()) throw DomainError("factorization of the zero polynomial");
  std::vector<std::pair<FqPoly, unsigned>> out;
  FqPoly r = n.monic();
  for (int d = 1; d <= r.deg(); ++d) {
    for (auto& m : monicEnumerate(unsigned(d), n.field())) {
      if (r.deg() < d) break;
      unsigned e = 0;
      while (true) {
        auto [qt, rem] = polyDivRem(r, m);
        if (!rem.isZero()) break;
        r = qt;
        ++e;
      }
      if (e) out.push_back({m, e});
    }
  }
  return out;
}

std::uint64_t eulerPhi(const FqPoly& n) {
  std::uint64_t r = 1;
  const std::uint64_t q = n.field()->q();
  for (auto& [p, e] : factorMonic(n)) {
    const std::uint64_t np = ipow(q, unsigned(p.deg()));
    r *= ipow(np, e - 1) * (np - 1);
  }
  return r;
}

namespace {

struct PolyParser {
  const std::string& s;
  const FieldPtr& f;
  const std::string& var;
  std::size_t i = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("polynomial parse error at column " + std::to_string(i + 1) + ": " + what +
                      " in \"" + s + "\"");
  }
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool peek(char c) {
    skip();
    return i < s.size() && s[i] == c;
  }
  bool peekVar() {
    skip();
    return s.compare(i, var.size(), var) == 0;
  }
  unsigned long long number() {
    skip();
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected integer");
    unsigned long long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + unsigned(s[i] - '0');
      if (v > (1ull << 40)) fail("integer too large");
      ++i;
    }
    return v;
  }
  unsigned exponent() {
    if (peek('^')) {
      ++i;
      return unsigned(number());
    }
    return 1;
  }
  FqPoly term() {
    Fe c = 1;
    bool haveCoef = false;
    skip();
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      c = f->fromInt(static_cast<long long>(number() % f->p()));
      haveCoef = true;
    } else if (!f->prime() && peek('g') && var != "g") {
      ++i;
      c = f->pow(f->generator(), exponent());
      haveCoef = true;
    }
    if (haveCoef) {
      if (!peek('*')) return FqPoly::constant(f, c);
      ++i;
    }
    if (!peekVar()) fail("expected variable '" + var + "'");
    i += var.size();
    return FqPoly::monomial(f, c, exponent());
  }
  FqPoly parse() {
    FqPoly acc(f);
    bool first = true;
    while (true) {
      bool neg = false;
      if (peek('+') || peek('-')) {
        neg = s[i] == '-';
        ++i;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      FqPoly t = term();
      acc = neg ? acc - t : acc + t;
      first = false;
      skip();
      if (i >= s.size()) break;
    }
    return acc;
  }
};

}  // namespace

FqPoly parsePoly(const std::string& s, const FieldPtr& f, const std::string& var) {
  PolyParser p{s, f, var};
  p.skip();
  if (p.i >= s.size()) p.fail("empty polynomial");
  return p.parse();
}

}  // namespace ffg

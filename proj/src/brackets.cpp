#include "ffgamma/brackets.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "ffgamma/error.hpp"

namespace ffg {

FracX::FracX(const FqPoly& a, const FqPoly& c) {
  if (c.isZero()) throw DomainError("FracX with zero denominator");
  const FieldPtr& f = c.field();
  const Fe li = f->inv(c.lead());
  FqPoly num = polyMod(a.scale(li), c.scale(li));
  FqPoly den = c.scale(li);
  if (num.isZero()) {
    a_ = FqPoly(f);
    c_ = FqPoly::constant(f, 1);
    return;
  }
  const FqPoly g = polyGcd(num, den);
  a_ = polyDivRem(num, g).first;
  c_ = polyDivRem(den, g).first;
}

FracX FracX::operator+(const FracX& o) const { return FracX(a_ * o.c_ + o.a_ * c_, c_ * o.c_); }
FracX FracX::operator-() const { return FracX(-a_, c_); }
FracX FracX::mul(const FqPoly& m) const { return FracX(a_ * m, c_); }
FracX FracX::scale(Fe e) const { return FracX(a_.scale(e), c_); }

namespace {

std::string wrap(const FqPoly& p) {
  std::string s = p.toString("t");
  return s.find('+') == std::string::npos ? s : "(" + s + ")";
}

std::string strip(std::string s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  if (out.size() >= 2 && out.front() == '(' && out.back() == ')') out = out.substr(1, out.size() - 2);
  return out;
}

}  // namespace

std::string FracX::toString() const {
  if (isZero()) return "0";
  return wrap(a_) + "/" + wrap(c_);
}

FracX parseFracX(const std::string& s, const FieldPtr& f) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return FracX(parsePoly(strip(s), f), FqPoly::constant(f, 1));
  const auto second = s.find('/', slash + 1);
  if (second != std::string::npos)
    throw DomainError("fraction parse error at column " + std::to_string(second + 1) + ": unexpected '/' in \"" + s +
                      "\"");
  const FqPoly a = parsePoly(strip(s.substr(0, slash)), f);
  const FqPoly c = parsePoly(strip(s.substr(slash + 1)), f);
  if (c.isZero()) throw DomainError("zero denominator in '" + s + "'");
  return FracX(a, c);
}

unsigned PadicDigits::digit(std::size_t i) const {
  if (i < pre.size()) return pre[i];
  return period[(i - pre.size()) % period.size()];
}

void checkPAdic(const BigRat& y, unsigned p) {
  if (y.get_den() % p == 0) throw DomainError("denominator of " + ratToString(y) + " is divisible by p");
}

BigRat ariBracket(const BigRat& y) { return ratFrac(y); }

DigitExpansion qDigits(const BigRat& y, unsigned q, unsigned p) {
  checkPAdic(y, p);
  const BigRat fr = ariBracket(y);
  DigitExpansion d;
  if (fr == 0) return d;
  if (!fr.get_den().fits_ulong_p()) throw DomainError("denominator too large");
  d.ell = unsigned(multOrder(q, fr.get_den().get_ui()));
  BigInt qell;
  mpz_ui_pow_ui(qell.get_mpz_t(), q, d.ell);
  BigRat mr = fr * BigRat(qell - 1);
  BigInt m = mr.get_num();
  d.digits.assign(d.ell, 0);
  for (unsigned i = 0; i < d.ell; ++i) {
    BigInt r = m % q;
    d.digits[i] = unsigned(r.get_ui());
    m /= q;
  }
  return d;
}

PadicDigits padicDigits(const BigRat& y, unsigned q, unsigned p) {
  checkPAdic(y, p);
  PadicDigits out;
  std::vector<unsigned> seq;
  std::map<BigRat, std::size_t> seen;
  BigRat cur = y;
  const BigInt Q(q);
  while (true) {
    auto [it, fresh] = seen.emplace(cur, seq.size());
    if (!fresh) {
      out.pre.assign(seq.begin(), seq.begin() + long(it->second));
      out.period.assign(seq.begin() + long(it->second), seq.end());
      return out;
    }
    // d = num * den^{-1} mod q
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), cur.get_den().get_mpz_t(), Q.get_mpz_t());
    BigInt d = (cur.get_num() * inv) % Q;
    if (d < 0) d += Q;
    seq.push_back(unsigned(d.get_ui()));
    cur = (cur - BigRat(d)) / BigRat(Q);
    cur.canonicalize();
  }
}

int geoBracketN(const FracX& x, unsigned N) {
  if (x.isZero()) return 0;
  // eps_i is the coefficient of theta^(N+1-i) in the quotient of a*theta^(N+1) by c
  const FqPoly quo = polyDivRem(x.num().shift(N + 1), x.den()).first;
  for (unsigned i = 1; i <= N; ++i)
    if (quo.coeff(int(N + 1 - i))) return 0;
  return quo.coeff(0) == 1 ? 1 : 0;
}

int geoBracket(const FracX& x) { return !x.isZero() && x.num().isMonic() ? 1 : 0; }

BigRat twoVarBracket(const FracX& x, const BigRat& y) {
  if (!geoBracket(x)) return 0;
  const auto& f = x.field();
  const DigitExpansion d = qDigits(y, f->q(), f->p());
  const long gap = x.ordInf();
  const long ell = long(d.ell);
  const long istar = ((-gap) % ell + ell) % ell;
  return d.digits[std::size_t(istar)];
}

BigRat twoVarBracketDigitSum(const FracX& x, const BigRat& y) {
  const auto& f = x.field();
  const DigitExpansion d = qDigits(y, f->q(), f->p());
  const long ell = long(d.ell);
  // <x>_N vanishes for N >= deg c
  const unsigned nmax = unsigned(std::max(x.den().deg(), 0));
  BigRat s = 0;
  for (long i = 0; i < ell; ++i) {
    if (!d.digits[std::size_t(i)]) continue;
    long inner = 0;
    for (unsigned N = 0; N <= nmax; ++N)
      if (((long(N) + 1 + i) % ell) == 0) inner += geoBracketN(x, N);
    s += BigRat(d.digits[std::size_t(i)]) * inner;
  }
  return s;
}

BigRat wt0Ari(const BigRat& y, unsigned q, unsigned p) {
  const DigitExpansion d = qDigits(y, q, p);
  long s = 0;
  for (unsigned v : d.digits) s += v;
  return rat(s, long(d.ell));
}

Weights weights(const FracX& x, const BigRat& y) {
  const auto& f = x.field();
  Weights w;
  w.wt0Geo = x.isZero() ? 0 : 1;
  w.wt0Ari = wt0Ari(y, f->q(), f->p());
  w.wt0 = w.wt0Geo * w.wt0Ari;
  w.wtGeo = w.wt0Geo - 1;
  w.wtAri = wt0Ari(-y, f->q(), f->p());
  w.wt = w.wtGeo * w.wtAri;
  return w;
}

BigRat partial(const BigRat& y, unsigned q, unsigned p) {
  const PadicDigits d = padicDigits(y, q, p);
  BigRat s = 0;
  BigRat qi = 1;
  for (std::size_t i = 0; i < d.pre.size(); ++i, qi *= q)
    if (d.pre[i]) s += BigRat(long(i) * long(d.pre[i])) * qi;
  const long st = long(d.pre.size());
  const long L = long(d.period.size());
  const BigRat qL = ratPow(BigRat(q), unsigned(L));
  const BigRat g1 = 1 / (1 - qL);
  const BigRat g2 = BigRat(L) * qL * g1 * g1;
  BigRat qsk = qi;  // q^(s+k)
  for (long k = 0; k < L; ++k, qsk *= q) {
    const unsigned dk = d.period[std::size_t(k)];
    if (dk) s += BigRat(dk) * qsk * (BigRat(st + k) * g1 + g2);
  }
  s.canonicalize();
  return s;
}

BigRat partialTwoVar(const FracX& x, const BigRat& y) { return twoVarBracket(x, -y); }

}  // namespace ffg

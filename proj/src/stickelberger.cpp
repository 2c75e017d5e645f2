#include "ffgamma/stickelberger.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ffgamma/carlitz.hpp"
#include "ffgamma/error.hpp"

namespace ffg {

namespace {

BigInt qpow(unsigned q, unsigned k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, k);
  return r;
}

BigRat qr(unsigned q) { return BigRat(long(q)); }

// q^i/(1 - q^l)
BigRat basisY(unsigned q, unsigned i, unsigned ell) {
  BigRat r(qpow(q, i), qpow(q, ell) - 1);
  r.canonicalize();
  return -r;
}

// Units of A/c as representatives of degree < deg c; {0} for c = 1.
std::vector<FqPoly> unitsMod(const FqPoly& c) {
  if (c.deg() == 0) return {FqPoly(c.field())};
  std::vector<FqPoly> out;
  for (auto& a : polysBelow(unsigned(c.deg()), c.field()))
    if (!a.isZero() && polyGcd(a, c).isOne()) out.push_back(a);
  return out;
}

FracX fracOf(const FqPoly& a, const FqPoly& c) { return c.deg() == 0 ? FracX(c.field()) : FracX(a, c); }

// All x in (1/n)A/A.
std::vector<FracX> levelX(const CycGroup& G) {
  std::vector<FracX> out;
  const FqPoly& n = G.modulus();
  if (n.deg() == 0) return {FracX(G.field())};
  for (auto& a : polysBelow(unsigned(n.deg()), G.field())) out.push_back(FracX(a, n));
  return out;
}

// All y in (1/(q^l - 1))Z/Z.
std::vector<BigRat> levelY(const CycGroup& G) {
  const BigInt d = qpow(G.field()->q(), G.ell()) - 1;
  std::vector<BigRat> out;
  for (BigInt k = 0; k < d; ++k) {
    BigRat r(k, d);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

CycloNum accumulateRational(unsigned N, const std::vector<std::pair<unsigned, BigRat>>& terms) {
  CycloAccumulator acc(N);
  for (auto& [k, r] : terms) acc.add(k, r);
  return acc.value();
}

}  // namespace

StFn StFn::zero(const GroupPtr& G) { return StFn{G, std::vector<BigRat>(G->order(), BigRat(0))}; }

StFn StFn::constant(const GroupPtr& G, const BigRat& r) { return StFn{G, std::vector<BigRat>(G->order(), r)}; }

StFn StFn::operator+(const StFn& o) const {
  StFn r = *this;
  return r += o;
}

StFn& StFn::operator+=(const StFn& o) {
  for (std::size_t g = 0; g < v.size(); ++g) v[g] += o.v[g];
  return *this;
}

StFn StFn::operator-(const StFn& o) const {
  StFn r = *this;
  for (std::size_t g = 0; g < v.size(); ++g) r.v[g] -= o.v[g];
  return r;
}

StFn StFn::operator*(const BigRat& s) const {
  StFn r = *this;
  for (auto& x : r.v) x *= s;
  return r;
}

bool StFn::isZero() const {
  return std::all_of(v.begin(), v.end(), [](const BigRat& x) { return x == 0; });
}

std::optional<BigRat> StFn::constantValue() const {
  if (v.empty()) return BigRat(0);
  for (auto& x : v)
    if (x != v[0]) return std::nullopt;
  return v[0];
}

StFn StFn::translate(std::size_t rho0) const {
  StFn r = *this;
  for (std::size_t g = 0; g < v.size(); ++g) r.v[g] = v[G->mul(g, rho0)];
  return r;
}

std::string StFn::toString() const {
  std::string s = "(";
  for (std::size_t g = 0; g < v.size(); ++g) s += (g ? ", " : "") + ratToString(v[g]);
  return s + ")";
}

bool inS(const StFn& f) {
  const auto D = f.G->dInfinity();
  std::optional<BigRat> common;
  for (std::size_t g = 0; g < f.v.size(); ++g) {
    BigRat s = 0;
    for (std::size_t d : D) s += f.v[f.G->mul(g, d)];
    if (!common) common = s;
    else if (*common != s) return false;
  }
  return true;
}

StFn stFunction(StKind kind, const FracX& x, const BigRat& y, const GroupPtr& G) {
  const unsigned q = G->field()->q();
  StFn out = StFn::zero(G);
  switch (kind) {
    case StKind::Ari:
      checkLevel(*G, FracX(G->field()), y);
      for (std::size_t g = 0; g < G->order(); ++g) out.v[g] = ariBracket(-starActionY(*G, g, y));
      break;
    case StKind::Geo: {
      checkLevel(*G, x, BigRat(0));
      const BigRat c = rat(1, long(q) - 1);
      for (std::size_t g = 0; g < G->order(); ++g) out.v[g] = BigRat(geoBracket(starActionX(*G, g, x))) - c;
      break;
    }
    case StKind::TwoVar:
      checkLevel(*G, x, y);
      for (std::size_t g = 0; g < G->order(); ++g) {
        const auto [xr, yr] = starAction(*G, g, x, y);
        out.v[g] = twoVarBracket(xr, -yr) - ariBracket(-yr);
      }
      break;
  }
  if (!inS(out)) throw ConsistencyError("Stickelberger function outside S(G)");
  return out;
}

std::size_t rationalRank(const std::vector<std::vector<BigRat>>& rows) {
  std::vector<std::vector<BigInt>> a;
  for (auto& r : rows) {
    BigInt l = 1;
    for (auto& x : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<BigInt> ir;
    for (auto& x : r) ir.push_back(x.get_num() * (l / x.get_den()));
    a.push_back(std::move(ir));
  }
  if (a.empty()) return 0;
  const std::size_t cols = a[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < a.size(); ++col) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    const BigInt p = a[rank][col];
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      if (a[r][col] == 0) continue;
      const BigInt m = a[r][col];
      BigInt g = 0;
      for (std::size_t j = col; j < cols; ++j) {
        a[r][j] = a[r][j] * p - m * a[rank][j];
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a[r][j].get_mpz_t());
      }
      if (g > 1)
        for (std::size_t j = col; j < cols; ++j) a[r][j] /= g;
    }
    ++rank;
  }
  return rank;
}

BigRat expectedRank(const CycGroup& G) {
  const unsigned q = G.field()->q();
  const BigRat units(long(G.unitCount()));
  const BigRat sub = G.modulus().deg() > 0 ? rat(1, long(q) - 1) : BigRat(1);
  BigRat r = BigRat(1) + (BigRat(long(G.ell())) - sub) * units;
  r.canonicalize();
  return r;
}

RankReport distributionRank(const GroupPtr& G) {
  const unsigned q = G->field()->q();
  const unsigned ell = G->ell();
  const auto xs = levelX(*G);
  const auto ys = levelY(*G);
  std::map<std::pair<FracX, BigRat>, StFn> cache;
  auto St = [&](const FracX& x, const BigRat& y) -> const StFn& {
    auto key = std::make_pair(x, ratFrac(y));
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, stFunction(StKind::TwoVar, key.first, key.second, G)).first;
    return it->second;
  };

  RankReport rep;
  std::vector<std::vector<BigRat>> rows;
  for (auto& x : xs)
    for (auto& y : ys) rows.push_back(St(x, y).v);
  rep.rowCount = rows.size();
  rep.rank = rationalRank(rows);
  rep.expected = expectedRank(*G);

  auto record = [&](const StFn& img) {
    ++rep.relationCount;
    if (img.isZero()) ++rep.relationsVanishing;
  };
  const BigInt qell = qpow(q, ell);
  const FieldPtr& f = G->field();
  // [x, y] - sum y_i [x, q^i/(1 - q^l)], <-y> = sum y_i q^i/(q^l - 1)
  for (auto& x : xs)
    for (auto& y : ys) {
      BigRat t = ariBracket(-y) * BigRat(qell - 1);
      BigInt N = t.get_num();
      StFn img = St(x, y);
      for (unsigned i = 0; i < ell; ++i) {
        const BigInt digit = N % long(q);
        N /= long(q);
        if (digit != 0) img = img - St(x, basisY(q, i, ell)) * BigRat(digit);
      }
      record(img);
    }
  // [n' x, |n'| y] - sum_{deg a < deg n'} [x + a/n', y]
  for (auto& np : monicDivisors(G->modulus())) {
    if (np.deg() == 0) continue;
    const auto shifts = polysBelow(unsigned(np.deg()), f);
    const BigRat absn(qpow(q, unsigned(np.deg())));
    for (auto& x : xs)
      for (auto& y : ys) {
        StFn img = St(x.mul(np), y * absn);
        for (auto& a : shifts) img = img - St(x + FracX(a, np), y);
        record(img);
      }
  }
  // sum_i sum_eps [eps x, q^i y], x != 0
  for (auto& x : xs) {
    if (x.isZero()) continue;
    for (auto& y : ys) {
      StFn img = StFn::zero(G);
      for (unsigned i = 0; i < ell; ++i)
        for (Fe e = 1; e < q; ++e) img += St(x.scale(e), y * BigRat(qpow(q, i)));
      record(img);
    }
  }
  rep.relationsVanish = rep.relationsVanishing == rep.relationCount;
  return rep;
}

EvaluatorResult evaluatorCheck(const Character& chi, const FqPoly& c, const FqPoly& a, unsigned i) {
  const GroupPtr& G = chi.group();
  const FieldPtr& f = G->field();
  const unsigned q = f->q(), N = chi.cycloOrder(), ell = G->ell();
  if (!c.isMonic() || !divides(c, G->modulus())) throw DomainError("c must be a monic divisor of n");
  if (c.deg() > 0 && !polyGcd(a, c).isOne()) throw DomainError("a must be coprime to c");
  const FqPoly one = FqPoly::constant(f, 1);
  const FracX x = fracOf(polyMod(a, c), c);
  const StFn st = stFunction(StKind::TwoVar, x, basisY(q, i % ell, ell), G);

  EvaluatorResult res;
  {
    CycloAccumulator acc(N);
    for (std::size_t g = 0; g < G->order(); ++g)
      if (st.v[g] != 0) acc.add((N - chi.logValue(g)) % N, st.v[g]);
    res.lhs = acc.value();
  }
  const BigRat phiN(long(G->unitCount()));
  const BigRat phiC(long(eulerPhi(c)));
  const long degc = c.deg();
  if (!chi.finiteTrivial()) {
    if (!divides(chi.conductor(), c)) {
      res.branch = EvaluatorBranch::NotDividing;
      res.rhs = CycloNum(N);
    } else {
      res.branch = EvaluatorBranch::Nontrivial;
      res.rhs = chi.prim(a, long(i) + degc) * lDataModified(chi.conj(), c) * (phiN / phiC);
    }
  } else {
    const CycloNum lbar = lData(chi.conj()).L0;
    const CycloNum unitPart = chi.prim(one, long(i)) * lbar * phiN;
    if (degc == 0) {
      res.branch = EvaluatorBranch::TrivialUnit;
      res.rhs = unitPart;
    } else {
      res.branch = EvaluatorBranch::TrivialExtended;
      const Character cb = chi.conj();
      std::vector<std::pair<unsigned, BigRat>> terms;
      for (auto& b : unitsMod(c))
        if (b.isMonic()) terms.push_back({cb.primLog(one, b.deg()), BigRat(1)});
      const CycloNum sc = accumulateRational(N, terms);
      res.rhs = chi.prim(one, long(i) + degc) * sc * (phiN / phiC) + unitPart;
    }
  }
  res.equal = res.lhs == res.rhs;
  return res;
}

std::size_t CsfCoefficients::keyIndex(const FqPoly& c, const FqPoly& a, unsigned i) const {
  const FqPoly ar = c.deg() == 0 ? FqPoly(c.field()) : polyMod(a, c);
  for (std::size_t k = 0; k < keys.size(); ++k)
    if (keys[k].c == c && keys[k].a == ar && keys[k].i == i) return k;
  throw DomainError("no n_c entry for c = " + c.toString() + ", a = " + a.toString());
}

CsfCoefficients nCoefficients(const Subfield& K) {
  const GroupPtr& G = K.G;
  const unsigned q = G->field()->q(), ell = G->ell(), N = G->exponent();
  CsfCoefficients out;
  out.K = K;
  for (auto& chi : charactersTrivialOn(G, K.H)) {
    bool onDinf = false;
    for (std::size_t d : K.Dinf)
      if (chi.logValue(d)) onDinf = true;
    if (onDinf) out.chars.push_back(chi);
  }
  std::vector<CycloNum> invL;
  for (auto& chi : out.chars) invL.push_back(lData(chi).L0.inv());

  for (auto& c : monicDivisors(G->modulus())) {
    if (std::none_of(out.chars.begin(), out.chars.end(), [&](const Character& chi) { return chi.conductor() == c; }))
      continue;
    for (auto& a : unitsMod(c))
      for (unsigned i = 0; i < ell; ++i) out.keys.push_back({c, a, i});
  }
  for (auto& k : out.keys) out.st.push_back(stFunction(StKind::TwoVar, fracOf(k.a, k.c), basisY(q, k.i, ell), G));

  out.value.assign(K.cosetCount(), std::vector<BigRat>(out.keys.size()));
  for (std::size_t r = 0; r < K.cosetCount(); ++r) {
    const std::size_t rho = K.cosetRep[r];
    for (std::size_t k = 0; k < out.keys.size(); ++k) {
      const NcKey& key = out.keys[k];
      CycloNum acc(N);
      for (std::size_t j = 0; j < out.chars.size(); ++j) {
        const Character& chi = out.chars[j];
        if (chi.conductor() != key.c) continue;
        const unsigned lg = (chi.logValue(rho) + chi.primLog(key.a, long(key.i) + key.c.deg())) % N;
        acc += CycloNum::root(N, lg) * invL[j];
      }
      auto v = acc.isRational();
      if (!v) throw ConsistencyError("n_c entry is not rational: " + acc.toString());
      out.value[r][k] = *v;
    }
  }
  return out;
}

std::optional<BigInt> cmWeight(const Subfield& K, const std::vector<BigInt>& m) {
  if (m.size() != K.cosetCount()) throw DomainError("CM type vector has the wrong length");
  std::vector<BigInt> sums(K.plusCosetRep.size(), BigInt(0));
  for (std::size_t k = 0; k < m.size(); ++k) sums[K.plusCosetOf[K.cosetRep[k]]] += m[k];
  for (auto& s : sums)
    if (s != sums[0]) return std::nullopt;
  return sums[0];
}

bool isGeneralizedCmType(const Subfield& K, const std::vector<BigInt>& m) {
  if (m.size() != K.cosetCount()) return false;
  if (std::any_of(m.begin(), m.end(), [](const BigInt& x) { return x < 0; })) return false;
  if (std::all_of(m.begin(), m.end(), [](const BigInt& x) { return x == 0; })) return false;
  return cmWeight(K, m).has_value();
}

PhiDecomposition phiDecompose(const CsfCoefficients& nc, const std::vector<BigInt>& m, std::size_t rho0) {
  const Subfield& K = nc.K;
  const GroupPtr& G = K.G;
  if (K.Hplus.size() == K.H.size()) throw DomainError("K is totally real");
  if (!isGeneralizedCmType(K, m)) throw DomainError("not a generalized CM type");
  if (rho0 >= K.cosetCount()) throw DomainError("rho0 out of range");
  const BigInt wt = *cmWeight(K, m);

  PhiDecomposition out;
  out.constant = BigRat(wt) / BigRat(long(K.cmDegree));
  out.constant.canonicalize();
  out.lhs = StFn::zero(G);
  const std::size_t inv0 = G->inv(K.cosetRep[rho0]);
  for (std::size_t g = 0; g < G->order(); ++g) out.lhs.v[g] = BigRat(m[K.cosetOf[G->mul(g, inv0)]]);

  out.rhs = StFn::constant(G, out.constant);
  const BigRat scale = rat(1, long(K.degree));
  for (std::size_t k = 0; k < nc.keys.size(); ++k) {
    BigRat coef = 0;
    for (std::size_t r = 0; r < K.cosetCount(); ++r)
      if (m[r] != 0) coef += BigRat(m[r]) * nc.at(K.cosetMul(r, rho0), k);
    coef.canonicalize();
    if (coef == 0) continue;
    out.terms.push_back({k, coef});
    out.rhs += nc.st[k] * (coef * scale);
  }
  for (auto& x : out.rhs.v) x.canonicalize();
  out.verified = out.lhs == out.rhs;
  return out;
}

EpsilonReport epsilonH(const CsfCoefficients& nc, const std::vector<BigInt>& m) {
  const Subfield& K = nc.K;
  const GroupPtr& G = K.G;
  const unsigned q = G->field()->q(), ell = G->ell();
  const PhiDecomposition d = phiDecompose(nc, m, K.cosetOf[G->identity()]);
  const BigRat wtPart = d.constant * (1 - qr(q));

  std::map<std::pair<FracX, BigRat>, BigRat> eps;
  const FracX zero(G->field());
  for (unsigned i = 0; i < ell; ++i) eps[{zero, ratFrac(basisY(q, i, ell))}] += wtPart;
  const BigRat scale = rat(1, long(K.degree));
  for (auto& t : d.terms) {
    const NcKey& key = nc.keys[t.key];
    eps[{fracOf(key.a, key.c), ratFrac(basisY(q, key.i, ell))}] += t.coefficient * scale;
  }

  EpsilonReport out;
  out.phi = d.lhs;
  out.combination = StFn::zero(G);
  for (auto& [xy, v] : eps) {
    BigRat value = v;
    value.canonicalize();
    if (value == 0) continue;
    out.terms.push_back({xy.first, xy.second, value});
    out.combination += stFunction(StKind::TwoVar, xy.first, xy.second, G) * value;
  }
  for (auto& x : out.combination.v) x.canonicalize();
  out.verified = out.combination == out.phi;
  return out;
}

StFn stImage(const GammaMonomial& m, const GroupPtr& G) {
  StFn out = StFn::constant(G, m.piExponent);
  for (const auto& [key, e] : m.factors) out += stFunction(StKind::TwoVar, key.first, key.second, G) * e;
  for (auto& x : out.v) x.canonicalize();
  return out;
}

std::optional<BigRat> monomialEquivalent(const GammaMonomial& m1, const GammaMonomial& m2, const GroupPtr& G) {
  return (stImage(m1, G) - stImage(m2, G)).constantValue();
}

GammaMonomial gammaAriMonomial(const FieldPtr& f, const BigRat& y, const BigRat& e) {
  if (y <= 0 || y > 1) throw DomainError("Gamma_ari monomial needs 0 < y <= 1");
  GammaMonomial m;
  m.add(FracX(f), y, -e);
  return m;
}

GammaMonomial gammaTwoVarMonomial(const FracX& x, const BigRat& y, const BigRat& e) {
  if (x.isZero()) throw DomainError("Gamma(x, y) monomial needs x != 0");
  if (y <= 0 || y > 1) throw DomainError("Gamma(x, y) monomial needs 0 < y <= 1");
  GammaMonomial m;
  m.add(x, y, e);
  return m;
}

GammaMonomial gammaGeoMonomial(const FracX& x, const BigRat& e) {
  if (x.isZero()) throw DomainError("Gamma_geo monomial needs x != 0");
  const unsigned q = x.field()->q();
  const BigRat y = rat(1, 1 - long(q));
  GammaMonomial m;
  m.add(x, y, e);
  m.add(FracX(x.field()), y, -e);
  return m;
}

GammaMonomial monomialProduct(const GammaMonomial& a, const GammaMonomial& b) {
  GammaMonomial m = a;
  m.piExponent += b.piExponent;
  m.piExponent.canonicalize();
  for (const auto& [key, e] : b.factors) m.add(key.first, key.second, e);
  return m;
}

ClassNumberReport relativeClassNumber(const Subfield& K) {
  const GroupPtr& G = K.G;
  const unsigned N = G->exponent();
  CycloNum prod(N, BigRat(1));
  for (auto& chi : charactersTrivialOn(G, K.H)) {
    bool onDinf = false;
    for (std::size_t d : K.Dinf)
      if (chi.logValue(d)) onDinf = true;
    if (onDinf) prod = prod * lData(chi).L0;
  }
  auto r = prod.isRational();
  if (!r) throw ConsistencyError("relative class number product is not rational");
  ClassNumberReport out;
  out.product = *r;
  out.wK = K.wK;
  out.h = out.product * BigRat(K.wK);
  out.h.canonicalize();
  return out;
}

LerchResult lerchVerify(const Character& chi) {
  const GroupPtr& G = chi.group();
  const unsigned q = G->field()->q(), N = chi.cycloOrder(), ell = G->ell();
  const LValueData L = lData(chi);
  const FqPoly& c = L.conductor;
  LerchResult out;
  out.lhs = L.Lderiv0;
  CycloAccumulator acc(N);
  acc.add(L.L0 * BigRat(-c.deg()));
  const BigInt qell = qpow(q, ell);
  for (auto& a : unitsMod(c)) {
    const FracX x = fracOf(a, c);
    for (unsigned i = 0; i < ell; ++i) {
      BigRat y = BigRat(1) - BigRat(qpow(q, i), qell - 1);
      y.canonicalize();
      acc.add(chi.primLog(a, long(i) + c.deg()), -gammaStarValuation(x, y));
    }
  }
  out.rhs = acc.value();
  out.ok = out.lhs == out.rhs;
  return out;
}

namespace {

// Target of the Chowla-Selberg reduction for the two recognized families.
std::optional<std::pair<GammaMonomial, std::string>> reductionTarget(const CsfCoefficients& nc) {
  const Subfield& K = nc.K;
  const GroupPtr& G = K.G;
  const FieldPtr& f = G->field();
  const unsigned q = f->q();
  if (K.degree == 1 || nc.chars.empty()) return std::nullopt;
  const bool constantExt = std::all_of(nc.chars.begin(), nc.chars.end(), [](const Character& c) { return c.finiteTrivial(); });
  if (constantExt && K.constantDegree == K.degree) {
    const unsigned l = K.constantDegree;
    const BigInt d = qpow(q, l) - 1;
    if (d < 2) return std::nullopt;
    const BigRat y1 = BigRat(1) - BigRat(qpow(q, l - 1), d);
    const BigRat y2 = BigRat(1) - BigRat(BigInt(1), d);
    GammaMonomial m = monomialProduct(gammaAriMonomial(f, y1, qr(q)), gammaAriMonomial(f, y2, BigRat(-1)));
    return std::make_pair(m, "Gamma_ari(1 - q^(l-1)/(q^l - 1))^q / Gamma_ari(1 - 1/(q^l - 1)), l = " + std::to_string(l));
  }
  const FqPoly t = FqPoly::t(f);
  const bool geoT = q > 2 && K.constantDegree == 1 && K.degree == q - 1 && divides(t, G->modulus()) &&
                    std::all_of(nc.chars.begin(), nc.chars.end(), [&](const Character& c) {
                      return divides(c.conductor(), t) && c.logValue(G->element(FqPoly::constant(f, 1), 1)) == 0;
                    });
  if (geoT) return std::make_pair(gammaGeoMonomial(FracX(FqPoly::constant(f, 1), t)), std::string("Gamma_geo(1/theta)"));
  return std::nullopt;
}

}  // namespace

CsfReport csfReport(const Subfield& K, long budget) {
  if (!K.imaginary) throw DomainError("the Chowla-Selberg report needs an imaginary field");
  const GroupPtr& G = K.G;
  const FieldPtr& f = G->field();
  const unsigned q = f->q(), ell = G->ell();
  CsfReport rep;
  rep.nc = nCoefficients(K);
  const CsfCoefficients& nc = rep.nc;
  const std::size_t id = K.cosetOf[G->identity()];
  const BigRat invDeg = rat(1, long(K.degree));

  rep.periodMonomial.piExponent = 1;
  for (std::size_t k = 0; k < nc.keys.size(); ++k) {
    const auto& key = nc.keys[k];
    rep.periodMonomial.add(fracOf(key.a, key.c), basisY(q, key.i, ell), nc.at(id, k));
  }
  for (std::size_t r = 0; r < K.cosetCount(); ++r) {
    GammaMonomial m;
    m.piExponent = invDeg;
    for (std::size_t k = 0; k < nc.keys.size(); ++k) {
      const auto& key = nc.keys[k];
      m.add(fracOf(key.a, key.c), basisY(q, key.i, ell), nc.at(r, k) * invDeg);
    }
    rep.quasiPeriods.push_back(m);
  }
  rep.periodValuation = monomialEvaluate(rep.periodMonomial, f, budget).valuation;
  for (auto& m : rep.quasiPeriods) rep.quasiPeriodValuations.push_back(monomialEvaluate(m, f, budget).valuation);

  // log-derivative identity, ln q units
  const BigInt qell = qpow(q, ell);
  rep.logDerGamma = -carlitzPeriod(f, std::max<long>(budget, 8) * long(q - 1)).normalizedValuation();
  for (std::size_t k = 0; k < nc.keys.size(); ++k) {
    const auto& key = nc.keys[k];
    BigRat y = BigRat(1) - BigRat(qpow(q, key.i), qell - 1);
    y.canonicalize();
    rep.logDerGamma -= nc.at(id, k) * gammaStarValuation(fracOf(key.a, key.c), y);
  }
  rep.logDerGamma.canonicalize();
  CycloNum lsum(G->exponent(), rat(long(q), long(q) - 1));
  for (auto& chi : nc.chars) {
    const LValueData L = lData(chi);
    lsum += L.Lderiv0 / L.L0 + CycloNum(G->exponent(), BigRat(L.conductor.deg()));
  }
  auto lr = lsum.isRational();
  if (!lr) throw ConsistencyError("log-derivative sum is not rational");
  rep.logDerL = *lr;
  rep.logDerHolds = rep.logDerGamma == rep.logDerL;

  if (auto target = reductionTarget(nc)) {
    rep.reduction = monomialEquivalent(rep.quasiPeriods[id], target->first, G);
    rep.reductionTarget = target->second;
  }
  return rep;
}

}  // namespace ffg

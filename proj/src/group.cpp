#include "ffgamma/group.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "ffgamma/error.hpp"

namespace ffg {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

long mod(long a, long m) { return ((a % m) + m) % m; }

}  // namespace

GroupPtr CycGroup::make(const FqPoly& n, unsigned ell) {
  return GroupPtr(new CycGroup(n, ell));
}

CycGroup::CycGroup(const FqPoly& n, unsigned ell) : n_(n), ell_(ell) {
  if (!n.isMonic()) throw DomainError("the modulus n must be monic");
  if (ell == 0) throw DomainError("l must be at least 1");
  const FieldPtr& f = n.field();
  const unsigned d = unsigned(n.deg());
  const std::uint64_t total = ipow(f->q(), d);
  if (total * ell > 100000) throw DomainError("group too large for exhaustive construction");
  unitByIndex_.assign(total, kNone);
  for (auto& a : polysBelow(d, f)) {
    if (!polyGcd(a, n).isOne()) continue;
    unitByIndex_[a.index()] = units_.size();
    units_.push_back(a);
  }
  const std::size_t U = units_.size();
  unitMul_.resize(U * U);
  for (std::size_t i = 0; i < U; ++i)
    for (std::size_t j = i; j < U; ++j) {
      const std::size_t k = unitByIndex_[mulMod(units_[i], units_[j], n_).index()];
      unitMul_[i * U + j] = unitMul_[j * U + i] = k;
    }
  identity_ = element(FqPoly::constant(f, 1), 0);
  decompose();
}

std::size_t CycGroup::element(std::size_t u, long c) const { return u * ell_ + std::size_t(mod(c, long(ell_))); }

std::size_t CycGroup::element(const FqPoly& alpha, long c) const {
  const FqPoly r = polyMod(alpha, n_);
  const std::size_t u = unitByIndex_[r.index()];
  if (u == kNone) throw DomainError(alpha.toString() + " is not a unit modulo " + n_.toString());
  return element(u, c);
}

std::size_t CycGroup::mul(std::size_t g, std::size_t h) const {
  const std::size_t U = units_.size();
  return element(unitMul_[unitOf(g) * U + unitOf(h)], long(shiftOf(g) + shiftOf(h)));
}

std::size_t CycGroup::pow(std::size_t g, unsigned long long k) const {
  std::size_t r = identity_, b = g;
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

std::size_t CycGroup::inv(std::size_t g) const {
  // g^(#G - 1)
  return pow(g, order() - 1);
}

void CycGroup::decompose() {
  // Maximal-order peeling: pick g of maximal order m in G/S, correct it by
  // h in S with h^m = g^m so that <g'> meets S trivially, and extend S.
  const std::size_t N = order();
  std::vector<char> inS(N, 0);
  std::vector<std::size_t> S{identity_};
  inS[identity_] = 1;
  std::vector<std::pair<std::size_t, unsigned>> found;
  while (S.size() < N) {
    std::size_t best = kNone;
    unsigned bestOrd = 0;
    for (std::size_t g = 0; g < N; ++g) {
      if (inS[g]) continue;
      unsigned m = 1;
      std::size_t x = g;
      while (!inS[x]) {
        x = mul(x, g);
        ++m;
      }
      if (m > bestOrd) {
        bestOrd = m;
        best = g;
      }
    }
    const std::size_t s = pow(best, bestOrd);
    std::size_t corr = kNone;
    for (std::size_t h : S)
      if (pow(h, bestOrd) == s) {
        corr = h;
        break;
      }
    if (corr == kNone) throw ConsistencyError("invariant factor peeling failed");
    const std::size_t g = mul(best, inv(corr));
    found.emplace_back(g, bestOrd);
    std::vector<std::size_t> next;
    next.reserve(S.size() * bestOrd);
    std::size_t gp = identity_;
    for (unsigned k = 0; k < bestOrd; ++k, gp = mul(gp, g))
      for (std::size_t h : S) next.push_back(mul(h, gp));
    std::fill(inS.begin(), inS.end(), 0);
    for (std::size_t x : next) {
      if (inS[x]) throw ConsistencyError("peeled generator meets the previous subgroup");
      inS[x] = 1;
    }
    S = std::move(next);
  }
  // ascending invariants: d_1 | d_2 | ...
  std::reverse(found.begin(), found.end());
  for (auto& [g, m] : found) {
    gens_.push_back(g);
    inv_.push_back(m);
  }
  coords_.assign(N, {});
  std::vector<char> seen(N, 0);
  std::vector<unsigned> e(inv_.size(), 0);
  for (std::size_t count = 0; count < N; ++count) {
    std::size_t g = identity_;
    for (std::size_t j = 0; j < e.size(); ++j) g = mul(g, pow(gens_[j], e[j]));
    if (seen[g]) throw ConsistencyError("generator coordinates are not unique");
    seen[g] = 1;
    coords_[g] = e;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (++e[j] < inv_[j]) break;
      e[j] = 0;
    }
  }
}

std::size_t CycGroup::artin(const FqPoly& a) const {
  if (!a.isMonic()) throw DomainError("Artin symbol needs a monic polynomial");
  return element(a, a.deg());
}

std::vector<std::size_t> CycGroup::dInfinity() const {
  std::set<std::size_t> out;
  const FieldPtr& f = field();
  for (Fe e = 1; e < f->q(); ++e)
    for (unsigned c = 0; c < ell_; ++c) out.insert(element(FqPoly::constant(f, e), long(c)));
  return {out.begin(), out.end()};
}

std::string CycGroup::elementString(std::size_t g) const {
  const FqPoly& a = alphaOf(g);
  return "(" + (n_.deg() == 0 ? std::string("1") : a.toString()) + ", " + std::to_string(shiftOf(g)) + ")";
}

void checkLevel(const CycGroup& G, const FracX& x, const BigRat& y) {
  if (!divides(x.den(), G.modulus()))
    throw DomainError(x.toString() + " is not in (1/n)A/A for n = " + G.modulus().toString());
  const BigRat m = y * BigRat(BigInt(long(ipow(G.field()->q(), G.ell()))) - 1);
  if (!isInteger(m)) throw DomainError(ratToString(y) + " is not in (1/(q^l - 1))Z/Z for l = " + std::to_string(G.ell()));
}

FracX starActionX(const CycGroup& G, std::size_t g, const FracX& x) {
  if (!divides(x.den(), G.modulus())) throw DomainError(x.toString() + " is not at level " + G.modulus().toString());
  return x.mul(G.alphaOf(g));
}

BigRat starActionY(const CycGroup& G, std::size_t g, const BigRat& y) {
  const BigRat qc(BigInt(long(ipow(G.field()->q(), G.shiftOf(g)))));
  return ratFrac(qc * y);
}

std::pair<FracX, BigRat> starAction(const CycGroup& G, std::size_t g, const FracX& x, const BigRat& y) {
  checkLevel(G, x, y);
  return {starActionX(G, g, x), starActionY(G, g, y)};
}

std::vector<std::vector<std::size_t>> allSubgroups(const CycGroup& G) {
  const std::size_t N = G.order();
  if (N > 4096) throw DomainError("subgroup enumeration limited to #G <= 4096");
  auto closure = [&](std::vector<char> mem) {
    std::vector<std::size_t> list;
    for (std::size_t g = 0; g < N; ++g)
      if (mem[g]) list.push_back(g);
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        const std::size_t p = G.mul(list[i], list[j]);
        if (!mem[p]) {
          mem[p] = 1;
          list.push_back(p);
        }
      }
    return mem;
  };
  std::set<std::vector<char>> seen;
  std::vector<std::vector<char>> queue;
  std::vector<char> triv(N, 0);
  triv[G.identity()] = 1;
  seen.insert(triv);
  queue.push_back(triv);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const std::vector<char> cur = queue[k];
    for (std::size_t g = 0; g < N; ++g) {
      if (cur[g]) continue;
      std::vector<char> m = cur;
      m[g] = 1;
      m = closure(std::move(m));
      if (seen.insert(m).second) queue.push_back(m);
    }
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& m : queue) {
    std::vector<std::size_t> h;
    for (std::size_t g = 0; g < N; ++g)
      if (m[g]) h.push_back(g);
    out.push_back(std::move(h));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

namespace {

void cosets(const CycGroup& G, const std::vector<std::size_t>& H, std::vector<std::size_t>& of,
            std::vector<std::size_t>& rep) {
  of.assign(G.order(), kNone);
  rep.clear();
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (of[g] != kNone) continue;
    const std::size_t idx = rep.size();
    rep.push_back(g);
    for (std::size_t h : H) of[G.mul(g, h)] = idx;
  }
}

}  // namespace

Subfield subfieldFromSubgroup(const GroupPtr& G, std::vector<std::size_t> H) {
  const std::size_t N = G->order();
  Subfield K;
  K.G = G;
  std::sort(H.begin(), H.end());
  H.erase(std::unique(H.begin(), H.end()), H.end());
  K.inH.assign(N, false);
  for (std::size_t h : H) {
    if (h >= N) throw DomainError("subgroup element out of range");
    K.inH[h] = true;
  }
  if (!K.inH[G->identity()]) throw DomainError("subgroup must contain the identity");
  for (std::size_t a : H)
    for (std::size_t b : H)
      if (!K.inH[G->mul(a, b)]) throw DomainError("H is not closed under the group operation");
  K.H = H;
  K.Dinf = G->dInfinity();
  K.inHplus.assign(N, false);
  for (std::size_t h : H)
    for (std::size_t d : K.Dinf) K.inHplus[G->mul(h, d)] = true;
  for (std::size_t g = 0; g < N; ++g)
    if (K.inHplus[g]) K.Hplus.push_back(g);
  cosets(*G, K.H, K.cosetOf, K.cosetRep);
  cosets(*G, K.Hplus, K.plusCosetOf, K.plusCosetRep);
  K.imaginary = K.Hplus.size() == N;
  K.degree = N / H.size();
  K.cmDegree = K.Hplus.size() / H.size();
  // constant field: fixed field of H (A/n)^x
  std::set<std::size_t> HU;
  for (std::size_t h : H)
    for (std::size_t u = 0; u < G->unitCount(); ++u) HU.insert(G->mul(h, G->element(u, 0)));
  K.constantDegree = unsigned(N / HU.size());
  const unsigned q = G->field()->q();
  K.wK = (BigInt(long(ipow(q, K.constantDegree))) - 1) / BigInt(long(q - 1));
  return K;
}

std::size_t Subfield::cosetMul(std::size_t a, std::size_t b) const {
  return cosetOf[G->mul(cosetRep[a], cosetRep[b])];
}

std::size_t Subfield::cosetInv(std::size_t a) const { return cosetOf[G->inv(cosetRep[a])]; }

Character::Character(GroupPtr G, std::vector<unsigned> k) : G_(std::move(G)), k_(std::move(k)) {
  const auto& d = G_->invariants();
  if (k_.size() != d.size()) throw DomainError("character exponent tuple has the wrong length");
  const unsigned N = G_->exponent();
  for (std::size_t j = 0; j < d.size(); ++j) k_[j] %= d[j];
  log_.assign(G_->order(), 0);
  for (std::size_t g = 0; g < G_->order(); ++g) {
    const auto& e = G_->coordinates(g);
    unsigned long long s = 0;
    for (std::size_t j = 0; j < d.size(); ++j) s += (unsigned long long)(k_[j]) * e[j] * (N / d[j]);
    log_[g] = unsigned(s % N);
  }
  cond_ = conductorOf(*this);
  const FieldPtr& f = G_->field();
  primByIndex_.assign(ipow(f->q(), unsigned(std::max(cond_.deg(), 0))), -1);
  for (std::size_t u = 0; u < G_->unitCount(); ++u) {
    const std::size_t r = polyMod(G_->unit(u), cond_).index();
    const long v = long(log_[G_->element(u, 0)]);
    if (primByIndex_[r] >= 0 && primByIndex_[r] != v) throw ConsistencyError("character does not factor through its conductor");
    primByIndex_[r] = v;
  }
  shiftLog_ = log_[G_->element(FqPoly::constant(f, 1), 1)];
}

CycloNum Character::value(std::size_t g) const { return CycloNum::root(cycloOrder(), log_[g]); }

unsigned Character::order() const {
  const unsigned N = cycloOrder();
  unsigned o = 1;
  for (unsigned v : log_) o = std::lcm(o, N / std::gcd(N, v == 0 ? N : v));
  return o;
}

bool Character::isTrivial() const {
  return std::all_of(log_.begin(), log_.end(), [](unsigned v) { return v == 0; });
}

bool Character::finiteTrivial() const {
  for (std::size_t u = 0; u < G_->unitCount(); ++u)
    if (log_[G_->element(u, 0)]) return false;
  return true;
}

Character Character::conj() const {
  std::vector<unsigned> k(k_.size());
  const auto& d = G_->invariants();
  for (std::size_t j = 0; j < k.size(); ++j) k[j] = (d[j] - k_[j]) % d[j];
  return Character(G_, std::move(k));
}

std::string Character::label() const {
  std::string s = "(";
  for (std::size_t j = 0; j < k_.size(); ++j) s += (j ? "," : "") + std::to_string(k_[j]);
  return s + ")";
}

unsigned Character::primLog(const FqPoly& a, long i) const {
  const long v = primByIndex_[polyMod(a, cond_).index()];
  if (v < 0) throw DomainError(a.toString() + " is not coprime to the conductor " + cond_.toString());
  const unsigned N = cycloOrder();
  return unsigned((v + mod(i, long(G_->ell())) * long(shiftLog_)) % long(N));
}

CycloNum Character::prim(const FqPoly& a, long i) const { return CycloNum::root(cycloOrder(), primLog(a, i)); }

std::vector<Character> characters(const GroupPtr& G) {
  const auto& d = G->invariants();
  std::vector<Character> out;
  std::vector<unsigned> k(d.size(), 0);
  for (std::size_t count = 0; count < G->order(); ++count) {
    out.emplace_back(G, k);
    // last coordinate varies fastest for lexicographic order
    for (std::size_t j = k.size(); j-- > 0;) {
      if (++k[j] < d[j]) break;
      k[j] = 0;
    }
  }
  return out;
}

std::vector<Character> charactersTrivialOn(const GroupPtr& G, const std::vector<std::size_t>& H) {
  std::vector<Character> out;
  for (auto& chi : characters(G))
    if (std::all_of(H.begin(), H.end(), [&](std::size_t h) { return chi.logValue(h) == 0; })) out.push_back(chi);
  return out;
}

FqPoly conductorOf(const Character& chi) {
  const GroupPtr& G = chi.group();
  for (const FqPoly& m : monicDivisors(G->modulus())) {
    bool ok = true;
    for (std::size_t u = 0; u < G->unitCount() && ok; ++u) {
      if (!polyMod(G->unit(u) - FqPoly::constant(G->field(), 1), m).isZero()) continue;
      ok = chi.logValue(G->element(u, 0)) == 0;
    }
    if (ok) return m;
  }
  return G->modulus();
}

namespace {

// Monic a with deg a < deg m and gcd(a, m) = 1.
std::vector<FqPoly> monicUnitsBelow(const FqPoly& m) {
  std::vector<FqPoly> out;
  for (int d = 0; d < m.deg(); ++d)
    for (auto& a : monicEnumerate(unsigned(d), m.field()))
      if (polyGcd(a, m).isOne()) out.push_back(a);
  return out;
}

}  // namespace

LValueData lData(const Character& chi) {
  const GroupPtr& G = chi.group();
  const unsigned N = chi.cycloOrder();
  const BigRat q(long(G->field()->q()));
  LValueData out;
  out.conductor = chi.conductor();
  if (chi.finiteTrivial()) {
    const CycloNum qw = CycloNum::root(N, chi.primLog(FqPoly::constant(G->field(), 1), 1)) * q;
    const CycloNum den = CycloNum(N, 1) - qw;
    out.L0 = den.inv();
    out.Lderiv0 = qw * out.L0 * out.L0;
  } else {
    CycloAccumulator l0(N), ld(N);
    for (const FqPoly& a : monicUnitsBelow(out.conductor)) {
      const unsigned v = chi.primLog(a, a.deg());
      l0.add(v, 1);
      ld.add(v, -a.deg());
    }
    out.L0 = l0.value();
    out.Lderiv0 = ld.value();
  }
  out.vanishing = out.L0.isZero();
  out.vanishingPredicate = !chi.isTrivial();
  for (std::size_t g : G->dInfinity())
    if (chi.logValue(g)) out.vanishingPredicate = false;
  return out;
}

CycloNum lModifiedSum(const Character& chi, const FqPoly& m) {
  if (chi.finiteTrivial()) throw DomainError("the sum form needs a nontrivial finite part");
  if (!divides(chi.conductor(), m) || !divides(m, chi.group()->modulus()))
    throw DomainError("need c_chi | m | n");
  CycloAccumulator acc(chi.cycloOrder());
  for (const FqPoly& a : monicUnitsBelow(m)) acc.add(chi.primLog(a, a.deg()), 1);
  return acc.value();
}

CycloNum lDataModified(const Character& chi, const FqPoly& m) {
  const GroupPtr& G = chi.group();
  if (!divides(chi.conductor(), m) || !divides(m, G->modulus())) throw DomainError("need c_chi | m | n");
  const unsigned N = chi.cycloOrder();
  CycloNum v = lData(chi).L0;
  for (const auto& [p, e] : factorMonic(m)) {
    (void)e;
    if (divides(p, chi.conductor())) continue;
    v = v * (CycloNum(N, 1) - chi.prim(p, p.deg()));
  }
  if (!chi.finiteTrivial() && v != lModifiedSum(chi, m))
    throw ConsistencyError("Euler-factor and sum forms of L^m(0, chi) disagree");
  return v;
}

}  // namespace ffg

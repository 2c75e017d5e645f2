#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ffgamma/gamma.hpp"
#include "ffgamma/group.hpp"

namespace ffg {

// Q-valued function on G_{n,l}, dense over element indices.
struct StFn {
  GroupPtr G;
  std::vector<BigRat> v;

  static StFn zero(const GroupPtr& G);
  static StFn constant(const GroupPtr& G, const BigRat& r);

  StFn operator+(const StFn& o) const;
  StFn operator-(const StFn& o) const;
  StFn operator*(const BigRat& r) const;
  StFn& operator+=(const StFn& o);
  bool operator==(const StFn& o) const { return v == o.v; }
  bool isZero() const;
  std::optional<BigRat> constantValue() const;
  // (f^{rho0})(rho) = f(rho rho0).
  StFn translate(std::size_t rho0) const;
  std::string toString() const;
};

// sum_{eps, c} f(rho rho_{eps,c}) does not depend on rho.
bool inS(const StFn& f);

enum class StKind { Ari, Geo, TwoVar };

// St^ari(y)(rho) = <-rho*y>_ari, St^geo(x)(rho) = <rho*x>_geo - 1/(q-1),
// St(x, y)(rho) = <rho*x, -rho*y> - <-rho*y>_ari. Throws DomainError on a
// level mismatch and ConsistencyError if the output is not in S(G).
StFn stFunction(StKind kind, const FracX& x, const BigRat& y, const GroupPtr& G);

// Exact rank over Q (fraction-free elimination after clearing denominators).
std::size_t rationalRank(const std::vector<std::vector<BigRat>>& rows);

struct RankReport {
  std::size_t rank = 0;
  BigRat expected;
  std::size_t rowCount = 0;
  std::size_t relationCount = 0;
  std::size_t relationsVanishing = 0;
  bool relationsVanish = false;
  bool matches() const { return BigRat(long(rank)) == expected && relationsVanish; }
};

// Rank of {St(x, y)} over x in (1/n)A/A, y in (1/(q^l - 1))Z/Z against
// 1 + (l - 1/(q-1)^eps_n) #(A/n)^x, and the images of the multiplication and
// reflection relation vectors.
RankReport distributionRank(const GroupPtr& G);
BigRat expectedRank(const CycGroup& G);

enum class EvaluatorBranch { NotDividing, Nontrivial, TrivialUnit, TrivialExtended };

struct EvaluatorResult {
  CycloNum lhs, rhs;
  bool equal = false;
  EvaluatorBranch branch = EvaluatorBranch::Nontrivial;
};

// lhs = sum_rho St(a/c, q^i/(1 - q^l))(rho) conj(chi(rho)) against
// c_chi !| c: 0;
// chi_f nontrivial, c_chi | c: (#(A/n)^x/#(A/c)^x) chi(a, i + deg c) L^c(0, conj chi);
// chi_f trivial, c = 1: #(A/n)^x chi(1, i) L(0, conj chi);
// chi_f trivial, c != 1: (#(A/n)^x/#(A/c)^x) chi(1, i + deg c) S_c
//   + #(A/n)^x chi(1, i) L(0, conj chi), S_c = sum conj chi(1, deg b) over
//   monic b, deg b < deg c, gcd(b, c) = 1 (only x with monic numerator
//   contribute to the two-variable bracket).
// a is any representative coprime to c; for c = 1 it is ignored.
EvaluatorResult evaluatorCheck(const Character& chi, const FqPoly& c, const FqPoly& a, unsigned i);

// Divisors c of n with the units of A/c (c = 1 contributes a = 0).
struct NcKey {
  FqPoly c, a;
  unsigned i = 0;
};

struct CsfCoefficients {
  Subfield K;
  std::vector<NcKey> keys;
  // value[coset][key]
  std::vector<std::vector<BigRat>> value;
  // St(a/c, q^i/(1 - q^l)) per key
  std::vector<StFn> st;
  // Characters of G_K not factoring through G_{K+}.
  std::vector<Character> chars;
  const BigRat& at(std::size_t coset, std::size_t key) const { return value[coset][key]; }
  std::size_t keyIndex(const FqPoly& c, const FqPoly& a, unsigned i) const;
};

// n_c(rho, a, i) = sum chi(rho) chi(a, i + deg c)/L(0, chi) over chi trivial on
// H, nontrivial on D_inf, with conductor c. Throws ConsistencyError on an
// irrational entry.
CsfCoefficients nCoefficients(const Subfield& K);

// Sums of m over the H-cosets inside each H+-coset; the common value is the
// weight. Empty if the sums differ.
std::optional<BigInt> cmWeight(const Subfield& K, const std::vector<BigInt>& m);
// m >= 0, not all zero, constant D_inf-translate sums.
bool isGeneralizedCmType(const Subfield& K, const std::vector<BigInt>& m);

struct PhiTerm {
  std::size_t key;
  BigRat coefficient;  // sum_rho m_rho n_c(rho rho0, a, i)
};

struct PhiDecomposition {
  BigRat constant;  // wt/[K:K+]
  std::vector<PhiTerm> terms;
  StFn lhs, rhs;
  bool verified = false;
};

// phi_{K, Xi^{rho0}}(rho) = m_{rho rho0^{-1}} against
// wt/[K:K+] + (1/[K:k]) sum coefficient St(a/c, q^i/(1 - q^l)). m is indexed
// by H-cosets, rho0 by a coset. Throws DomainError if m is not a
// generalized CM type.
PhiDecomposition phiDecompose(const CsfCoefficients& nc, const std::vector<BigInt>& m, std::size_t rho0);

// Explicit epsilon(x, y) for a CM type m: at x = a/c, y = q^i/(1 - q^l) it is
// sum_rho m_rho n_c(rho, a, i)/[K:k], plus (1-q) wt/[K:K+] when c = 1; zero
// elsewhere. combination = sum epsilon(x, y) St(x, y) is checked against
// phi_{K, m}(rho) = m_rho.
struct EpsilonTerm {
  FracX x;
  BigRat y, value;
};

struct EpsilonReport {
  std::vector<EpsilonTerm> terms;  // nonzero values, ordered by (x, y)
  StFn combination, phi;
  bool verified = false;
};

EpsilonReport epsilonH(const CsfCoefficients& nc, const std::vector<BigInt>& m);

// r * 1 + sum e(x, y) St(x, y) for pi~^r prod Gamma~(x, y)^e(x, y).
StFn stImage(const GammaMonomial& m, const GroupPtr& G);
// The constant r when stImage(m1) - stImage(m2) = r * 1, empty otherwise.
std::optional<BigRat> monomialEquivalent(const GammaMonomial& m1, const GammaMonomial& m2, const GroupPtr& G);

// Gamma_ari(y) = Gamma~(0, y)^(-1) for 0 < y <= 1.
GammaMonomial gammaAriMonomial(const FieldPtr& f, const BigRat& y, const BigRat& e = 1);
// Gamma(x, y) = Gamma~(x, y) for x != 0, 0 < y <= 1.
GammaMonomial gammaTwoVarMonomial(const FracX& x, const BigRat& y, const BigRat& e = 1);
// Gamma_geo(x) = Gamma~(x, 1/(1-q)) Gamma~(0, 1/(1-q))^(-1).
GammaMonomial gammaGeoMonomial(const FracX& x, const BigRat& e = 1);
GammaMonomial monomialProduct(const GammaMonomial& a, const GammaMonomial& b);

struct ClassNumberReport {
  BigRat product;  // prod L(0, chi) over chi in G_K^ \ G_{K+}^
  BigInt wK;
  BigRat h;        // product * w_K
};

ClassNumberReport relativeClassNumber(const Subfield& K);

struct LerchResult {
  CycloNum lhs, rhs;  // L'(0, chi)/ln q and the gamma-value side
  bool ok = false;
};

// L'/ln q = -L0 deg c_chi + sum chi_prim(a, i + deg c_chi)
//   (-v_inf(Gamma*(a/c_chi, 1 - q^i/(q^l - 1)))).
LerchResult lerchVerify(const Character& chi);

struct CsfReport {
  CsfCoefficients nc;
  // pi~ prod Gamma~(a/c, q^i/(1 - q^l))^(n_c(a, i)) and the quasi-period
  // monomials varpi^rho, one per coset.
  GammaMonomial periodMonomial;
  std::vector<GammaMonomial> quasiPeriods;
  BigRat periodValuation;
  std::vector<BigRat> quasiPeriodValuations;
  // Log-derivative identity in ln q units: the gamma side uses -v(pi~) from
  // the Carlitz period series, the L side q/(q-1) for zeta_A'/zeta_A.
  BigRat logDerGamma, logDerL;
  bool logDerHolds = false;
  // The k-bar^x class of the period monomial, when recognized.
  std::optional<BigRat> reduction;
  std::string reductionTarget;
};

// Requires K imaginary (DomainError otherwise).
CsfReport csfReport(const Subfield& K, long budget);

}  // namespace ffg

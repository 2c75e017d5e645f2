#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ffgamma/brackets.hpp"
#include "ffgamma/cyclo.hpp"
#include "ffgamma/poly.hpp"

namespace ffg {

// G_{n,l} = (A/n)^x x Z/lZ. Elements are indices u*l + c where u indexes the
// unit list (canonical representatives of degree < deg n, in index() order).
class CycGroup {
 public:
  static std::shared_ptr<const CycGroup> make(const FqPoly& n, unsigned ell);

  const FieldPtr& field() const { return n_.field(); }
  const FqPoly& modulus() const { return n_; }
  unsigned ell() const { return ell_; }
  std::size_t order() const { return units_.size() * ell_; }
  std::size_t unitCount() const { return units_.size(); }
  const FqPoly& unit(std::size_t u) const { return units_[u]; }

  std::size_t element(std::size_t u, long c) const;
  // rho_{alpha, c}; alpha coprime to n (any representative).
  std::size_t element(const FqPoly& alpha, long c) const;
  std::size_t unitOf(std::size_t g) const { return g / ell_; }
  unsigned shiftOf(std::size_t g) const { return unsigned(g % ell_); }
  const FqPoly& alphaOf(std::size_t g) const { return units_[unitOf(g)]; }

  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t g, std::size_t h) const;
  std::size_t inv(std::size_t g) const;
  std::size_t pow(std::size_t g, unsigned long long k) const;

  // Invariant factors d_1 | d_2 | ... with matching generators; every element
  // is prod g_j^(e_j) for a unique coordinate vector 0 <= e_j < d_j.
  const std::vector<unsigned>& invariants() const { return inv_; }
  const std::vector<std::size_t>& generators() const { return gens_; }
  const std::vector<unsigned>& coordinates(std::size_t g) const { return coords_[g]; }
  // Group exponent (1 for the trivial group).
  unsigned exponent() const { return inv_.empty() ? 1 : inv_.back(); }

  // Artin symbol of a monic a coprime to n: (a mod n, deg a mod l).
  std::size_t artin(const FqPoly& a) const;
  // rho_{eps, c} for eps in F_q^x, c in Z/l: the image of D_inf.
  std::vector<std::size_t> dInfinity() const;

  std::string elementString(std::size_t g) const;

 private:
  CycGroup(const FqPoly& n, unsigned ell);
  void decompose();

  FqPoly n_;
  unsigned ell_;
  std::vector<FqPoly> units_;
  std::vector<std::size_t> unitByIndex_;  // poly index() -> unit slot or npos
  std::vector<std::size_t> unitMul_;      // units_.size()^2 table
  std::size_t identity_ = 0;
  std::vector<unsigned> inv_;
  std::vector<std::size_t> gens_;
  std::vector<std::vector<unsigned>> coords_;
};

using GroupPtr = std::shared_ptr<const CycGroup>;

// (rho * x, rho * y) = (alpha x mod A, q^c y mod Z). Throws DomainError when x
// or y is not at the level of the group.
std::pair<FracX, BigRat> starAction(const CycGroup& G, std::size_t g, const FracX& x, const BigRat& y);
FracX starActionX(const CycGroup& G, std::size_t g, const FracX& x);
BigRat starActionY(const CycGroup& G, std::size_t g, const BigRat& y);
void checkLevel(const CycGroup& G, const FracX& x, const BigRat& y);

// All subgroups, each a sorted element list, in a deterministic order.
std::vector<std::vector<std::size_t>> allSubgroups(const CycGroup& G);

// K = fixed field of H inside K_{n,l}.
struct Subfield {
  GroupPtr G;
  std::vector<std::size_t> H, Dinf, Hplus;  // sorted
  std::vector<bool> inH, inHplus;
  // Cosets of H: cosetOf[g] and the smallest element of each coset.
  std::vector<std::size_t> cosetOf, cosetRep;
  // Cosets of H+ in the same form.
  std::vector<std::size_t> plusCosetOf, plusCosetRep;
  bool imaginary = false;          // H+ = G
  std::size_t degree = 1;          // [K:k] = [G:H]
  std::size_t cmDegree = 1;        // [K:K+] = [H+:H]
  unsigned constantDegree = 1;     // [F_K:F_q]
  BigInt wK;                       // #F_K^x / #F_q^x

  std::size_t cosetCount() const { return cosetRep.size(); }
  // Coset of the product of coset representatives.
  std::size_t cosetMul(std::size_t a, std::size_t b) const;
  std::size_t cosetInv(std::size_t a) const;
};

Subfield subfieldFromSubgroup(const GroupPtr& G, std::vector<std::size_t> H);

// Character given by exponents k_j against the invariant decomposition:
// chi(prod g_j^e_j) = zeta_N^(sum k_j e_j N/d_j), N the group exponent.
class Character {
 public:
  Character(GroupPtr G, std::vector<unsigned> k);

  const GroupPtr& group() const { return G_; }
  const std::vector<unsigned>& exponents() const { return k_; }
  unsigned cycloOrder() const { return G_->exponent(); }
  // chi(g) = zeta_N^logValue(g), 0 <= logValue < N.
  unsigned logValue(std::size_t g) const { return log_[g]; }
  CycloNum value(std::size_t g) const;
  unsigned order() const;
  bool isTrivial() const;
  // chi_f = chi restricted to (A/n)^x is trivial.
  bool finiteTrivial() const;
  Character conj() const;
  std::string label() const;

  const FqPoly& conductor() const { return cond_; }
  // chi_prim(a, i) for a coprime to the conductor, any representative.
  unsigned primLog(const FqPoly& a, long i) const;
  CycloNum prim(const FqPoly& a, long i) const;

 private:
  GroupPtr G_;
  std::vector<unsigned> k_;
  std::vector<unsigned> log_;
  FqPoly cond_;
  std::vector<long> primByIndex_;  // (a mod cond).index() -> log of chi_f, -1 if not a unit
  unsigned shiftLog_ = 0;          // log chi(1, 1)
};

// All #G characters in lexicographic exponent order.
std::vector<Character> characters(const GroupPtr& G);
// Characters trivial on every element of H (the dual of G/H).
std::vector<Character> charactersTrivialOn(const GroupPtr& G, const std::vector<std::size_t>& H);

// Smallest monic m | n such that chi_f is trivial on ker((A/n)^x -> (A/m)^x).
FqPoly conductorOf(const Character& chi);

struct LValueData {
  FqPoly conductor;
  CycloNum L0;
  CycloNum Lderiv0;  // L'(0, chi)/ln q
  bool vanishing = false;           // L0 == 0
  bool vanishingPredicate = false;  // chi nontrivial and trivial on D_inf
};

// Trivial chi_f: L0 = 1/(1 - q w), L'/ln q = q w/(1 - q w)^2, w = chi(1, 1).
// Otherwise L0 = sum chi_prim(a, deg a), L'/ln q = -sum chi_prim(a, deg a) deg a
// over monic a of degree < deg c_chi coprime to c_chi.
LValueData lData(const Character& chi);
// L^m(0, chi) = L(0, chi) prod_{p | m, p !| c_chi} (1 - chi(p, deg p)); for
// nontrivial chi_f also computed as the sum over monic a with deg a < deg m,
// gcd(a, m) = 1, and the two are required to agree.
CycloNum lDataModified(const Character& chi, const FqPoly& m);
// The sum form alone; DomainError for trivial chi_f.
CycloNum lModifiedSum(const Character& chi, const FqPoly& m);

}  // namespace ffg

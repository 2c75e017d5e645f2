#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ffgamma/poly.hpp"

namespace ffg {

// Polynomial in z with coefficients in F_q[t]. Stored densely by z-degree;
// terms() gives the sparse view (i, j) -> coefficient of t^i z^j.
class BivarPoly {
 public:
  BivarPoly() = default;
  explicit BivarPoly(FieldPtr f) : f_(std::move(f)) {}
  BivarPoly(FieldPtr f, std::vector<FqPoly> zcoeffs);

  static BivarPoly z(const FieldPtr& f);
  static BivarPoly constant(const FqPoly& c);

  const FieldPtr& field() const { return f_; }
  const std::vector<FqPoly>& zcoeffs() const { return z_; }
  int degZ() const { return int(z_.size()) - 1; }
  bool isZero() const { return z_.empty(); }
  FqPoly zcoeff(int j) const { return j >= 0 && j < int(z_.size()) ? z_[j] : FqPoly(f_); }
  Fe coefficient(int i, int j) const { return zcoeff(j).coeff(i); }
  std::map<std::pair<int, int>, Fe> terms() const;

  BivarPoly operator+(const BivarPoly& o) const;
  BivarPoly operator-(const BivarPoly& o) const;
  BivarPoly operator*(const BivarPoly& o) const;
  bool operator==(const BivarPoly& o) const { return z_ == o.z_; }
  bool operator!=(const BivarPoly& o) const { return z_ != o.z_; }

  // Substitute z := g (Horner).
  BivarPoly compose(const BivarPoly& g) const;

  std::string toString() const;

 private:
  void trim();
  FieldPtr f_;
  std::vector<FqPoly> z_;
};

// Division in z by a divisor whose leading z-coefficient is 1.
std::pair<BivarPoly, BivarPoly> bivarDivRemMonic(const BivarPoly& f, const BivarPoly& g);

}  // namespace ffg

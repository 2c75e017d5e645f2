#include "ffgamma/bivar.hpp"

#include "ffgamma/error.hpp"

namespace ffg {

BivarPoly::BivarPoly(FieldPtr f, std::vector<FqPoly> zcoeffs) : f_(std::move(f)), z_(std::move(zcoeffs)) {
  trim();
}

void BivarPoly::trim() {
  while (!z_.empty() && z_.back().isZero()) z_.pop_back();
}

BivarPoly BivarPoly::z(const FieldPtr& f) { return BivarPoly(f, {FqPoly(f), FqPoly::constant(f, 1)}); }

BivarPoly BivarPoly::constant(const FqPoly& c) { return BivarPoly(c.field(), {c}); }

std::map<std::pair<int, int>, Fe> BivarPoly::terms() const {
  std::map<std::pair<int, int>, Fe> out;
  for (std::size_t j = 0; j < z_.size(); ++j)
    for (std::size_t i = 0; i < z_[j].coeffs().size(); ++i)
      if (z_[j].coeffs()[i]) out[{int(i), int(j)}] = z_[j].coeffs()[i];
  return out;
}

BivarPoly BivarPoly::operator+(const BivarPoly& o) const {
  const FieldPtr& f = f_ ? f_ : o.f_;
  std::vector<FqPoly> r(std::max(z_.size(), o.z_.size()), FqPoly(f));
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = zcoeff(int(j)) + o.zcoeff(int(j));
  return BivarPoly(f, std::move(r));
}

BivarPoly BivarPoly::operator-(const BivarPoly& o) const {
  const FieldPtr& f = f_ ? f_ : o.f_;
  std::vector<FqPoly> r(std::max(z_.size(), o.z_.size()), FqPoly(f));
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = zcoeff(int(j)) - o.zcoeff(int(j));
  return BivarPoly(f, std::move(r));
}

BivarPoly BivarPoly::operator*(const BivarPoly& o) const {
  const FieldPtr& f = f_ ? f_ : o.f_;
  if (z_.empty() || o.z_.empty()) return BivarPoly(f);
  std::vector<FqPoly> r(z_.size() + o.z_.size() - 1, FqPoly(f));
  for (std::size_t i = 0; i < z_.size(); ++i) {
    if (z_[i].isZero()) continue;
    for (std::size_t j = 0; j < o.z_.size(); ++j)
      if (!o.z_[j].isZero()) r[i + j] = r[i + j] + z_[i] * o.z_[j];
  }
  return BivarPoly(f, std::move(r));
}

BivarPoly BivarPoly::compose(const BivarPoly& g) const {
  BivarPoly acc(f_);
  for (std::size_t j = z_.size(); j-- > 0;) acc = acc * g + constant(z_[j]);
  return acc;
}

std::string BivarPoly::toString() const {
  if (z_.empty()) return "0";
  std::string s;
  for (std::size_t j = z_.size(); j-- > 0;) {
    if (z_[j].isZero()) continue;
    if (!s.empty()) s += " + ";
    const std::string c = z_[j].toString("t");
    const bool bare = j > 0 && z_[j].isOne();
    const bool compound = c.find('+') != std::string::npos;
    if (!bare) s += compound && j > 0 ? "(" + c + ")" : c;
    if (j > 0) {
      if (!bare) s += "*";
      s += "z";
      if (j > 1) s += "^" + std::to_string(j);
    }
  }
  return s;
}

std::pair<BivarPoly, BivarPoly> bivarDivRemMonic(const BivarPoly& f, const BivarPoly& g) {
  if (g.isZero() || !g.zcoeffs().back().isOne())
    throw DomainError("bivariate division requires a divisor monic in z");
  const FieldPtr& F = g.field();
  std::vector<FqPoly> r = f.zcoeffs();
  const int dg = g.degZ();
  if (int(r.size()) - 1 < dg) return {BivarPoly(F), f};
  std::vector<FqPoly> qt(r.size() - dg, FqPoly(F));
  for (int k = int(r.size()) - 1; k >= dg; --k) {
    if (r[k].isZero()) continue;
    const FqPoly c = r[k];
    qt[k - dg] = c;
    for (int j = 0; j <= dg; ++j) r[k - dg + j] = r[k - dg + j] - c * g.zcoeffs()[j];
  }
  return {BivarPoly(F, std::move(qt)), BivarPoly(F, std::move(r))};
}

}  // namespace ffg

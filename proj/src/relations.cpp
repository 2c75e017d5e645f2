#include "ffgamma/relations.hpp"

#include <random>

namespace ffg {

namespace {

BigInt qpow(unsigned q, unsigned k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, k);
  return r;
}

struct Sampler {
  std::mt19937 rng;
  const FieldPtr& f;

  unsigned uniform(unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng); }

  FqPoly poly(unsigned d) {
    auto all = polysBelow(d, f);
    return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
  }

  FqPoly monic(unsigned d) {
    auto all = monicEnumerate(d, f);
    return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
  }

  FracX x(unsigned maxDeg) {
    const unsigned d = uniform(0, maxDeg);
    return FracX(poly(d), monic(d));
  }

  BigRat y() {
    // denominators q^l - 1 and a few others prime to p
    const unsigned q = f->q(), p = f->p();
    static const long extra[] = {2, 3, 4, 5, 7, 9, 11, 13, 16, 25};
    long d;
    if (uniform(0, 1)) {
      d = long(qpow(q, uniform(1, 4)).get_si()) - 1;
    } else {
      do d = extra[uniform(0, unsigned(std::size(extra)) - 1)];
      while (d % long(p) == 0);
    }
    if (d < 1) d = 1;
    const long k = long(uniform(0, unsigned(6 * d))) - 3 * d;
    return rat(k, d);
  }
};

}  // namespace

std::vector<RelationCheck> bracketRelationSuite(const FieldPtr& f, unsigned instances, unsigned seed,
                                                unsigned maxDeg) {
  std::vector<RelationCheck> out;
  Sampler s{std::mt19937(seed), f};
  const unsigned q = f->q(), p = f->p();
  for (unsigned it = 0; it < instances; ++it) {
    const FracX x = s.x(maxDeg);
    const BigRat y = s.y();
    const unsigned dn = s.uniform(1, maxDeg);
    const FqPoly n = s.monic(dn);
    const BigInt absn = qpow(q, dn);
    const std::string inst = "q=" + std::to_string(q) + " x=" + x.toString() + " y=" + ratToString(y) + " n=" + n.toString();
    auto add = [&](const char* name, bool ok) { out.push_back({name, inst, ok}); };

    const DigitExpansion d = qDigits(y, q, p);
    const BigInt qell = qpow(q, d.ell);
    // <y> and <x, y> are linear in the digits
    {
      BigRat lin = 0, lin2 = 0;
      for (unsigned i = 0; i < d.ell; ++i) {
        const BigRat basis = BigRat(qpow(q, i)) / BigRat(qell - 1);
        lin += BigRat(d.digits[i]) * ariBracket(basis);
        lin2 += BigRat(d.digits[i]) * twoVarBracket(x, basis);
      }
      lin.canonicalize();
      lin2.canonicalize();
      add("ari digit linearity", lin == ariBracket(y));
      add("two-variable digit linearity", lin2 == twoVarBracket(x, y));
    }
    // sum over the Frobenius orbit of y
    {
      BigRat orbit = 0;
      for (unsigned i = 0; i < d.ell; ++i) orbit += ariBracket(y * BigRat(qpow(q, i)));
      add("ari reflection", orbit == BigRat(d.ell) * wt0Ari(y, q, p) / (q - 1));
    }
    // geometric reflection and multiplication
    {
      int gs = 0;
      for (Fe e = 1; e < q; ++e) gs += geoBracket(x.scale(e));
      add("geo reflection", gs == (x.isZero() ? 0 : 1));
      int glhs = 0;
      for (auto& a : polysBelow(dn, f)) glhs += geoBracket(x + FracX(a, n));
      add("geo multiplication", BigRat(glhs) == geoBracket(x.mul(n)) + BigRat(absn - 1) / BigRat(q - 1));
    }
    // eps-reflection on a basis value q^i/(q^l - 1), q^l > 2
    {
      unsigned l;
      do l = s.uniform(1, 3);
      while (qpow(q, l) <= 2);
      const unsigned i = s.uniform(0, l - 1);
      const BigRat basis = BigRat(qpow(q, i)) / BigRat(qpow(q, l) - 1);
      BigRat sum = 0;
      for (Fe e = 1; e < q; ++e) sum += twoVarBracket(x.scale(e), basis);
      const long ord = x.ordInf();
      const bool hit = !x.isZero() && ((ord + long(i)) % long(l) + long(l)) % long(l) == 0;
      add("two-variable basis reflection", sum == (hit ? 1 : 0));
    }
    // reflection in y
    {
      const BigRat refl = twoVarBracket(x, y) + twoVarBracket(x, -y);
      add("two-variable y reflection", refl == (isInteger(y) ? BigRat(0) : BigRat((q - 1) * geoBracket(x))));
    }
    // full reflection: l * wt_0(x, y)
    {
      BigRat sum = 0;
      for (unsigned i = 0; i < d.ell; ++i)
        for (Fe e = 1; e < q; ++e) sum += twoVarBracket(x.scale(e), y * BigRat(qpow(q, i)));
      add("two-variable full reflection", sum == BigRat(d.ell) * weights(x, y).wt0);
    }
    // multiplication, both forms; the difference form is taken at x n so
    // that (x n + a)/n = x + a/n
    {
      const BigRat ny = y * BigRat(absn);
      BigRat lhs = 0, shifted = 0;
      const FracX xn = x.mul(n);
      for (auto& a : polysBelow(dn, f)) {
        const FracX an(a, n);
        lhs += twoVarBracket(x + an, y);
        shifted += twoVarBracket(x + an, y) - twoVarBracket(an, y);
      }
      add("two-variable multiplication", lhs == twoVarBracket(xn, ny) - ariBracket(ny) + BigRat(absn) * ariBracket(y));
      add("two-variable multiplication (difference form)", shifted == twoVarBracket(xn, ny));
    }
  }
  return out;
}

}  // namespace ffg

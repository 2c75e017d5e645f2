#include "ffgamma/cli.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ffgamma/carlitz.hpp"
#include "ffgamma/error.hpp"
#include "ffgamma/relations.hpp"
#include "ffgamma/stickelberger.hpp"

namespace ffg::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kMaxDegN = 3;
constexpr unsigned kMaxEll = 4;
constexpr std::size_t kMaxGroup = 10000;
constexpr long kMinBudget = 8;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  unsigned p = 3, e = 1;
  std::vector<unsigned> modulus;
  std::string n = "1";
  unsigned ell = 1;
  long prec = 20;
  bool json = false;
};

struct Params {
  std::string x = "0", y, kind, subfield = "full", suite;
  std::vector<std::string> fixed;
  unsigned instances = 100, seed = 1;
};

struct Ctx {
  Config cfg;
  Params par;
  FieldPtr f;
  FqPoly n;
  GroupPtr G;
};

struct Report {
  Json j;
  bool verifier = false;
  bool ok = true;
};

std::string cycloText(const CycloNum& c) {
  if (auto r = c.isRational()) return ratToString(*r);
  return c.toString() + " in Q(zeta_" + std::to_string(c.order()) + ")";
}

Json jrat(const BigRat& r) { return ratToString(r); }

Json jcyclo(const CycloNum& c) {
  Json o;
  o["order"] = c.order();
  Json co = Json::array();
  for (auto& r : c.coeffs()) co.push_back(ratToString(r));
  o["coeffs"] = co;
  o["text"] = cycloText(c);
  return o;
}

Json jseries(const LaurentSeries& s) {
  Json o;
  o["ram"] = s.ram();
  o["v0"] = s.v0();
  o["coeffs"] = s.coeffs();
  o["prec"] = s.exact() ? Json("exact") : Json(s.prec());
  o["text"] = s.toString();
  return o;
}

Json header(const Ctx& c, const std::string& command) {
  Json j;
  j["schema"] = "schema/v1";
  j["command"] = command;
  j["q"] = c.f->q();
  return j;
}

void addLevel(Json& j, const Ctx& c) {
  j["n"] = c.n.toString();
  j["ell"] = c.cfg.ell;
  j["group_order"] = c.G->order();
}

void summary(Json& j, const Json& instances) {
  std::size_t pass = 0;
  for (auto& i : instances)
    if (i["ok"].get<bool>()) ++pass;
  j["instances"] = instances;
  j["passed"] = pass;
  j["failed"] = instances.size() - pass;
  j["ok"] = pass == instances.size();
}

std::string scalarText(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_object() && v.contains("text")) return v["text"].get<std::string>();
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + scalarText(v[k]);
    return s + "]";
  }
  if (v.is_null()) return "-";
  return v.dump();
}

void renderTable(const Json& rows, const std::string& indent, std::ostream& out) {
  std::vector<std::string> cols;
  for (auto& [k, v] : rows[0].items()) cols.push_back(k);
  std::vector<std::size_t> w(cols.size());
  std::vector<std::vector<std::string>> cells;
  for (std::size_t c = 0; c < cols.size(); ++c) w[c] = cols[c].size();
  for (auto& r : rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      line.push_back(r.contains(cols[c]) ? scalarText(r[cols[c]]) : "-");
      w[c] = std::max(w[c], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    std::string s = indent + "  ";
    for (std::size_t c = 0; c < line.size(); ++c) {
      s += line[c];
      if (c + 1 < line.size()) s += std::string(w[c] - line[c].size() + 2, ' ');
    }
    out << s << "\n";
  };
  emit(cols);
  for (auto& line : cells) emit(line);
}

void renderText(const Json& j, const std::string& indent, std::ostream& out) {
  for (auto& [k, v] : j.items()) {
    if (k == "schema") continue;
    if (v.is_array() && !v.empty() && v[0].is_object() && !v[0].contains("text")) {
      out << indent << k << ":\n";
      renderTable(v, indent, out);
    } else if (v.is_object() && !v.contains("text")) {
      out << indent << k << ":\n";
      renderText(v, indent + "  ", out);
    } else {
      out << indent << k << ": " << scalarText(v) << "\n";
    }
  }
}

FracX parseX(const Ctx& c) {
  try {
    return parseFracX(c.par.x, c.f);
  } catch (const DomainError& e) {
    throw UsageError("--x: " + std::string(e.what()));
  }
}

BigRat parseY(const std::string& s) {
  try {
    return parseRat(s);
  } catch (const DomainError& e) {
    throw UsageError("--y: " + std::string(e.what()));
  }
}

std::vector<std::size_t> closure(const CycGroup& G, const std::vector<std::size_t>& gens) {
  std::vector<bool> in(G.order(), false);
  std::vector<std::size_t> out{G.identity()};
  in[G.identity()] = true;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (std::size_t g : gens) {
      const std::size_t h = G.mul(out[k], g);
      if (!in[h]) {
        in[h] = true;
        out.push_back(h);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

// H for --subfield full|constant|carlitz, extended by the --fixed generators
// "alpha:c".
Subfield selectSubfield(const Ctx& c) {
  const CycGroup& G = *c.G;
  std::vector<std::size_t> gens;
  const FqPoly one = FqPoly::constant(c.f, 1);
  if (c.par.subfield == "constant") {
    for (std::size_t u = 0; u < G.unitCount(); ++u) gens.push_back(G.element(u, 0));
  } else if (c.par.subfield == "carlitz") {
    gens.push_back(G.element(one, 1));
  } else if (c.par.subfield != "full") {
    throw UsageError("--subfield must be full, constant or carlitz");
  }
  for (auto& s : c.par.fixed) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw UsageError("--fixed expects alpha:c, got \"" + s + "\"");
    try {
      const FqPoly alpha = parsePoly(s.substr(0, colon), c.f);
      gens.push_back(G.element(alpha, std::stol(s.substr(colon + 1))));
    } catch (const DomainError& e) {
      throw UsageError("--fixed: " + std::string(e.what()));
    } catch (const std::logic_error&) {
      throw UsageError("--fixed: bad shift in \"" + s + "\"");
    }
  }
  return subfieldFromSubgroup(c.G, closure(G, gens));
}

Json subfieldJson(const Subfield& K) {
  Json j;
  Json h = Json::array();
  for (std::size_t g : K.H) h.push_back(K.G->elementString(g));
  j["H"] = h;
  j["degree"] = K.degree;
  j["cm_degree"] = K.cmDegree;
  j["constant_degree"] = K.constantDegree;
  j["imaginary"] = K.imaginary;
  return j;
}

std::vector<FqPoly> unitsMod(const FqPoly& c) {
  if (c.deg() == 0) return {FqPoly(c.field())};
  std::vector<FqPoly> out;
  for (auto& a : polysBelow(unsigned(c.deg()), c.field()))
    if (!a.isZero() && polyGcd(a, c).isOne()) out.push_back(a);
  return out;
}

Report cmdGamma(const Ctx& c) {
  Report r;
  const FracX x = parseX(c);
  if (c.par.y.empty()) throw UsageError("gamma needs --y");
  const BigRat y = parseY(c.par.y);
  const std::string kind = c.par.kind.empty() ? "tilde" : c.par.kind;
  r.j = header(c, "gamma");
  r.j["x"] = x.toString();
  r.j["y"] = jrat(y);
  r.j["kind"] = kind;
  r.j["budget"] = c.cfg.prec;
  const long P = c.cfg.prec;
  const bool needsX = kind == "twovar" || kind == "geo";
  if (needsX && x.isZero()) throw UsageError("pole: Gamma" + std::string(kind == "geo" ? "_geo(x)" : "(x, y)") +
                                             " has a pole at x = 0");
  LaurentSeries s;
  std::optional<BigRat> closed, star;
  try {
    if (kind == "tilde") {
      s = gammaTilde(x, y, P);
      closed = BigRat(gammaTildeValuation(x));
      star = gammaStarValuation(x, y);
    } else if (kind == "twovar") {
      s = gammaTwoVar(x, y, P);
      closed = BigRat(-x.ordInf());
      star = gammaStarValuation(x, y);
    } else if (kind == "ari") {
      s = gammaAri(c.f, y, P);
      closed = BigRat(0);
      star = gammaStarAriValuation(c.f, y);
    } else if (kind == "geo") {
      s = gammaGeo(x, P);
      closed = BigRat(-x.ordInf());
    } else {
      throw UsageError("--kind must be tilde, twovar, ari or geo");
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  r.j["series"] = jseries(s);
  const BigRat v = s.normalizedValuation();
  r.j["valuation"] = jrat(v);
  r.j["closed_form_valuation"] = jrat(*closed);
  if (star) r.j["gamma_star_valuation"] = jrat(*star);
  r.j["is_one"] = s == LaurentSeries::one(c.f, 1).truncate(s.prec());
  r.verifier = true;
  r.ok = v == *closed;
  r.j["ok"] = r.ok;
  return r;
}

Report cmdBracket(const Ctx& c) {
  Report r;
  const FracX x = parseX(c);
  if (c.par.y.empty()) throw UsageError("bracket needs --y");
  const BigRat y = parseY(c.par.y);
  const unsigned q = c.f->q(), p = c.f->p();
  try {
    checkPAdic(y, p);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  r.j = header(c, "bracket");
  r.j["x"] = x.toString();
  r.j["y"] = jrat(y);
  r.j["ari"] = jrat(ariBracket(y));
  r.j["geo"] = geoBracket(x);
  const BigRat closed = twoVarBracket(x, y), digits = twoVarBracketDigitSum(x, y);
  r.j["two_variable"] = jrat(closed);
  r.j["two_variable_digit_sum"] = jrat(digits);
  const DigitExpansion d = qDigits(y, q, p);
  r.j["ell"] = d.ell;
  r.j["digits"] = d.digits;
  const Weights w = weights(x, y);
  r.j["wt0"] = jrat(w.wt0);
  r.j["wt"] = jrat(w.wt);
  r.j["partial_y"] = jrat(partial(y, q, p));
  r.j["partial_xy"] = jrat(partialTwoVar(x, y));
  r.verifier = true;
  r.ok = closed == digits;
  r.j["ok"] = r.ok;
  return r;
}

Report cmdLtable(const Ctx& c) {
  Report r;
  r.j = header(c, "ltable");
  addLevel(r.j, c);
  Json rows = Json::array();
  for (auto& chi : characters(c.G)) {
    const LValueData d = lData(chi);
    Json row;
    row["chi"] = chi.label();
    row["order"] = chi.order();
    row["conductor"] = d.conductor.toString();
    row["L0"] = jcyclo(d.L0);
    row["Lderiv0"] = jcyclo(d.Lderiv0);
    row["vanishing"] = d.vanishing;
    row["predicate"] = d.vanishingPredicate;
    rows.push_back(row);
  }
  r.j["rows"] = rows;
  return r;
}

Report cmdNc(const Ctx& c) {
  Report r;
  const Subfield K = selectSubfield(c);
  const CsfCoefficients nc = nCoefficients(K);
  r.j = header(c, "nc");
  addLevel(r.j, c);
  r.j["subfield"] = subfieldJson(K);
  r.j["characters"] = nc.chars.size();
  Json rows = Json::array();
  for (std::size_t k = 0; k < K.cosetCount(); ++k)
    for (std::size_t key = 0; key < nc.keys.size(); ++key) {
      Json row;
      row["rho"] = K.G->elementString(K.cosetRep[k]);
      row["c"] = nc.keys[key].c.toString();
      row["a"] = nc.keys[key].a.toString();
      row["i"] = nc.keys[key].i;
      row["value"] = jrat(nc.at(k, key));
      rows.push_back(row);
    }
  r.j["rows"] = rows;
  return r;
}

Report cmdSt(const Ctx& c) {
  Report r;
  const bool hasY = !c.par.y.empty();
  const FracX x = parseX(c);
  const BigRat y = hasY ? parseY(c.par.y) : BigRat(0);
  std::string kind = c.par.kind;
  if (kind.empty()) kind = hasY ? (x.isZero() ? "ari" : "twovar") : "geo";
  StKind k;
  if (kind == "ari") k = StKind::Ari;
  else if (kind == "geo") k = StKind::Geo;
  else if (kind == "twovar") k = StKind::TwoVar;
  else throw UsageError("--kind must be ari, geo or twovar");
  StFn st;
  try {
    st = stFunction(k, x, y, c.G);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  r.j = header(c, "st");
  addLevel(r.j, c);
  r.j["kind"] = kind;
  if (k != StKind::Ari) r.j["x"] = x.toString();
  if (k != StKind::Geo) r.j["y"] = jrat(y);
  Json rows = Json::array();
  for (std::size_t g = 0; g < c.G->order(); ++g) {
    Json row;
    row["rho"] = c.G->elementString(g);
    row["value"] = jrat(st.v[g]);
    rows.push_back(row);
  }
  r.j["rows"] = rows;
  r.j["in_S"] = inS(st);
  return r;
}

Report cmdRank(const Ctx& c) {
  Report r;
  const RankReport rr = distributionRank(c.G);
  r.j = header(c, "rank");
  addLevel(r.j, c);
  r.j["rank"] = rr.rank;
  r.j["expected"] = jrat(rr.expected);
  r.j["rows"] = rr.rowCount;
  r.j["relations"] = rr.relationCount;
  r.j["relations_vanishing"] = rr.relationsVanishing;
  r.verifier = true;
  r.ok = rr.matches();
  r.j["ok"] = r.ok;
  return r;
}

const char* branchName(EvaluatorBranch b) {
  switch (b) {
    case EvaluatorBranch::NotDividing: return "conductor-not-dividing";
    case EvaluatorBranch::Nontrivial: return "nontrivial";
    case EvaluatorBranch::TrivialUnit: return "trivial-c=1";
    case EvaluatorBranch::TrivialExtended: return "trivial-c!=1";
  }
  return "";
}

Report cmdEvaluator(const Ctx& c) {
  Report r;
  r.j = header(c, "evaluator");
  addLevel(r.j, c);
  Json inst = Json::array();
  for (auto& chi : characters(c.G))
    for (auto& cc : monicDivisors(c.n))
      for (auto& a : unitsMod(cc))
        for (unsigned i = 0; i < c.cfg.ell; ++i) {
          const EvaluatorResult e = evaluatorCheck(chi, cc, a, i);
          Json row;
          row["chi"] = chi.label();
          row["c"] = cc.toString();
          row["a"] = a.toString();
          row["i"] = i;
          row["branch"] = branchName(e.branch);
          row["lhs"] = jcyclo(e.lhs);
          row["rhs"] = jcyclo(e.rhs);
          row["ok"] = e.equal;
          inst.push_back(row);
        }
  summary(r.j, inst);
  r.verifier = true;
  r.ok = r.j["ok"].get<bool>();
  return r;
}

Report cmdLerch(const Ctx& c) {
  Report r;
  r.j = header(c, "lerch");
  addLevel(r.j, c);
  Json inst = Json::array();
  for (auto& chi : characters(c.G)) {
    const LerchResult l = lerchVerify(chi);
    Json row;
    row["chi"] = chi.label();
    row["conductor"] = chi.conductor().toString();
    row["lhs"] = jcyclo(l.lhs);
    row["rhs"] = jcyclo(l.rhs);
    row["ok"] = l.ok;
    inst.push_back(row);
  }
  summary(r.j, inst);
  r.verifier = true;
  r.ok = r.j["ok"].get<bool>();
  return r;
}

Json csfJson(const Subfield& K, long budget, bool& ok) {
  const CsfReport rep = csfReport(K, budget);
  const ClassNumberReport h = relativeClassNumber(K);
  Json j = subfieldJson(K);
  j["keys"] = rep.nc.keys.size();
  j["period_monomial"] = rep.periodMonomial.toString();
  j["period_valuation"] = jrat(rep.periodValuation);
  Json qv = Json::array();
  for (auto& v : rep.quasiPeriodValuations) qv.push_back(jrat(v));
  j["quasi_period_valuations"] = qv;
  j["log_der_gamma"] = jrat(rep.logDerGamma);
  j["log_der_L"] = jrat(rep.logDerL);
  j["log_der_holds"] = rep.logDerHolds;
  j["reduction_target"] = rep.reductionTarget.empty() ? Json(nullptr) : Json(rep.reductionTarget);
  j["reduction"] = rep.reduction ? jrat(*rep.reduction) : Json(nullptr);
  j["L_product"] = jrat(h.product);
  j["w_K"] = h.wK.get_str();
  j["relative_class_number"] = jrat(h.h);
  ok = rep.logDerHolds && (!rep.reduction || *rep.reduction == 0);
  j["ok"] = ok;
  return j;
}

Report cmdCsf(const Ctx& c) {
  Report r;
  const Subfield K = selectSubfield(c);
  if (!K.imaginary) throw UsageError("csf needs an imaginary subfield (the infinite place must not split)");
  r.j = header(c, "csf");
  addLevel(r.j, c);
  r.j["budget"] = c.cfg.prec;
  bool ok = false;
  r.j["field"] = csfJson(K, c.cfg.prec, ok);
  r.verifier = true;
  r.ok = ok;
  r.j["ok"] = ok;
  return r;
}

Report verifyCsf(const Ctx& c) {
  Report r;
  r.j = header(c, "verify");
  r.j["suite"] = "csf";
  addLevel(r.j, c);
  r.j["budget"] = c.cfg.prec;
  Json inst = Json::array();
  for (auto& H : allSubgroups(*c.G)) {
    const Subfield K = subfieldFromSubgroup(c.G, H);
    std::string hs;
    for (std::size_t g : K.H) hs += (hs.empty() ? "" : " ") + K.G->elementString(g);
    if (K.imaginary) {
      bool ok = false;
      const Json j = csfJson(K, c.cfg.prec, ok);
      Json row;
      row["H"] = hs;
      row["check"] = "log-derivative and reduction";
      row["detail"] = "logDer " + j["log_der_gamma"].get<std::string>() + " = " + j["log_der_L"].get<std::string>() +
                      (j["reduction"].is_null() ? "" : ", reduction " + j["reduction"].get<std::string>());
      row["ok"] = ok;
      inst.push_back(row);
    }
    if (K.Hplus.size() == K.H.size()) continue;
    // two generalized CM types: all ones, and one H-coset per H+-coset
    const CsfCoefficients nc = nCoefficients(K);
    std::vector<BigInt> ones(K.cosetCount(), BigInt(1)), first(K.cosetCount(), BigInt(0));
    std::vector<bool> seen(K.plusCosetRep.size(), false);
    for (std::size_t k = 0; k < K.cosetCount(); ++k) {
      const std::size_t P = K.plusCosetOf[K.cosetRep[k]];
      if (!seen[P]) {
        seen[P] = true;
        first[k] = 1;
      }
    }
    int t = 0;
    for (auto* m : {&ones, &first}) {
      for (std::size_t rho0 = 0; rho0 < K.cosetCount(); ++rho0) {
        const PhiDecomposition d = phiDecompose(nc, *m, rho0);
        Json row;
        row["H"] = hs;
        row["check"] = "phi decomposition";
        row["detail"] = std::string(t == 0 ? "m = 1" : "m = first coset") + ", rho0 = " +
                        K.G->elementString(K.cosetRep[rho0]);
        row["ok"] = d.verified;
        inst.push_back(row);
      }
      ++t;
    }
  }
  summary(r.j, inst);
  r.verifier = true;
  r.ok = r.j["ok"].get<bool>();
  return r;
}

Report cmdCarlitz(const Ctx& c) {
  Report r;
  const long budget = c.cfg.prec;
  const unsigned q = c.f->q();
  const long R = long(q) - 1;
  CarlitzContext C(c.f);
  r.j = header(c, "carlitz");
  r.j["n"] = c.n.toString();
  r.j["budget"] = budget;
  Json inst = Json::array();
  auto add = [&](const std::string& check, const std::string& m, const std::string& detail, bool ok) {
    Json row;
    row["check"] = check;
    row["m"] = m;
    row["detail"] = detail;
    row["ok"] = ok;
    inst.push_back(row);
  };
  BivarPoly prod = BivarPoly::constant(FqPoly::constant(c.f, 1));
  for (auto& m : monicDivisors(c.n)) {
    const BivarPoly cm = C.cyclotomicPoly(m);
    prod = prod * cm;
    add("deg_z C*_m = #(A/m)^x", m.toString(), std::to_string(cm.degZ()) + " = " + std::to_string(eulerPhi(m)),
        cm.degZ() == int(eulerPhi(m)));
    if (m.deg() < 1) continue;
    const LaurentSeries lam = C.lambda(m, budget);
    const LaurentSeries val = C.evaluate(cm, C.theta(unsigned(R)), lam);
    const BigRat got(val.valuationBound(), R), need = BigRat(budget, R) - 2;
    add("v(C*_m(theta, lambda_m)) >= budget/(q-1) - 2", m.toString(),
        ratToString(got) + " >= " + ratToString(need), val.isZero() && got >= need);
  }
  add("prod C*_m = C_n", c.n.toString(), "z-degree " + std::to_string(prod.degZ()), prod == C.divisionPoly(c.n));
  const BigRat vpi = C.period(budget).normalizedValuation();
  add("v(pi~) = -q/(q-1)", "-", ratToString(vpi), vpi == BigRat(-long(q), R));
  // exp(theta z) = theta exp(z) + exp(z)^q on fixed test points
  for (long v : {1L, 2L}) {
    std::vector<Fe> co(std::size_t(2 * budget), 0);
    for (std::size_t k = 0; k < co.size(); k += 3) co[k] = Fe(1 + k % (q - 1));
    const LaurentSeries z(c.f, 1, v, co, v + 2 * budget);
    const LaurentSeries th = C.theta(1);
    const LaurentSeries lhs = C.exp(th * z, budget + 10);
    const LaurentSeries ez = C.exp(z, budget + 10);
    const LaurentSeries rhs = th * ez + ez.frobenius(1);
    add("exp functional equation", "-", "z of valuation " + std::to_string(v),
        lhs.agreesWith(rhs) && std::min(lhs.prec(), rhs.prec()) >= budget);
  }
  summary(r.j, inst);
  r.verifier = true;
  r.ok = r.j["ok"].get<bool>();
  return r;
}

Report verifyBrackets(const Ctx& c) {
  Report r;
  r.j = header(c, "verify");
  r.j["suite"] = "brackets";
  r.j["seed"] = c.par.seed;
  Json inst = Json::array();
  for (auto& chk : bracketRelationSuite(c.f, c.par.instances, c.par.seed)) {
    Json row;
    row["relation"] = chk.relation;
    row["instance"] = chk.instance;
    row["ok"] = chk.holds;
    inst.push_back(row);
  }
  summary(r.j, inst);
  r.verifier = true;
  r.ok = r.j["ok"].get<bool>();
  return r;
}

Report cmdVerify(const Ctx& c) {
  const std::string& s = c.par.suite;
  Report r;
  if (s == "brackets") return verifyBrackets(c);
  if (s == "csf") return verifyCsf(c);
  if (s == "evaluator") r = cmdEvaluator(c);
  else if (s == "rank") r = cmdRank(c);
  else if (s == "lerch") r = cmdLerch(c);
  else if (s == "carlitz") r = cmdCarlitz(c);
  else throw UsageError("unknown suite \"" + s + "\"");
  Json j = header(c, "verify");
  j["suite"] = s;
  for (auto& [k, v] : r.j.items())
    if (!j.contains(k)) j[k] = v;
  r.j = j;
  return r;
}

void setup(Ctx& c, bool needGroup) {
  if (c.cfg.e > 1 && c.cfg.modulus.empty())
    throw UsageError("--e > 1 needs --modulus (coefficients low degree first, e.g. from a --config file)");
  if (c.cfg.prec < kMinBudget) throw UsageError("--prec must be at least " + std::to_string(kMinBudget));
  try {
    c.f = Field::make(c.cfg.p, c.cfg.e, c.cfg.modulus);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  try {
    c.n = parsePoly(c.cfg.n, c.f);
  } catch (const DomainError& e) {
    throw UsageError("--n: " + std::string(e.what()));
  }
  if (!c.n.isMonic()) throw UsageError("--n must be a monic polynomial");
  if (c.n.deg() > kMaxDegN) throw UsageError("guard: deg n <= " + std::to_string(kMaxDegN));
  if (c.cfg.ell < 1 || c.cfg.ell > kMaxEll) throw UsageError("guard: 1 <= ell <= " + std::to_string(kMaxEll));
  if (!needGroup) return;
  const std::size_t order = eulerPhi(c.n) * c.cfg.ell;
  if (order > kMaxGroup) throw UsageError("guard: #G = " + std::to_string(order) + " exceeds " + std::to_string(kMaxGroup));
  c.G = CycGroup::make(c.n, c.cfg.ell);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Ctx c;
  CLI::App app{"Gamma values, diamond brackets and Stickelberger distributions over F_q[t]", "ffgamma"};
  app.set_config("--config", "", "TOML file with option values (e.g. e and modulus)");
  app.add_option("--p", c.cfg.p, "characteristic")->capture_default_str();
  app.add_option("--e", c.cfg.e, "q = p^e")->capture_default_str();
  app.add_option("--modulus", c.cfg.modulus, "modulus of F_q over F_p, low degree first")->delimiter(',');
  app.add_option("--n", c.cfg.n, "conductor n (monic)")->capture_default_str();
  app.add_option("--ell", c.cfg.ell, "constant field degree l")->capture_default_str();
  app.add_option("--prec", c.cfg.prec, "precision budget")->capture_default_str();
  app.add_flag("--json", c.cfg.json, "emit JSON (schema/v1)");
  app.require_subcommand(1);
  app.fallthrough();

  Params& P = c.par;
  auto xOpt = [&](CLI::App* s) { s->add_option("--x", P.x, "a/c in k/A")->capture_default_str(); };
  auto yOpt = [&](CLI::App* s) { s->add_option("--y", P.y, "rational y"); };
  auto fieldOpt = [&](CLI::App* s) {
    s->add_option("--subfield", P.subfield, "full, constant or carlitz")->capture_default_str();
    s->add_option("--fixed", P.fixed, "extra generators alpha:c of H");
  };

  auto* gamma = app.add_subcommand("gamma", "gamma series and valuations");
  xOpt(gamma);
  yOpt(gamma);
  gamma->add_option("--kind", P.kind, "tilde, twovar, ari or geo");
  auto* bracket = app.add_subcommand("bracket", "diamond brackets of (x, y)");
  xOpt(bracket);
  yOpt(bracket);
  auto* ltable = app.add_subcommand("ltable", "L(0, chi) and L'(0, chi)/ln q for every character");
  auto* nc = app.add_subcommand("nc", "n_c coefficients of a CM subfield");
  fieldOpt(nc);
  auto* st = app.add_subcommand("st", "Stickelberger function on G_{n,l}");
  st->alias("stickelberger");
  xOpt(st);
  yOpt(st);
  st->add_option("--kind", P.kind, "ari, geo or twovar");
  auto* rank = app.add_subcommand("rank", "rank of the Stickelberger distribution");
  auto* evaluator = app.add_subcommand("evaluator", "L-evaluator identities for every (chi, c, a, i)");
  auto* lerch = app.add_subcommand("lerch", "Lerch-type formula for every character");
  auto* csf = app.add_subcommand("csf", "quasi-period monomial and log-derivative identity");
  fieldOpt(csf);
  auto* carlitz = app.add_subcommand("carlitz", "cyclotomic polynomials, torsion and period checks");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", P.suite, "brackets, evaluator, rank, lerch, csf or carlitz")
      ->required()
      ->check(CLI::IsMember({"brackets", "evaluator", "rank", "lerch", "csf", "carlitz"}));
  verify->add_option("--instances", P.instances, "random instances for the brackets suite")->capture_default_str();
  verify->add_option("--seed", P.seed, "seed for the brackets suite")->capture_default_str();

  std::vector<std::string> argv{"ffgamma"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<const char*> ptrs;
  for (auto& s : argv) ptrs.push_back(s.c_str());
  try {
    app.parse(int(ptrs.size()), ptrs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kVerified : kUsage;
  }

  try {
    Report r;
    const bool needGroup = !gamma->parsed() && !bracket->parsed() && !carlitz->parsed() &&
                           !(verify->parsed() && (P.suite == "brackets" || P.suite == "carlitz"));
    setup(c, needGroup);
    if (gamma->parsed()) r = cmdGamma(c);
    else if (bracket->parsed()) r = cmdBracket(c);
    else if (ltable->parsed()) r = cmdLtable(c);
    else if (nc->parsed()) r = cmdNc(c);
    else if (st->parsed()) r = cmdSt(c);
    else if (rank->parsed()) r = cmdRank(c);
    else if (evaluator->parsed()) r = cmdEvaluator(c);
    else if (lerch->parsed()) r = cmdLerch(c);
    else if (csf->parsed()) r = cmdCsf(c);
    else if (carlitz->parsed()) r = cmdCarlitz(c);
    else r = cmdVerify(c);
    if (c.cfg.json) out << r.j.dump(2) << "\n";
    else renderText(r.j, "", out);
    return r.verifier && !r.ok ? kFailure : kVerified;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PrecisionError& e) {
    err << "error: " << e.what() << " (raise --prec)\n";
    return kUsage;
  } catch (const ConsistencyError& e) {
    err << "verification failure: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace ffg::cli

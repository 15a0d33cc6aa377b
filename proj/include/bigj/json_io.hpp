#pragma once

#include <json.hpp>

#include "bigj/cone.hpp"
#include "bigj/identities.hpp"
#include "bigj/novikov.hpp"

namespace bigj {

// Canonical JSON for every engine artifact: object keys sorted (nlohmann's
// default map), every number that is not a small structural integer rendered
// as an exact string. Identical values serialize byte-identically.
using Json = nlohmann::json;

// ---- scalars ---------------------------------------------------------------

inline Json to_json(const Rational& r) { return to_string(r); }

inline Json to_json(const Cyclotomic& c) {
  Json j;
  j["m"] = c.order();
  Json coeffs = Json::array();
  for (const auto& x : c.coeffs()) coeffs.push_back(to_string(x));
  j["coeffs"] = coeffs;
  return j;
}

inline Cyclotomic cyclotomic_from_json(const Json& j) {
  if (j.is_string()) return Cyclotomic(parse_rational(j.get<std::string>()));
  int m = j.at("m").get<int>();
  Cyclotomic out;
  int i = 0;
  for (const auto& s : j.at("coeffs")) {
    Rational c = parse_rational(s.get<std::string>());
    if (c != 0) out = out + Cyclotomic(c) * Cyclotomic::zeta(m, i);
    ++i;
  }
  return out;
}

// ---- lambda elements -------------------------------------------------------

inline Json to_json(const LambdaElement& x) {
  Json list = Json::array();
  for (const auto& [mon, c] : x.terms()) {
    Json jm = Json::array();
    for (const auto& [g, e] : mon) jm.push_back(Json::array({g.adams, g.tau, e}));
    Json entry;
    entry["monomial"] = jm;
    if (c.is_rational())
      entry["coeff"] = to_string(c.rational_value());
    else
      entry["coeff"] = to_json(c);
    list.push_back(entry);
  }
  return list;
}

inline LambdaElement lambda_from_json(const Json& j, int trunc) {
  LambdaElement out = LambdaElement::zero();
  for (const auto& entry : j) {
    LambdaElement term = LambdaElement::one();
    for (const auto& g : entry.at("monomial")) {
      int adams = g.at(0).get<int>(), tau = g.at(1).get<int>(), e = g.at(2).get<int>();
      for (int i = 0; i < e; ++i) term = term * LambdaElement::generator(adams, tau, trunc);
    }
    Cyclotomic c = cyclotomic_from_json(entry.at("coeff"));
    out = out + term.scaled(c);
  }
  return out.truncate_to(trunc);
}

// ---- Laurent polynomials and rational functions ----------------------------

inline Json to_json(const LaurentPoly& p) {
  Json list = Json::array();
  for (const auto& [e, c] : p.terms()) list.push_back(Json::array({e, to_json(c)}));
  return list;
}

inline LaurentPoly laurent_from_json(const Json& j, int trunc) {
  LaurentPoly out;
  for (const auto& term : j) {
    int e = term.at(0).get<int>();
    out.set_coeff(e, out.coeff(e) + lambda_from_json(term.at(1), trunc));
  }
  return out;
}

inline Json to_json(const RationalQ& f) {
  Json j;
  j["num"] = to_json(f.num());
  Json den = Json::array();
  for (const auto& [k, m] : f.den()) den.push_back(Json::array({k, m}));
  j["den"] = den;
  return j;
}

inline RationalQ rational_q_from_json(const Json& j, int trunc) {
  RationalQ out(laurent_from_json(j.at("num"), trunc));
  for (const auto& f : j.at("den")) {
    int k = f.at(0).get<int>(), m = f.at(1).get<int>();
    out = out * RationalQ::inv_one_minus_q_pow(k, m);
  }
  return out;
}

// ---- q-series ---------------------------------------------------------------

inline Json to_json(const QSeries& s) {
  Json j;
  j["m"] = s.root_order();
  j["min_order"] = s.is_zero() ? 0 : s.min_order();
  j["E"] = s.trunc() >= kSeriesExact ? Json("exact") : Json(s.trunc());
  Json coeffs = Json::array();
  for (const auto& [p, c] : s.coeffs()) coeffs.push_back(Json::array({p, to_json(c)}));
  j["coeffs"] = coeffs;
  return j;
}

// ---- engine config ----------------------------------------------------------

inline Json to_json(const EngineConfig& c) {
  Json j;
  j["D"] = c.D;
  j["E"] = c.E;
  j["R"] = c.R;
  j["M_max"] = c.M_max;
  j["G"] = c.G;
  j["seed"] = c.seed;
  return j;
}

inline EngineConfig config_from_json(const Json& j) {
  EngineConfig c;
  if (j.contains("D")) c.D = j.at("D").get<int>();
  if (j.contains("E")) c.E = j.at("E").get<int>();
  if (j.contains("R")) c.R = j.at("R").get<int>();
  if (j.contains("M_max")) c.M_max = j.at("M_max").get<int>();
  if (j.contains("G")) c.G = j.at("G").get<int>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

// ---- sequence points and certificates ---------------------------------------

inline Json to_json(const SequencePoint& f) {
  Json j;
  j["config"] = to_json(f.config());
  Json entries = Json::array();
  for (const auto& e : f.entries()) entries.push_back(to_json(e));
  j["entries"] = entries;
  return j;
}

inline SequencePoint point_from_json(const Json& j) {
  EngineConfig cfg = config_from_json(j.at("config"));
  cfg.finalize();
  std::vector<RationalQ> entries;
  for (const auto& e : j.at("entries")) entries.push_back(rational_q_from_json(e, cfg.D));
  return SequencePoint(std::move(entries), cfg);
}

inline Json to_json(const ConeCertificate& cert) {
  Json j;
  j["pass"] = cert.pass;
  j["window_complete"] = cert.window_complete;
  j["failed"] = cert.failed_count();
  Json cells = Json::array();
  for (const auto& c : cert.cells) {
    Json jc;
    jc["r"] = c.r;
    jc["m"] = c.m;
    jc["a"] = c.a;
    jc["verdict"] = c.verdict == Verdict::Pass ? "pass" : c.verdict == Verdict::Fail ? "fail" : "unchecked";
    jc["in_window"] = c.in_window;
    if (!c.reason.empty()) jc["reason"] = c.reason;
    if (c.witness) jc["witness"] = to_json(*c.witness);
    cells.push_back(jc);
  }
  j["cells"] = cells;
  Json tangents;
  for (const auto& [r, T] : cert.tangents) tangents["r" + std::to_string(r)] = to_json(T);
  j["tangents"] = tangents;
  Json units;
  for (const auto& [r, t] : cert.unit_parts) units["r" + std::to_string(r)] = to_json(t);
  j["unit_parts"] = units;
  return j;
}

inline Json to_json(const AdelicTable& t) {
  Json j;
  for (const auto& [key, s] : t.cells) {
    std::string name = "r" + std::to_string(key.r) + "_zeta" + std::to_string(key.m) + "_" +
                       std::to_string(key.a);
    j[name] = to_json(s);
  }
  return j;
}

// ---- params -----------------------------------------------------------------

inline Json to_json(const PtParams& p) {
  Json j;
  Json tau;
  for (const auto& [k, v] : p.tau) tau[std::to_string(k)] = to_json(v);
  j["tau"] = tau;
  Json t;
  for (const auto& [r, v] : p.t) t[std::to_string(r)] = to_json(v);
  j["t"] = t;
  return j;
}

// ---- novikov ---------------------------------------------------------------

inline Json to_json(const ToyKRing& r) {
  Json j;
  j["nilp"] = r.nilp;
  return j;
}

inline ToyKRing toyk_ring_from_json(const Json& j) {
  ToyKRing r;
  r.nilp = j.at("nilp").get<std::vector<int>>();
  return r;
}

inline Json to_json(const KValue& v) {
  Json list = Json::array();
  for (const auto& [e, f] : v.terms()) list.push_back(Json::array({e, to_json(f)}));
  return list;
}

inline KValue kvalue_from_json(const Json& j, const ToyKRing& ring, int trunc) {
  KValue v(ring);
  for (const auto& term : j)
    v.set(term.at(0).get<std::vector<int>>(), rational_q_from_json(term.at(1), trunc));
  return v;
}

inline Json to_json(const NovikovSeries& f) {
  Json j;
  j["ring"] = to_json(f.ring());
  j["G"] = f.G();
  Json terms = Json::array();
  for (const auto& [d, v] : f.terms()) terms.push_back(Json::array({d, to_json(v)}));
  j["terms"] = terms;
  return j;
}

inline NovikovSeries novikov_from_json(const Json& j, int trunc) {
  ToyKRing ring = toyk_ring_from_json(j.at("ring"));
  NovikovSeries f(ring, j.at("G").get<int>());
  for (const auto& term : j.at("terms"))
    f.set(term.at(0).get<std::vector<int>>(), kvalue_from_json(term.at(1), ring, trunc));
  return f;
}

inline Json to_json(const DiffOp& d) {
  Json j;
  j["ring"] = to_json(d.ring());
  Json terms = Json::array();
  for (const auto& [key, c] : d.terms())
    terms.push_back(Json::array({key.t_pow, key.q_pow, to_json(c)}));
  j["terms"] = terms;
  return j;
}

// ---- canonical dump ---------------------------------------------------------

inline std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace bigj

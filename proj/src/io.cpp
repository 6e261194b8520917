#include "logtr/io.hpp"

#include <algorithm>

#include <json.hpp>

namespace logtr {

using nlohmann::json;

OutputFormat parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "json") return OutputFormat::Json;
  if (s == "latex") return OutputFormat::Latex;
  fail(Err::ParseError, "unknown output format '" + s + "'");
}

namespace {

Rat rat_field(const json& j, const std::string& what) {
  if (!j.is_string())
    fail(Err::ParseError, what + " must be an exact-fraction string");
  return Rat::parse(j.get<std::string>());
}

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      fail(Err::ParseError, "unknown field '" + it.key() + "' in " + where);
  }
}

Poly poly_field(const json& j, const std::string& what) {
  if (!j.is_array()) fail(Err::ParseError, what + " must be a coefficient list");
  std::vector<Rat> c;
  for (auto& e : j) c.push_back(rat_field(e, what + " coefficient"));
  return Poly(std::move(c));
}

std::vector<LogTerm> logs_field(const json& j, const std::string& where) {
  std::vector<LogTerm> out;
  if (!j.is_array()) fail(Err::ParseError, where + ".logs must be a list");
  for (auto& e : j) {
    reject_unknown(e, {"point", "weight", "norm"}, where + ".logs");
    if (!e.contains("point") || !e.contains("weight"))
      fail(Err::ParseError, where + ".logs entries need point and weight");
    LogTerm lt;
    lt.point = rat_field(e.at("point"), "log point");
    lt.weight = rat_field(e.at("weight"), "log weight");
    lt.norm = e.contains("norm") ? rat_field(e.at("norm"), "log norm") : Rat(1);
    out.push_back(std::move(lt));
  }
  return out;
}

RatFun fun_field(const json& j, const std::string& where, std::vector<LogTerm>& logs) {
  reject_unknown(j, {"num", "den", "logs"}, where);
  Poly num = j.contains("num") ? poly_field(j.at("num"), where + ".num") : Poly();
  Poly den = j.contains("den") ? poly_field(j.at("den"), where + ".den") : Poly(Rat(1));
  if (den.is_zero()) fail(Err::ParseError, where + ".den is zero");
  if (j.contains("logs")) logs = logs_field(j.at("logs"), where);
  return RatFun(std::move(num), std::move(den));
}

json rat_json(const Rat& r) { return r.str(); }

json poly_json(const Poly& p) {
  json a = json::array();
  for (long k = 0; k <= p.degree(); ++k) a.push_back(rat_json(p.coeff(k)));
  return a;
}

json logs_json(const std::vector<LogTerm>& logs) {
  json a = json::array();
  for (auto& lt : logs) {
    json e = {{"point", rat_json(lt.point)}, {"weight", rat_json(lt.weight)}};
    if (!lt.norm.is_one()) e["norm"] = rat_json(lt.norm);
    a.push_back(e);
  }
  return a;
}

}  // namespace

CurveSpec parse_curve_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Err::ParseError, std::string("invalid JSON: ") + e.what());
  }
  reject_unknown(j, {"variable", "x", "y", "basepoint", "ramification", "truncation"}, "curve file");
  CurveSpec spec;
  if (j.contains("variable")) {
    if (!j.at("variable").is_string()) fail(Err::ParseError, "variable must be a string");
    spec.variable = j.at("variable").get<std::string>();
  }
  if (!j.contains("x") || !j.contains("y")) fail(Err::ParseError, "curve file needs x and y");
  spec.x_rat = fun_field(j.at("x"), "x", spec.x_logs);
  spec.y_rat = fun_field(j.at("y"), "y", spec.y_logs);
  if (j.contains("basepoint")) spec.basepoint = rat_field(j.at("basepoint"), "basepoint");
  if (j.contains("ramification")) {
    if (!j.at("ramification").is_array()) fail(Err::ParseError, "ramification must be a list");
    for (auto& e : j.at("ramification"))
      spec.declared_ramification.push_back(rat_field(e, "ramification point"));
  }
  if (j.contains("truncation")) {
    if (!j.at("truncation").is_number_integer())
      fail(Err::ParseError, "truncation must be an integer");
    spec.truncation_hint = j.at("truncation").get<long>();
    if (*spec.truncation_hint < 4) fail(Err::ParseError, "truncation too small");
  }
  return spec;
}

std::string curve_spec_to_json(const CurveSpec& spec) {
  json j;
  j["variable"] = spec.variable;
  j["x"] = {{"num", poly_json(spec.x_rat.num())}, {"den", poly_json(spec.x_rat.den())}};
  if (!spec.x_logs.empty()) j["x"]["logs"] = logs_json(spec.x_logs);
  j["y"] = {{"num", poly_json(spec.y_rat.num())}, {"den", poly_json(spec.y_rat.den())}};
  if (!spec.y_logs.empty()) j["y"]["logs"] = logs_json(spec.y_logs);
  if (spec.basepoint) j["basepoint"] = rat_json(*spec.basepoint);
  if (spec.truncation_hint) j["truncation"] = *spec.truncation_hint;
  if (!spec.declared_ramification.empty()) {
    json a = json::array();
    for (auto& r : spec.declared_ramification) a.push_back(rat_json(r));
    j["ramification"] = a;
  }
  return j.dump(2);
}

std::string polesum_to_json(const PoleSum& w, const std::string& var) {
  json j;
  j["arity"] = w.arity();
  j["variable"] = var;
  json terms = json::array();
  for (auto& [t, c] : w.terms()) {
    json factors = json::array();
    for (auto& f : t) factors.push_back({{"pole", rat_json(f.pole)}, {"order", f.order}});
    terms.push_back({{"factors", factors}, {"coeff", rat_json(c)}});
  }
  j["terms"] = terms;
  return j.dump(2);
}

PoleSum polesum_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Err::ParseError, std::string("invalid JSON: ") + e.what());
  }
  reject_unknown(j, {"arity", "variable", "terms"}, "pole sum");
  PoleSum w(j.at("arity").get<long>());
  for (auto& te : j.at("terms")) {
    reject_unknown(te, {"factors", "coeff"}, "pole sum term");
    Term t;
    for (auto& fe : te.at("factors")) {
      reject_unknown(fe, {"pole", "order"}, "pole factor");
      t.push_back(Factor{rat_field(fe.at("pole"), "pole"), fe.at("order").get<long>()});
    }
    w.add_term(t, rat_field(te.at("coeff"), "coeff"));
  }
  return w;
}

std::string reports_to_json(const std::vector<CheckReport>& reports) {
  json a = json::array();
  for (auto& r : reports) {
    json e = {{"name", r.name}, {"params", r.params}, {"pass", r.pass}};
    if (!r.witness.empty()) e["witness"] = r.witness;
    a.push_back(e);
  }
  return a.dump(2);
}

std::string admissibility_to_json(const AdmissReport& rep) {
  json a = json::array();
  for (auto& c : rep.checks) {
    json e = {{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    a.push_back(e);
  }
  json j = {{"checks", a}, {"admissible", rep.admissible}, {"unsupported", rep.unsupported}};
  return j.dump(2);
}

std::vector<Rat> parse_eps_schedule(const std::string& s) {
  std::vector<Rat> out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(Rat::parse(s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  if (out.empty()) fail(Err::ParseError, "empty epsilon schedule");
  for (size_t i = 1; i < out.size(); ++i)
    if (!(out[i] < out[i - 1]) || out[i].sign() <= 0)
      fail(Err::ParseError, "epsilon schedule must be positive and strictly decreasing");
  if (out[0].sign() <= 0) fail(Err::ParseError, "epsilon schedule must be positive");
  return out;
}

}  // namespace logtr

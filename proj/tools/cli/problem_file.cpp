#include "problem_file.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "bipara/text.hpp"

namespace bipara::cli {

namespace {

using json = nlohmann::json;

const json& require(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw InputError(std::string("missing key \"") + key + "\"");
  return *it;
}

double real_field(const json& doc, const char* key) {
  const json& v = require(doc, key);
  if (!v.is_number()) throw InputError(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

std::string text_field(const json& doc, const char* key) {
  const json& v = require(doc, key);
  if (!v.is_string()) throw InputError(std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

std::vector<ParaComplex> values(const json& arr, const char* key, int n) {
  const std::string where = std::string("initial.") + key;
  if (!arr.is_array()) throw InputError("\"" + where + "\" must be an array of [a, b] pairs");
  if (static_cast<int>(arr.size()) != n) {
    throw InputError("\"" + where + "\" has " + std::to_string(arr.size()) + " entries, n is " +
                     std::to_string(n));
  }
  std::vector<ParaComplex> out;
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw InputError("\"" + where + "\" entries must be [a, b] number pairs");
    }
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

void reject_unknown(const json& doc, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : doc.items()) {
    if (!allowed.contains(key)) throw InputError("unknown key \"" + where + key + "\"");
  }
}

Expr parse_field(const std::string& text, const char* field, const CoordinateChart& chart) {
  try {
    return parse(text, chart);
  } catch (const Error& e) {
    throw InputError(std::string("\"") + field + "\": " + e.what());
  }
}

}  // namespace

ProblemFile read_problem(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("problem file must be a JSON object");
  reject_unknown(doc,
                 {"n", "kind", "function", "lambda", "initial", "t0", "t1", "integrator", "dt",
                  "tol", "emit_energy"},
                 "");

  ProblemFile f;
  const json& n = require(doc, "n");
  if (!n.is_number_integer() || n.get<int>() < 1) throw InputError("\"n\" must be a positive integer");
  f.n = n.get<int>();

  const std::string kind = text_field(doc, "kind");
  if (kind == "lagrangian") {
    f.kind = ProblemKind::lagrangian;
  } else if (kind == "hamiltonian") {
    f.kind = ProblemKind::hamiltonian;
  } else {
    throw InputError("\"kind\" must be \"lagrangian\" or \"hamiltonian\", got \"" + kind + "\"");
  }
  f.function = text_field(doc, "function");
  f.lambda = text_field(doc, "lambda");

  const json& initial = require(doc, "initial");
  if (!initial.is_object()) throw InputError("\"initial\" must be an object with \"z\" and \"zb\"");
  reject_unknown(initial, {"z", "zb"}, "initial.");
  f.initial.z = values(require(initial, "z"), "z", f.n);
  f.initial.zb = values(require(initial, "zb"), "zb", f.n);

  IntegratorConfig& cfg = f.integrator;
  cfg.t0 = real_field(doc, "t0");
  cfg.t1 = real_field(doc, "t1");
  f.initial.t = cfg.t0;
  const std::string method = text_field(doc, "integrator");
  if (method == "rk4") {
    cfg.method = Method::rk4;
    if (doc.contains("tol")) throw InputError("\"tol\" is not used by rk4; give \"dt\"");
    cfg.dt = real_field(doc, "dt");
  } else if (method == "rkf45") {
    cfg.method = Method::rkf45;
    if (doc.contains("dt")) throw InputError("\"dt\" is not used by rkf45; give \"tol\"");
    cfg.tol = real_field(doc, "tol");
  } else {
    throw InputError("\"integrator\" must be \"rk4\" or \"rkf45\", got \"" + method + "\"");
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }

  if (const auto it = doc.find("emit_energy"); it != doc.end()) {
    if (!it->is_boolean()) throw InputError("\"emit_energy\" must be true or false");
    f.emit_energy = it->get<bool>();
  }
  return f;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return read_problem(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Problem build_problem(const ProblemFile& f) {
  const CoordinateChart chart(f.n);
  Expr function = parse_field(f.function, "function", chart);
  Expr lambda = parse_field(f.lambda, "lambda", chart);
  if (f.kind == ProblemKind::lagrangian) {
    return LagrangianProblem(chart, std::move(function), std::move(lambda));
  }
  return HamiltonianProblem(chart, std::move(function), std::move(lambda));
}

}  // namespace bipara::cli

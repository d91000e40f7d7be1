#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "l2alex/io.hpp"

namespace l2alex {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& msg) {
  throw DocumentError(InputErrorCode::InvalidSchema, where, msg);
}
[[noreturn]] void dimension_error(const std::string& where, const std::string& msg) {
  throw DocumentError(InputErrorCode::DimensionMismatch, where, msg);
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, std::string("missing key \"") + key + "\"");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) schema_error(where, "expected a finite number");
  return x;
}

long long integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.0e15) {
      return static_cast<long long>(x);
    }
  }
  schema_error(where, "expected an integer");
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array");
  return j;
}

LaurentPoly poly_from_json(const Json& j, std::size_t nvars, const std::string& where) {
  array(j, where);
  std::vector<std::pair<ExponentVector, Complex>> terms;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string w = where + "/" + std::to_string(k);
    const Json& term = j[k];
    if (!term.is_object()) schema_error(w, "expected a term object");
    const Json& exp = array(member(term, "exp", w), w + "/exp");
    if (exp.size() != nvars) {
      dimension_error(w + "/exp", "exponent has " + std::to_string(exp.size()) +
                                      " entries for " + std::to_string(nvars) + " variables");
    }
    ExponentVector e;
    for (std::size_t i = 0; i < exp.size(); ++i) {
      const long long v = integer(exp[i], w + "/exp/" + std::to_string(i));
      if (v > 1000000000LL || v < -1000000000LL) schema_error(w + "/exp", "exponent out of range");
      e.push_back(static_cast<int>(v));
    }
    const double re = term.contains("re") ? number(term["re"], w + "/re") : 0.0;
    const double im = term.contains("im") ? number(term["im"], w + "/im") : 0.0;
    terms.emplace_back(std::move(e), Complex(re, im));
  }
  return LaurentPoly::from_terms(nvars, terms);
}

LaurentMatrix matrix_from_json(const Json& j, std::size_t nvars, const std::string& where) {
  array(j, where);
  const std::size_t n = j.size();
  LaurentMatrix out(n, nvars);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string wi = where + "/" + std::to_string(i);
    const Json& row = array(j[i], wi);
    if (row.size() != n) {
      dimension_error(wi, "row has " + std::to_string(row.size()) + " entries; matrix must be " +
                              std::to_string(n) + "x" + std::to_string(n));
    }
    for (std::size_t k = 0; k < n; ++k) {
      out.set(i, k, poly_from_json(row[k], nvars, wi + "/" + std::to_string(k)));
    }
  }
  return out;
}

CohomClass class_from_json(const Json& j, std::size_t nvars, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected a class object");
  const Json& s = array(member(j, "sigma", where), where + "/sigma");
  if (s.size() != nvars) {
    dimension_error(where + "/sigma", "sigma has " + std::to_string(s.size()) + " entries for " +
                                          std::to_string(nvars) + " variables");
  }
  std::vector<double> sigma;
  for (std::size_t i = 0; i < s.size(); ++i) {
    sigma.push_back(number(s[i], where + "/sigma/" + std::to_string(i)));
  }
  const bool has_r = j.contains("r"), has_phi = j.contains("phi");
  if (has_r != has_phi) schema_error(where, "\"r\" and \"phi\" must be given together");
  if (!has_r) return CohomClass::from_sigma(std::move(sigma));

  Decomposition dec;
  const Json& r = array(j["r"], where + "/r");
  const Json& phi = array(j["phi"], where + "/phi");
  if (phi.size() != r.size()) {
    dimension_error(where + "/phi", "phi has " + std::to_string(phi.size()) + " rows for " +
                                        std::to_string(r.size()) + " entries of r");
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    dec.r.push_back(number(r[i], where + "/r/" + std::to_string(i)));
    const std::string wi = where + "/phi/" + std::to_string(i);
    const Json& row = array(phi[i], wi);
    if (row.size() != nvars) {
      dimension_error(wi, "row has " + std::to_string(row.size()) + " entries for " +
                              std::to_string(nvars) + " variables");
    }
    std::vector<long long> pr;
    for (std::size_t k = 0; k < row.size(); ++k) {
      pr.push_back(integer(row[k], wi + "/" + std::to_string(k)));
    }
    dec.phi.push_back(std::move(pr));
  }
  try {
    return CohomClass::with_decomposition(std::move(sigma), std::move(dec));
  } catch (const DocumentError&) {
    throw;
  } catch (const InputError& e) {
    schema_error(where, e.what());
  }
}

std::vector<std::string> variables_from_json(const Json& doc) {
  const Json& vars = array(member(doc, "variables", ""), "/variables");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!vars[i].is_string()) schema_error("/variables/" + std::to_string(i), "expected a name");
    out.push_back(vars[i].get<std::string>());
  }
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // Byte offset -> line and column (1-based).
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw DocumentError(InputErrorCode::MalformedJson,
                        "line " + std::to_string(line) + ", column " + std::to_string(col), msg);
  }
}

Json rounded(const Json& j) {
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (!std::isfinite(x)) return nullptr;
    if (x == std::floor(x) && std::abs(x) < 1e15) return static_cast<long long>(x);
    return std::strtod(format_number(x).c_str(), nullptr);
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const Json& e : j) out.push_back(rounded(e));
    return out;
  }
  if (j.is_object()) {
    Json out = Json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = rounded(it.value());
    return out;
  }
  return j;
}

Json optional_number(const std::optional<double>& x) {
  if (x) return *x;
  return nullptr;
}

}  // namespace

Json to_json(const LaurentPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) {
    out.push_back({{"exp", e}, {"re", c.real()}, {"im", c.imag()}});
  }
  return out;
}

Json to_json(const LaurentMatrix& a) {
  Json out = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.size(); ++j) row.push_back(to_json(a(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const CohomClass& c) {
  Json out = {{"sigma", c.sigma()}};
  if (c.has_decomposition()) {
    out["r"] = c.decomposition()->r;
    out["phi"] = c.decomposition()->phi;
  }
  return out;
}

Json to_json(const InputDocument& doc) {
  Json out = {{"variables", doc.variables},
              {"matrix", to_json(doc.matrix)},
              {"class", to_json(doc.cls)}};
  if (!doc.pairs.empty()) {
    Json pairs = Json::array();
    for (const auto& [a, b] : doc.pairs) pairs.push_back({a, b});
    out["pairs"] = std::move(pairs);
  }
  if (doc.index_divisor != 1) out["index_divisor"] = doc.index_divisor;
  return out;
}

Json to_json(const AsymptoteReport& r) {
  return {{"d_plus", r.d_plus},
          {"d_minus", r.d_minus},
          {"deg_b", r.deg_b},
          {"C_plus", optional_number(r.c_plus)},
          {"C_minus", optional_number(r.c_minus)},
          {"method", to_string(r.method)}};
}

Json to_json(const MahlerResult& r) {
  return {{"measure", r.measure}, {"log_measure", r.log_measure}, {"achieved_tol", r.achieved_tol}};
}

Json to_json(const ConvexityReport& r) {
  Json out = {{"passed", r.passed()},
              {"zero_function", r.zero_function},
              {"slope_bound", optional_number(r.slope_bound)},
              {"slope_window", r.slope_window ? Json{r.slope_window->lo, r.slope_window->hi} : Json()},
              {"min_slope", r.min_slope},
              {"max_slope", r.max_slope},
              {"max_abs_slope", r.max_abs_slope}};
  Json v = Json::array();
  for (const ConvexityViolation& x : r.violations) {
    v.push_back({{"t_lo", x.t_lo}, {"t_mid", x.t_mid}, {"t_hi", x.t_hi}, {"excess", x.excess}});
  }
  out["violations"] = std::move(v);
  Json s = Json::array();
  for (const SlopeViolation& x : r.slope_violations) {
    s.push_back({{"t0", x.t0}, {"t1", x.t1}, {"slope", x.slope}});
  }
  out["slope_violations"] = std::move(s);
  return out;
}

Json to_json(const Section9Result& r) {
  Json out = {{"phi", r.phi},         {"norm", r.norm},           {"delta", r.delta},
              {"leading", r.leading}, {"vol_check", r.vol_check}, {"deg_b", r.deg_b}};
  if (!r.warnings.empty()) out["warnings"] = r.warnings;
  return out;
}

InputDocument parse_input(std::string_view text) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) schema_error("", "document must be a JSON object");
  InputDocument out;
  out.variables = variables_from_json(doc);
  const std::size_t l = out.variables.size();
  out.matrix = matrix_from_json(member(doc, "matrix", ""), l, "/matrix");
  out.cls = class_from_json(member(doc, "class", ""), l, "/class");
  if (doc.contains("pairs")) {
    const Json& pairs = array(doc["pairs"], "/pairs");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const std::string w = "/pairs/" + std::to_string(k);
      const Json& pr = array(pairs[k], w);
      if (pr.size() != 2) schema_error(w, "expected a pair [a, b]");
      out.pairs.emplace_back(number(pr[0], w + "/0"), number(pr[1], w + "/1"));
    }
  }
  if (doc.contains("index_divisor")) {
    const Json& idx = doc["index_divisor"];
    if (!idx.is_number_integer() || idx.get<long long>() < 1 || idx.get<long long>() > 1000000000) {
      throw DocumentError(InputErrorCode::InvalidIndexDivisor, "/index_divisor",
                          "index_divisor must be a positive integer");
    }
    out.index_divisor = static_cast<int>(idx.get<long long>());
  }
  return out;
}

LaurentPoly parse_poly_document(std::string_view text) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) schema_error("", "document must be a JSON object");
  if (doc.contains("poly")) {
    const std::size_t l = variables_from_json(doc).size();
    return poly_from_json(doc["poly"], l, "/poly");
  }
  return matrix_determinant(parse_input(text).matrix);
}

std::string format_number(double x) {
  if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 1e15) {
    return std::to_string(static_cast<long long>(x));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string dump_rounded(const Json& j) { return rounded(j).dump(); }

}  // namespace l2alex

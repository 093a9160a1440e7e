#pragma once

// Result documents: JSON construction, text/CSV rendering, and
// re-verification of a document from its own contents.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "schur/almost_hadamard.hpp"
#include "schur/bounds.hpp"
#include "schur/closed_forms.hpp"
#include "schur/equivalence.hpp"
#include "schur/hadamard.hpp"
#include "schur/io.hpp"
#include "schur/schur_norm.hpp"
#include "schur/spectrum.hpp"

namespace schur {

using Json = nlohmann::ordered_json;

/// %.<digits>g: correctly rounded from the binary value, so exact decimal
/// ties (which a double rarely holds) round to even.
inline std::string format_number(double v, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline Json matrix_json(const DenseMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (double x : m.row(i)) row.push_back(x);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json matrix_json(const SignMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.n(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.n(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline DenseMatrix matrix_from_json(const Json& j) {
  require(j.is_array() && !j.empty() && j.front().is_array(), ErrorKind::parse_error,
          "expected a matrix as nested arrays");
  const std::size_t r = j.size(), c = j.front().size();
  DenseMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    require(j[i].is_array() && j[i].size() == c, ErrorKind::parse_error, "ragged matrix in document");
    for (std::size_t k = 0; k < c; ++k) {
      require(j[i][k].is_number(), ErrorKind::parse_error, "non-numeric matrix entry in document");
      m(i, k) = j[i][k].get<double>();
    }
  }
  return m;
}

inline std::vector<double> vector_from_json(const Json& j) {
  require(j.is_array(), ErrorKind::parse_error, "expected an array of numbers");
  std::vector<double> v;
  for (const auto& x : j) {
    require(x.is_number(), ErrorKind::parse_error, "non-numeric entry in document");
    v.push_back(x.get<double>());
  }
  return v;
}

inline Json optional_tag(const std::optional<std::string>& t) { return t ? Json(*t) : Json(nullptr); }

// ---------------------------------------------------------------------------
// Builders

inline Json schur_norm_document(const DenseMatrix& a, const SchurNormResult& r, bool certificates,
                                double tol) {
  Json d;
  d["command"] = "schur-norm";
  d["n"] = a.rows();
  d["value"] = r.value;
  d["exact_form"] = optional_tag(match_closed_form(r.value));
  d["lower"] = r.lower;
  d["upper"] = r.upper;
  d["method"] = to_string(r.method);
  d["matrix"] = matrix_json(a);
  d["maximizer"] = matrix_json(r.witness);
  d["witness_orthogonal_distance"] = r.witness_orthogonal_distance;
  if (r.method == SchurMethod::sdp) d["sdp_iterations"] = r.sdp_iterations;
  if (certificates && r.primal_cert && r.dual_cert) {
    Json c;
    c["primal"] = {{"c", r.primal_cert->c}, {"y", matrix_json(r.primal_cert->y)}, {"z", matrix_json(r.primal_cert->z)}};
    c["dual"] = {{"x", matrix_json(r.dual_cert->x)}, {"v", r.dual_cert->v}, {"w", r.dual_cert->w}};
    d["certificates"] = std::move(c);
  }
  d["tolerances"] = {{"tol", tol}};
  return d;
}

inline Json spectrum_document(const SpectrumResult& s) {
  Json d;
  d["command"] = "spectrum";
  d["n"] = s.n;
  d["count"] = s.values.size();
  d["values"] = s.values;
  Json tags = Json::array();
  for (const auto& t : s.exact_forms) tags.push_back(optional_tag(t));
  d["exact_forms"] = std::move(tags);
  Json att = Json::array();
  for (const auto& m : s.attaining) att.push_back(matrix_json(m));
  d["attaining"] = std::move(att);
  d["tolerances"] = {{"dedup_tol", s.dedup_tol}};
  return d;
}

inline Json extremal_document(const std::string& command, const ExtremalResult& r) {
  Json d;
  d["command"] = command;
  d["n"] = r.n;
  d["value"] = r.value;
  d["exact_form"] = optional_tag(r.exact_form);
  if (const auto* m = std::get_if<SignMatrix>(&r.maximizer)) {
    d["maximizer"] = matrix_json(*m);
  } else {
    const auto& spec = std::get<CirculantSpec>(r.maximizer);
    d["top_row"] = spec.top_row;
    d["maximizer"] = matrix_json(circulant(spec.top_row));
  }
  d["evaluated"] = r.evaluated;
  return d;
}

inline Json rn_bounds_document(const RnBounds& b, const RnBoundsOptions& opt) {
  Json d;
  d["command"] = "rn";
  d["n"] = b.n;
  d["exact"] = b.exact;
  d["lower"] = b.lower;
  d["upper"] = b.upper;
  d["exact_form"] = optional_tag(b.exact ? match_closed_form(b.lower) : std::nullopt);
  d["lower_source"] = b.lower_source;
  d["lower_form"] = optional_tag(match_closed_form(b.lower));
  if (b.witness) d["maximizer"] = matrix_json(*b.witness);
  if (opt.use_search && b.lower_source == "search") d["seed"] = opt.seed;
  return d;
}

inline Json enumerate_document(const CachedClasses& c) {
  Json d;
  d["command"] = "enumerate";
  d["n"] = c.set->n;
  d["count"] = c.set->representatives.size();
  d["generation_method"] = to_string(c.set->generation_method);
  d["cache_file"] = c.path.string();
  d["cache_hit"] = c.cache_hit;
  return d;
}

inline Json hadamard_document(const HadamardMatrix& h, const std::string& recipe) {
  Json d;
  d["command"] = "hadamard";
  d["n"] = h.n;
  d["construction"] = to_string(h.construction);
  d["recipe"] = recipe;
  d["is_hadamard"] = is_hadamard(h.matrix);
  d["value"] = std::sqrt(static_cast<double>(h.n));  // Schur norm of a Hadamard matrix
  d["exact_form"] = optional_tag(match_closed_form(std::sqrt(static_cast<double>(h.n))));
  d["maximizer"] = matrix_json(h.matrix);
  return d;
}

inline Json one_norm_document(const OneNormResult& r) {
  Json d;
  d["command"] = "almost-hadamard";
  d["n"] = r.n;
  d["mode"] = to_string(r.mode);
  d["value"] = r.value;
  d["exact_form"] = optional_tag(match_closed_form(r.value));
  d["upper_bound"] = r.upper_bound;
  d["orthogonality_defect"] = orthogonality_defect(r.orthogonal_matrix);
  d["maximizer"] = matrix_json(r.orthogonal_matrix);
  d["sign_pattern"] = matrix_json(r.sign_pattern);
  d["zero_sign_rule"] = "+1";
  if (r.seed) {
    d["seed"] = *r.seed;
    d["restarts"] = r.restarts;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  return v.dump();
}

inline void flatten(const Json& v, const std::string& key, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      flatten(it.value(), key.empty() ? it.key() : key + "." + it.key(), out);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], key + "[" + std::to_string(i) + "]", out);
  } else if (!v.is_null()) {
    out.emplace_back(key, scalar_text(v));
  }
}

inline bool is_numeric_row(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& x : v)
    if (!x.is_number()) return false;
  return true;
}

inline void render_text_value(const Json& v, const std::string& key, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    out += pad + key + ":\n";
    for (auto it = v.begin(); it != v.end(); ++it) render_text_value(it.value(), it.key(), indent + 2, out);
  } else if (is_numeric_row(v)) {
    out += pad + key + ":";
    for (const auto& x : v) out += " " + scalar_text(x);
    out += "\n";
  } else if (v.is_array()) {
    out += pad + key + ":\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (is_numeric_row(v[i])) {
        out += pad + "  ";
        for (std::size_t k = 0; k < v[i].size(); ++k) out += (k ? " " : "") + scalar_text(v[i][k]);
        out += "\n";
      } else {
        render_text_value(v[i], "[" + std::to_string(i) + "]", indent + 2, out);
      }
    }
  } else if (!v.is_null()) {
    out += pad + key + ": " + scalar_text(v) + "\n";
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace detail

inline std::string render_json(const Json& d) { return d.dump(2) + "\n"; }

inline std::string render_text(const Json& d) {
  std::string out;
  for (auto it = d.begin(); it != d.end(); ++it) detail::render_text_value(it.value(), it.key(), 0, out);
  return out;
}

/// key,value rows; nested keys are dotted, array elements indexed.
inline std::string render_csv(const Json& d) {
  std::vector<std::pair<std::string, std::string>> rows;
  detail::flatten(d, "", rows);
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) out += detail::csv_field(k) + "," + detail::csv_field(v) + "\n";
  return out;
}

inline std::string render(const Json& d, const std::string& format) {
  if (format == "json") return render_json(d);
  if (format == "csv") return render_csv(d);
  if (format == "text") return render_text(d);
  fail(ErrorKind::invalid_input, "unknown format '" + format + "' (expected json, csv or text)");
}

// ---------------------------------------------------------------------------
// Verification

struct VerifyReport {
  std::vector<std::pair<std::string, bool>> checks;

  void add(const std::string& name, bool ok) { checks.emplace_back(name, ok); }
  bool ok() const {
    for (const auto& [n, v] : checks)
      if (!v) return false;
    return !checks.empty();
  }
};

namespace detail {

inline double number(const Json& d, const char* key) {
  require(d.contains(key) && d[key].is_number(), ErrorKind::parse_error,
          std::string("document lacks numeric field '") + key + "'");
  return d[key].get<double>();
}

inline void verify_schur_norm(const Json& d, VerifyReport& rep) {
  const DenseMatrix a = matrix_from_json(d.at("matrix"));
  const double value = number(d, "value"), lower = number(d, "lower"), upper = number(d, "upper");
  const double tol = d.contains("tolerances") ? d["tolerances"].value("tol", 1e-8) : 1e-8;
  rep.add("lower <= value <= upper", lower <= value + 1e-15 && value <= upper + 1e-15);
  rep.add("bracket width within tolerance", upper - lower <= tol);
  const DenseMatrix c = matrix_from_json(d.at("maximizer"));
  rep.add("witness is a contraction", operator_norm(c) <= 1.0 + 1e-9);
  rep.add("witness attains the lower bound", operator_norm(schur_product(a, c)) >= lower - 1e-6);
  if (!d.contains("certificates")) return;
  const auto& p = d["certificates"]["primal"];
  const double cval = p.at("c").get<double>();
  const DenseMatrix y = matrix_from_json(p.at("y")), z = matrix_from_json(p.at("z"));
  bool diag_ok = true;
  for (std::size_t i = 0; i < a.rows(); ++i)
    diag_ok = diag_ok && std::abs(y(i, i) - cval) <= 1e-12 && std::abs(z(i, i) - cval) <= 1e-12;
  rep.add("primal diagonals equal c", diag_ok);
  rep.add("primal objective equals upper", std::abs(cval - upper) <= 1e-12 * std::max(1.0, upper));
  const double pscale = std::max(1.0, cval);
  rep.add("primal block matrix is PSD", min_eigenvalue(block2x2(y, a, a.transposed(), z)) >= -1e-9 * pscale);
  const auto& du = d["certificates"]["dual"];
  const DenseMatrix x = matrix_from_json(du.at("x"));
  const auto v = vector_from_json(du.at("v")), w = vector_from_json(du.at("w"));
  double total = 0.0;
  bool nonneg = true;
  for (double t : v) total += t, nonneg = nonneg && t >= 0.0;
  for (double t : w) total += t, nonneg = nonneg && t >= 0.0;
  rep.add("dual weights nonnegative with sum <= 2", nonneg && total <= 2.0 + 1e-12);
  rep.add("dual block matrix is PSD",
          min_eigenvalue(block2x2(DenseMatrix::diagonal(v), x, x.transposed(), DenseMatrix::diagonal(w))) >= -1e-9);
  rep.add("dual objective equals lower", std::abs(inner(a, x) - lower) <= 1e-9 * std::max(1.0, lower));
}

inline void verify_almost_hadamard(const Json& d, VerifyReport& rep) {
  const DenseMatrix x = matrix_from_json(d.at("maximizer"));
  const DenseMatrix s = matrix_from_json(d.at("sign_pattern"));
  const double value = number(d, "value");
  rep.add("matrix is orthogonal", orthogonality_defect(x) <= 1e-9);
  rep.add("value is the entrywise 1-norm", std::abs(entrywise_one_norm(x) - value) <= 1e-9 * std::max(1.0, value));
  bool pattern = s.rows() == x.rows();
  for (std::size_t i = 0; pattern && i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (x(i, j) * s(i, j) < -1e-12) pattern = false;
  rep.add("sign pattern matches the matrix", pattern);
  const double n = static_cast<double>(x.rows());
  rep.add("value within n sqrt(n)", value <= n * std::sqrt(n) + 1e-6);
  rep.add("value within the stated upper bound", value <= number(d, "upper_bound") + 1e-6);
}

inline void verify_sign_maximizer(const Json& d, VerifyReport& rep, double value) {
  const DenseMatrix m = matrix_from_json(d.at("maximizer"));
  SchurNormOptions opt;
  opt.tol = 1e-9;
  rep.add("maximizer Schur norm matches value", std::abs(schur_norm(m, opt).value - value) <= 1e-7);
  rep.add("value within sqrt(n)", value <= std::sqrt(static_cast<double>(m.rows())) + 1e-8);
}

}  // namespace detail

/// Re-checks a document from its contents alone (plus known class counts).
inline VerifyReport verify_document(const Json& d) {
  VerifyReport rep;
  require(d.is_object() && d.contains("command") && d["command"].is_string(), ErrorKind::parse_error,
          "not a result document (missing 'command')");
  const std::string cmd = d["command"].get<std::string>();
  if (cmd == "schur-norm") {
    detail::verify_schur_norm(d, rep);
  } else if (cmd == "almost-hadamard") {
    detail::verify_almost_hadamard(d, rep);
  } else if (cmd == "hadamard") {
    const auto m = SignMatrix::from_dense(matrix_from_json(d.at("maximizer")));
    rep.add("M^T M = n I", is_hadamard(m));
    rep.add("order matches", m.n() == d.at("n").get<std::size_t>());
  } else if (cmd == "rcn") {
    const double value = detail::number(d, "value");
    const auto top = vector_from_json(d.at("top_row"));
    rep.add("circulant formula matches value", std::abs(circulant_schur_norm({top}) - value) <= 1e-9);
    detail::verify_sign_maximizer(d, rep, value);
  } else if (cmd == "rn") {
    if (d.contains("value")) {
      detail::verify_sign_maximizer(d, rep, detail::number(d, "value"));
    } else {
      const double lower = detail::number(d, "lower"), upper = detail::number(d, "upper");
      rep.add("lower <= upper", lower <= upper + 1e-12);
      rep.add("upper within sqrt(n)", upper <= std::sqrt(d.at("n").get<double>()) + 1e-8);
      if (d.contains("maximizer")) {
        SchurNormOptions opt;
        opt.tol = 1e-9;
        rep.add("witness Schur norm reaches lower",
                schur_norm(matrix_from_json(d["maximizer"]), opt).value >= lower - 1e-7);
      }
    }
  } else if (cmd == "spectrum") {
    const auto values = vector_from_json(d.at("values"));
    const double tol = d.at("tolerances").at("dedup_tol").get<double>();
    bool sorted = true;
    for (std::size_t i = 1; i < values.size(); ++i) sorted = sorted && values[i] - values[i - 1] > tol;
    rep.add("values increase with gaps above dedup_tol", sorted);
    rep.add("count matches values", d.at("count").get<std::size_t>() == values.size());
    const auto& att = d.at("attaining");
    bool match = att.size() == values.size();
    SchurNormOptions opt;
    opt.tol = 1e-9;
    for (std::size_t i = 0; match && i < values.size(); ++i)
      match = std::abs(schur_norm(matrix_from_json(att[i]), opt).value - values[i]) <= 1e-7;
    rep.add("attaining matrices reproduce the values", match);
  } else if (cmd == "enumerate") {
    const auto n = d.at("n").get<std::size_t>();
    const auto count = d.at("count").get<std::size_t>();
    rep.add("count matches the known class count", n >= 1 && n <= kMaxEnumerationOrder && count == kKnownClassCounts[n]);
    if (d.contains("cache_file")) {
      const std::filesystem::path path = d["cache_file"].get<std::string>();
      bool ok = false;
      if (std::filesystem::exists(path)) {
        try {
          ok = parse_class_cache(read_text_file(path), path.string()).representatives.size() == count;
        } catch (const Error&) {
          ok = false;
        }
      }
      rep.add("cache file holds the same classes", ok);
    }
  } else if (cmd == "cn") {
    rep.add("value is sqrt(n)", std::abs(detail::number(d, "value") - std::sqrt(d.at("n").get<double>())) <= 1e-12);
    rep.add("verification residual small", detail::number(d, "verification_residual") <= 1e-10);
  } else {
    fail(ErrorKind::parse_error, "unknown document command '" + cmd + "'");
  }
  return rep;
}

}  // namespace schur

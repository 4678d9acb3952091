#pragma once

#include "geodesy/catalog.hpp"

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace geodesy {

using Json = nlohmann::ordered_json;

struct ParseError : std::invalid_argument {
  ParseError(const std::string& what, int line, int col)
      : std::invalid_argument("parse error at line " + std::to_string(line) + ", column " +
                              std::to_string(col) + ": " + what),
        line(line), column(col) {}
  explicit ParseError(const std::string& what) : std::invalid_argument(what), line(0), column(0) {}
  int line, column;
};

/// JSON document: an algebra given by sparse bracket triples with i < j,
/// optionally carrying a metric and a basis. Scalars travel as strings.
struct AlgebraDocument {
  LieAlgebra algebra;
  std::optional<InnerProduct> metric;
  std::optional<std::vector<Vec>> basis;
  bool float_mode = false;
};

namespace detail {

inline void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed,
                                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (auto* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw ParseError("unknown field '" + it.key() + "' in " + where);
  }
}

inline std::pair<int, int> line_col(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') { ++line; col = 1; }
    else ++col;
  }
  return {line, col};
}

}  // namespace detail

inline bool vec_exact(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_exact(); });
}

inline AlgebraDocument parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = detail::line_col(text, e.byte);
    throw ParseError(e.what(), line, col);
  }
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  detail::reject_unknown_keys(j, {"name", "dim", "labels", "brackets", "metric", "basis", "mode"},
                              "document");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError("missing or invalid 'dim'");
  int n = j["dim"].get<int>();
  if (n <= 0 || n > 16) throw ParseError("'dim' out of range");

  AlgebraDocument doc;
  doc.float_mode = j.value("mode", std::string("exact")) == "float";
  LieAlgebra g(n, j.value("name", std::string()));
  if (j.contains("labels")) {
    auto labels = j["labels"].get<std::vector<std::string>>();
    if ((int)labels.size() != n) throw ParseError("'labels' length does not match 'dim'");
    g.set_labels(labels);
  }
  if (j.contains("brackets")) {
    if (!j["brackets"].is_array()) throw ParseError("'brackets' must be an array");
    for (auto& entry : j["brackets"]) {
      detail::reject_unknown_keys(entry, {"i", "j", "terms"}, "bracket entry");
      int i = entry.value("i", 0), jj = entry.value("j", 0);
      if (i < 1 || jj < 1 || i > n || jj > n) throw ParseError("bracket index out of range");
      if (i >= jj) throw ParseError("bracket entries require i < j");
      if (!entry.contains("terms") || !entry["terms"].is_array())
        throw ParseError("bracket entry needs a 'terms' array");
      for (auto& term : entry["terms"]) {
        detail::reject_unknown_keys(term, {"k", "v"}, "bracket term");
        int k = term.value("k", 0);
        if (k < 1 || k > n) throw ParseError("bracket term index out of range");
        if (!term.contains("v") || !term["v"].is_string())
          throw ParseError("bracket term value must be a scalar string");
        Scalar v;
        try {
          v = Scalar::parse(term["v"].get<std::string>());
        } catch (const std::invalid_argument& e) {
          throw ParseError(e.what());
        }
        g.set_bracket_term(i - 1, jj - 1, k - 1, v);
      }
    }
  }
  doc.algebra = g;

  auto parse_scalar = [&](const Json& v) {
    if (!v.is_string()) throw ParseError("scalar values must be strings");
    try {
      return Scalar::parse(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  };
  if (j.contains("metric")) {
    if (!j["metric"].is_array() || (int)j["metric"].size() != n * n)
      throw ParseError("'metric' must be a row-major array of dim^2 scalar strings");
    SMat gram(n, n);
    for (int i = 0; i < n * n; ++i) gram.a[(size_t)i] = parse_scalar(j["metric"][(size_t)i]);
    doc.metric = InnerProduct(gram);
  }
  if (j.contains("basis")) {
    if (!j["basis"].is_array()) throw ParseError("'basis' must be an array of coordinate arrays");
    std::vector<Vec> basis;
    for (auto& row : j["basis"]) {
      if (!row.is_array() || (int)row.size() != n)
        throw ParseError("basis vectors must have 'dim' coordinates");
      Vec v;
      for (auto& s : row) v.push_back(parse_scalar(s));
      basis.push_back(v);
    }
    doc.basis = basis;
  }
  return doc;
}

inline Json document_to_json(const AlgebraDocument& doc) {
  const LieAlgebra& g = doc.algebra;
  int n = g.dim();
  bool exact = g.is_exact();
  if (doc.metric) exact = exact && doc.metric->is_exact();
  if (doc.basis)
    for (auto& b : *doc.basis) exact = exact && vec_exact(b);

  Json j;
  j["name"] = g.name();
  j["dim"] = n;
  j["labels"] = g.labels();
  j["mode"] = exact ? "exact" : "float";
  Json brackets = Json::array();
  for (int i = 0; i < n; ++i)
    for (int jj = i + 1; jj < n; ++jj) {
      Json terms = Json::array();
      for (int k = 0; k < n; ++k)
        if (!g.c(i, jj, k).is_zero()) terms.push_back(Json{{"k", k + 1}, {"v", g.c(i, jj, k).render()}});
      if (!terms.empty()) brackets.push_back(Json{{"i", i + 1}, {"j", jj + 1}, {"terms", terms}});
    }
  j["brackets"] = brackets;
  if (doc.metric) {
    Json m = Json::array();
    for (auto& s : doc.metric->gram().a) m.push_back(s.render());
    j["metric"] = m;
  }
  if (doc.basis) {
    Json b = Json::array();
    for (auto& v : *doc.basis) {
      Json row = Json::array();
      for (auto& s : v) row.push_back(s.render());
      b.push_back(row);
    }
    j["basis"] = b;
  }
  return j;
}

inline std::string render_document(const AlgebraDocument& doc) { return document_to_json(doc).dump(2) + "\n"; }

// ---- reports ----

/// Machine-form report; the human form is a pure function of the JSON.
struct Report {
  Json machine;
};

inline std::string render_human(const Report& report) {
  std::ostringstream out;
  const Json& j = report.machine;
  if (j.contains("command")) out << "command: " << j["command"].get<std::string>() << "\n";
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "command" || it.key() == "checks" || it.key() == "document") continue;
    out << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
  }
  if (j.contains("checks")) {
    size_t width = 0;
    for (auto& c : j["checks"]) width = std::max(width, c["name"].get<std::string>().size());
    for (auto& c : j["checks"]) {
      std::string name = c["name"].get<std::string>();
      out << (c["pass"].get<bool>() ? "[PASS] " : "[FAIL] ") << name
          << std::string(width - name.size() + 2, ' ') << c.value("detail", std::string()) << "\n";
    }
  }
  return out.str();
}

inline Json certificate_to_json(const BasisCertificate& cert) {
  Json j;
  j["ok"] = cert.ok;
  j["orthonormal"] = cert.orthonormal;
  Json defects = Json::array();
  for (auto& d : cert.defects) defects.push_back(d.render());
  j["defects"] = defects;
  j["independence_witness"] = cert.gram_rank_witness.render();
  j["tolerance"] = render_double(cert.tolerance);
  j["violations"] = cert.violations;
  return j;
}

inline Json obstruction_to_json(const ObstructionCertificate& oc) {
  Json j;
  j["kind"] = to_string(oc.kind);
  Json w = Json::array();
  for (auto& s : oc.witness) w.push_back(s.render());
  j["witness"] = w;
  j["trials"] = oc.trials;
  j["max_span_rank"] = oc.max_span_rank;
  j["sampled_orthogonal"] = oc.sampled_orthogonal;
  return j;
}

}  // namespace geodesy

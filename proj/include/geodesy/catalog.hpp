#pragma once

#include "geodesy/construct.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace geodesy {

using Params = std::map<std::string, Rational>;

enum class Verdict { kYes, kNo, kUnknown };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kYes: return "yes";
    case Verdict::kNo: return "no";
    case Verdict::kUnknown: return "unknown";
  }
  return "?";
}

struct Witness {
  InnerProduct metric;
  std::vector<Vec> basis;
};

struct ParamSpec {
  std::string name;
  Rational fallback;
  std::function<bool(const Rational&)> admissible;
  std::string constraint;
};

/// A named algebra with its verdicts and, where one is on record, an
/// explicit metric/basis witness.
struct CatalogEntry {
  std::string name;
  std::string source;  // classification or construction the entry comes from
  std::vector<ParamSpec> params;
  std::function<LieAlgebra(const Params&)> make;
  Verdict geodesic_basis = Verdict::kUnknown;
  Verdict orthonormal_basis = Verdict::kUnknown;
  std::function<std::optional<Witness>(const Params&)> witness;
  bool witness_is_quoted = false;  // copied from the classification literature
};

namespace detail {

inline Scalar sq(long long num, long long den = 1) { return Scalar::sqrt_rational(Rational(num, den)); }

inline Vec combo(int n, std::initializer_list<std::pair<int, Scalar>> terms) {
  Vec v((size_t)n, Scalar(0));
  for (auto& [i, s] : terms) v[(size_t)i] += s;
  return v;
}

inline std::optional<Witness> standard_witness(int n) {
  Witness w;
  w.metric = InnerProduct::standard(n);
  for (int i = 0; i < n; ++i) w.basis.push_back(unit(n, i));
  return w;
}

inline LieAlgebra make_h(int m) {
  LieAlgebra g(2 * m + 1, m == 1 ? "H3" : "H" + std::to_string(2 * m + 1));
  for (int i = 0; i < m; ++i) g.set_bracket_term(i, i + m, 2 * m, Scalar(1));
  return g;
}

inline LieAlgebra make_sl2() {
  LieAlgebra g(3, "sl2");
  g.set_bracket_term(0, 1, 1, Scalar(2));
  g.set_bracket_term(0, 2, 2, Scalar(-2));
  g.set_bracket_term(1, 2, 0, Scalar(1));
  return g;
}

inline LieAlgebra make_so3() {
  LieAlgebra g(3, "so3");
  g.set_bracket_term(0, 1, 2, Scalar(1));
  g.set_bracket_term(1, 2, 0, Scalar(1));
  g.set_bracket_term(2, 0, 1, Scalar(1));
  return g;
}

inline LieAlgebra make_sl2_semidirect_r2() {
  LieAlgebra g(5, "sl2_semidirect_r2");
  g.set_bracket_term(0, 1, 1, Scalar(2));
  g.set_bracket_term(0, 2, 2, Scalar(-2));
  g.set_bracket_term(0, 3, 3, Scalar(1));
  g.set_bracket_term(0, 4, 4, Scalar(-1));
  g.set_bracket_term(1, 2, 0, Scalar(1));
  g.set_bracket_term(2, 3, 4, Scalar(1));
  g.set_bracket_term(1, 4, 3, Scalar(1));
  return g;
}

/// 5-dimensional extensions of H3 (+) R: [X0, -] acts by the listed matrix
/// on X1..X4 and [X1, X2] = X3.
inline LieAlgebra make_h3r_extension(const std::string& name, const SMat& a) {
  LieAlgebra h(4);
  h.set_bracket_term(0, 1, 2, Scalar(1));
  LieAlgebra g = suspension(h, a, name);
  return g;
}

inline SMat diag4(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
  SMat m(4, 4);
  m.at(0, 0) = a;
  m.at(1, 1) = b;
  m.at(2, 2) = c;
  m.at(3, 3) = d;
  return m;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
  using detail::combo;
  using detail::sq;
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> list;
    auto no_params = std::vector<ParamSpec>{};
    auto none = [](const Params&) -> std::optional<Witness> { return std::nullopt; };

    // abelian R^n
    list.push_back(CatalogEntry{
        "Rn", "standard abelian algebra",
        {{"n", Rational(3), [](const Rational& v) { return v >= 1 && v <= 8 && rat_den(v) == 1; }, "1 <= n <= 8"}},
        [](const Params& p) {
          int n = (int)rat_num(p.at("n"));
          return LieAlgebra(n, "Rn");
        },
        Verdict::kYes, Verdict::kYes,
        [](const Params& p) { return detail::standard_witness((int)rat_num(p.at("n"))); }, false});

    // identity suspension of R^n
    list.push_back(CatalogEntry{
        "A_n", "identity suspension of the abelian algebra",
        {{"n", Rational(3), [](const Rational& v) { return v >= 1 && v <= 6 && rat_den(v) == 1; }, "1 <= n <= 6"}},
        [](const Params& p) {
          int n = (int)rat_num(p.at("n"));
          LieAlgebra g(n + 1, "A_n");
          std::vector<std::string> labels{"X0"};
          for (int i = 1; i <= n; ++i) labels.push_back("X" + std::to_string(i));
          g.set_labels(labels);
          for (int i = 1; i <= n; ++i) g.set_bracket_term(0, i, i, Scalar(1));
          return g;
        },
        Verdict::kNo, Verdict::kNo, none, false});

    list.push_back(CatalogEntry{"H3", "Heisenberg algebra", no_params,
                                [](const Params&) { return detail::make_h(1); }, Verdict::kYes, Verdict::kYes,
                                [](const Params&) { return detail::standard_witness(3); }, false});
    list.push_back(CatalogEntry{"H5", "Heisenberg algebra", no_params,
                                [](const Params&) { return detail::make_h(2); }, Verdict::kYes, Verdict::kYes,
                                [](const Params&) { return detail::standard_witness(5); }, false});

    list.push_back(CatalogEntry{
        "e2", "isometries of the Euclidean plane", no_params,
        [](const Params&) {
          LieAlgebra g(3, "e2");
          g.set_bracket_term(0, 1, 2, Scalar(-1));
          g.set_bracket_term(0, 2, 1, Scalar(1));
          return g;
        },
        Verdict::kYes, Verdict::kYes, [](const Params&) { return detail::standard_witness(3); }, false});

    list.push_back(CatalogEntry{
        "sl2", "split simple rank-one algebra", no_params,
        [](const Params&) { return detail::make_sl2(); }, Verdict::kYes, Verdict::kYes,
        [](const Params&) -> std::optional<Witness> {
          Witness w;
          w.metric = InnerProduct::standard(3);
          w.basis = {unit(3, 0), combo(3, {{1, sq(1, 2)}, {2, sq(1, 2)}}),
                     combo(3, {{1, sq(1, 2)}, {2, -sq(1, 2)}})};
          return w;
        },
        false});

    list.push_back(CatalogEntry{"so3", "compact simple rank-one algebra", no_params,
                                [](const Params&) { return detail::make_so3(); }, Verdict::kYes, Verdict::kYes,
                                [](const Params&) { return detail::standard_witness(3); }, false});

    list.push_back(CatalogEntry{
        "sl2_semidirect_r2", "semidirect product with the plane", no_params,
        [](const Params&) { return detail::make_sl2_semidirect_r2(); }, Verdict::kYes, Verdict::kNo,
        [](const Params&) -> std::optional<Witness> {
          Witness w;
          w.metric = InnerProduct::standard(5);
          w.basis = {unit(5, 0), combo(5, {{1, Scalar(1)}, {4, sq(2)}}), combo(5, {{1, Scalar(1)}, {4, -sq(2)}}),
                     combo(5, {{2, Scalar(1)}, {3, sq(2)}}), combo(5, {{2, Scalar(1)}, {3, -sq(2)}})};
          return w;
        },
        true});

    list.push_back(CatalogEntry{
        "m0_4", "filiform nilpotent algebra", no_params,
        [](const Params&) {
          LieAlgebra g(4, "m0_4");
          g.set_bracket_term(0, 1, 2, Scalar(1));
          g.set_bracket_term(0, 2, 3, Scalar(1));
          return g;
        },
        Verdict::kYes, Verdict::kYes, [](const Params&) { return detail::standard_witness(4); }, false});

    // suspension of the filiform algebra by the weight-(3,-4,-1,2) derivation
    list.push_back(CatalogEntry{
        "m04_suspension", "filiform suspension with weights 3,-4,-1,2", no_params,
        [](const Params&) {
          LieAlgebra g(5, "m04_suspension");
          g.set_labels({"X0", "Y1", "Y2", "Y3", "Y4"});
          g.set_bracket_term(0, 1, 1, Scalar(3));
          g.set_bracket_term(0, 2, 2, Scalar(-4));
          g.set_bracket_term(0, 3, 3, Scalar(-1));
          g.set_bracket_term(0, 4, 4, Scalar(2));
          g.set_bracket_term(1, 2, 3, Scalar(1));
          g.set_bracket_term(1, 3, 4, Scalar(1));
          return g;
        },
        Verdict::kYes, Verdict::kNo,
        [](const Params&) -> std::optional<Witness> {
          Witness w;
          SMat gram = SMat::identity(5);
          gram.at(4, 4) = Scalar(Rational(1, 4));
          w.metric = InnerProduct(gram);
          w.basis = {unit(5, 0),
                     combo(5, {{1, Scalar(1)}, {2, sq(3, 4)}}),
                     combo(5, {{1, Scalar(1)}, {2, -sq(3, 4)}}),
                     combo(5, {{2, Scalar(Rational(-1, 4))}, {3, Scalar(Rational(1, 2))}, {4, Scalar(1)}}),
                     combo(5, {{2, Scalar(Rational(-1, 4))}, {3, Scalar(Rational(-1, 2))}, {4, Scalar(1)}})};
          return w;
        },
        false});

    list.push_back(CatalogEntry{
        "oscillator", "rotation suspension of the Heisenberg algebra", no_params,
        [](const Params&) {
          LieAlgebra h = detail::make_h(1);
          SMat phi(3, 3);
          phi.at(1, 0) = Scalar(1);
          phi.at(0, 1) = Scalar(-1);
          return suspension(h, phi, "oscillator");
        },
        Verdict::kYes, Verdict::kYes, none, false});

    // --- solvable dimension-4 list (nonunimodular) ---
    list.push_back(CatalogEntry{
        "M2", "solvable dim-4 list", no_params,
        [](const Params&) {
          LieAlgebra g(4, "M2");
          g.set_bracket_term(0, 1, 1, Scalar(1));
          g.set_bracket_term(0, 2, 2, Scalar(1));
          g.set_bracket_term(0, 3, 3, Scalar(1));
          return g;
        },
        Verdict::kNo, Verdict::kNo, none, false});

    list.push_back(CatalogEntry{
        "M3", "solvable dim-4 list",
        {{"a", Rational(1), [](const Rational&) { return true; }, "any"}},
        [](const Params& p) {
          Rational a = p.at("a");
          LieAlgebra g(4, "M3");
          g.set_bracket_term(0, 1, 1, Scalar(1));
          g.set_bracket_term(0, 2, 3, Scalar(1));
          g.set_bracket_term(0, 3, 2, Scalar(-a));
          g.set_bracket_term(0, 3, 3, Scalar(a + 1));
          return g;
        },
        Verdict::kYes, Verdict::kNo, none, false});

    list.push_back(CatalogEntry{
        "M4", "solvable dim-4 list", no_params,
        [](const Params&) {
          LieAlgebra g(4, "M4");
          g.set_bracket_term(0, 1, 2, Scalar(1));
          g.set_bracket_term(0, 2, 2, Scalar(1));
          return g;
        },
        Verdict::kYes, Verdict::kNo, none, false});

    list.push_back(CatalogEntry{
        "M6", "solvable dim-4 list",
        {{"a", Rational(1), [](const Rational&) { return true; }, "any"},
         {"b", Rational(1), [](const Rational&) { return true; }, "any"}},
        [](const Params& p) {
          LieAlgebra g(4, "M6");
          g.set_bracket_term(0, 1, 2, Scalar(1));
          g.set_bracket_term(0, 2, 3, Scalar(1));
          g.set_bracket_term(0, 3, 1, Scalar(p.at("a")));
          g.set_bracket_term(0, 3, 2, Scalar(p.at("b")));
          g.set_bracket_term(0, 3, 3, Scalar(1));
          return g;
        },
        Verdict::kYes, Verdict::kNo, none, false});

    list.push_back(CatalogEntry{
        "M8", "solvable dim-4 list", no_params,
        [](const Params&) {
          LieAlgebra g(4, "M8");
          g.set_bracket_term(0, 1, 1, Scalar(1));
          g.set_bracket_term(2, 3, 3, Scalar(1));
          return g;
        },
        Verdict::kYes, Verdict::kNo,
        [](const Params&) -> std::optional<Witness> {
          Witness w;
          std::vector<Vec> frame = {combo(4, {{0, Scalar(1)}, {3, Scalar(1)}}), unit(4, 1),
                                    combo(4, {{1, Scalar(1)}, {2, Scalar(1)}}), unit(4, 3)};
          w.metric = InnerProduct::from_orthonormal_frame(detail::frame_from_columns(frame));
          w.basis = {unit(4, 0), combo(4, {{0, Scalar(1)}, {3, Scalar(1)}}), unit(4, 2),
                     combo(4, {{1, Scalar(1)}, {2, Scalar(1)}})};
          return w;
        },
        true});

    list.push_back(CatalogEntry{
        "M9", "solvable dim-4 list", no_params,
        [](const Params&) {
          LieAlgebra g(4, "M9");
          g.set_bracket_term(0, 1, 1, Scalar(1));
          g.set_bracket_term(0, 1, 2, Scalar(-1));
          g.set_bracket_term(0, 2, 1, Scalar(1));
          g.set_bracket_term(3, 1, 1, Scalar(1));
          g.set_bracket_term(3, 2, 2, Scalar(1));
          return g;
        },
        Verdict::kNo, Verdict::kNo, none, false});

    list.push_back(CatalogEntry{
        "M12", "solvable dim-4 list", no_params,
        [](const Params&) {
          LieAlgebra g(4, "M12");
          g.set_bracket_term(0, 1, 1, Scalar(1));
          g.set_bracket_term(0, 2, 2, Scalar(2));
          g.set_bracket_term(0, 3, 3, Scalar(1));
          g.set_bracket_term(3, 1, 2, Scalar(1));
          return g;
        },
        Verdict::kNo, Verdict::kNo, none, false});

    list.push_back(CatalogEntry{
        "M13", "solvable dim-4 list",
        {{"a", Rational(1), [](const Rational&) { return true; }, "any"}},
        [](const Params& p) {
          LieAlgebra g(4, "M13");
          g.set_bracket_term(0, 1, 1, Scalar(1));
          g.set_bracket_term(0, 1, 3, Scalar(p.at("a")));
          g.set_bracket_term(0, 2, 2, Scalar(1));
          g.set_bracket_term(0, 3, 1, Scalar(1));
          g.set_bracket_term(3, 1, 2, Scalar(1));
          return g;
        },
        Verdict::kNo, Verdict::kNo, none, false});

    // --- solvable dimension-5, nilradical H3 (+) R ---
    auto pm_sqrt2_x3_x4 = [](std::vector<Vec>& basis) {
      basis.push_back(combo(5, {{3, sq(2)}, {4, Scalar(1)}}));
      basis.push_back(combo(5, {{3, -sq(2)}, {4, Scalar(1)}}));
    };

    list.push_back(CatalogEntry{
        "g19", "solvable dim-5 list",
        {{"alpha", Rational(0), [](const Rational& v) { return v != -1; }, "alpha != -1"}},
        [](const Params& p) {
          Rational a = p.at("alpha");
          return detail::make_h3r_extension(
              "g19", detail::diag4(Scalar(1), Scalar(a), Scalar(1 + a), Scalar(-2 * (1 + a))));
        },
        Verdict::kYes, Verdict::kNo,
        [](const Params& p) -> std::optional<Witness> {
          Rational a = p.at("alpha");
          Witness w;
          w.metric = InnerProduct::standard(5);
          w.basis = {unit(5, 0)};
          if (a >= 0) {
            w.basis.push_back(combo(5, {{1, Scalar::sqrt_rational(2 * (1 + a))}, {4, Scalar(1)}}));
            w.basis.push_back(combo(5, {{2, Scalar::sqrt_rational(2 * (1 + a))}, {4, Scalar::sqrt_rational(a)}}));
            w.basis.push_back(combo(5, {{3, sq(2)}, {4, Scalar(1)}}));
          } else {
            w.basis.push_back(combo(5, {{1, Scalar::sqrt_rational(-a)}, {2, Scalar(1)}}));
            w.basis.push_back(combo(5, {{1, -Scalar::sqrt_rational(-a)}, {2, Scalar(1)}}));
            w.basis.push_back(combo(5, {{3, sq(2)}, {4, Scalar(1)}}));
          }
          w.basis.push_back(combo(5, {{3, -sq(2)}, {4, Scalar(1)}}));
          return w;
        },
        true});

    list.push_back(CatalogEntry{
        "g23", "solvable dim-5 list", no_params,
        [](const Params&) {
          SMat a = detail::diag4(Scalar(1), Scalar(1), Scalar(2), Scalar(-4));
          a.at(1, 0) = Scalar(1);
          return detail::make_h3r_extension("g23", a);
        },
        Verdict::kYes, Verdict::kNo,
        [pm_sqrt2_x3_x4](const Params&) -> std::optional<Witness> {
          Witness w;
          w.metric = InnerProduct::standard(5);
          w.basis = {unit(5, 0), combo(5, {{1, Scalar(2)}, {4, Scalar(1)}}),
                     combo(5, {{2, Scalar(2)}, {4, Scalar(1)}})};
          pm_sqrt2_x3_x4(w.basis);
          return w;
        },
        true});

    list.push_back(CatalogEntry{
        "g25", "solvable dim-5 list",
        {{"p", Rational(1), [](const Rational& v) { return v != 0; }, "p != 0"}},
        [](const Params& pr) {
          Rational p = pr.at("p");
          SMat a = detail::diag4(Scalar(p), Scalar(p), Scalar(2 * p), Scalar(-4 * p));
          a.at(1, 0) = Scalar(1);
          a.at(0, 1) = Scalar(-1);
          return detail::make_h3r_extension("g25", a);
        },
        Verdict::kYes, Verdict::kNo,
        [pm_sqrt2_x3_x4](const Params&) -> std::optional<Witness> {
          Witness w;
          w.metric = InnerProduct::standard(5);
          w.basis = {unit(5, 0), combo(5, {{1, Scalar(2)}, {4, Scalar(1)}}),
                     combo(5, {{2, Scalar(2)}, {4, Scalar(1)}})};
          pm_sqrt2_x3_x4(w.basis);
          return w;
        },
        true});

    list.push_back(CatalogEntry{
        "g28", "solvable dim-5 list", no_params,
        [](const Params&) {
          SMat a = detail::diag4(Scalar(Rational(-3, 2)), Scalar(1), Scalar(Rational(-1, 2)), Scalar(1));
          a.at(3, 1) = Scalar(1);
          return detail::make_h3r_extension("g28", a);
        },
        Verdict::kYes, Verdict::kNo,
        [pm_sqrt2_x3_x4](const Params&) -> std::optional<Witness> {
          Witness w;
          w.metric = InnerProduct::standard(5);
          w.basis = {unit(5, 0), combo(5, {{1, Scalar(1)}, {2, sq(3, 2)}}),
                     combo(5, {{1, Scalar(1)}, {2, -sq(3, 2)}})};
          pm_sqrt2_x3_x4(w.basis);
          return w;
        },
        true});

    // --- solvable dimension-5, abelian nilradical R^3 ---
    list.push_back(CatalogEntry{
        "g33", "solvable dim-5 list", no_params,
        [](const Params&) {
          LieAlgebra g(5, "g33");
          g.set_bracket_term(0, 2, 2, Scalar(1));
          g.set_bracket_term(0, 4, 4, Scalar(-1));
          g.set_bracket_term(1, 3, 3, Scalar(1));
          g.set_bracket_term(1, 4, 4, Scalar(-1));
          return g;
        },
        Verdict::kYes, Verdict::kNo, none, false});

    list.push_back(CatalogEntry{
        "g35", "solvable dim-5 list", no_params,
        [](const Params&) {
          LieAlgebra g(5, "g35");
          g.set_bracket_term(0, 2, 2, Scalar(-2));
          g.set_bracket_term(0, 3, 3, Scalar(1));
          g.set_bracket_term(0, 4, 4, Scalar(1));
          g.set_bracket_term(1, 3, 4, Scalar(-1));
          g.set_bracket_term(1, 4, 3, Scalar(1));
          return g;
        },
        Verdict::kYes, Verdict::kYes,
        [](const Params&) -> std::optional<Witness> {
          Witness w;
          std::vector<Vec> frame = {
              unit(5, 0), unit(5, 1), combo(5, {{2, Scalar(1)}, {3, Scalar(1)}}),
              combo(5, {{2, Scalar(1)}, {3, Scalar(Rational(-1, 2))}, {4, sq(3, 4)}}),
              combo(5, {{2, Scalar(1)}, {3, Scalar(Rational(-1, 2))}, {4, -sq(3, 4)}})};
          w.metric = InnerProduct::from_orthonormal_frame(detail::frame_from_columns(frame));
          w.basis = frame;
          return w;
        },
        true});

    // --- reductive / decomposable dimension-5 ---
    list.push_back(CatalogEntry{
        "sl2_plus_r2", "reductive dim-5 sum", no_params,
        [](const Params&) { return direct_sum(detail::make_sl2(), LieAlgebra(2, "R2"), "sl2_plus_r2"); },
        Verdict::kYes, Verdict::kYes,
        [](const Params&) -> std::optional<Witness> {
          Witness w;
          w.metric = InnerProduct::standard(5);
          w.basis = {unit(5, 0), combo(5, {{1, sq(1, 2)}, {2, sq(1, 2)}}),
                     combo(5, {{1, sq(1, 2)}, {2, -sq(1, 2)}}), unit(5, 3), unit(5, 4)};
          return w;
        },
        false});

    list.push_back(CatalogEntry{
        "so3_plus_r2", "reductive dim-5 sum", no_params,
        [](const Params&) { return direct_sum(detail::make_so3(), LieAlgebra(2, "R2"), "so3_plus_r2"); },
        Verdict::kYes, Verdict::kYes,
        [](const Params&) { return detail::standard_witness(5); }, false});

    return list;
  }();
  return entries;
}

inline const CatalogEntry& catalog_entry(const std::string& name) {
  for (auto& e : catalog())
    if (e.name == name) return e;
  throw UnknownName(name);
}

/// Fills defaults, rejects unknown or inadmissible parameters.
inline Params resolve_params(const CatalogEntry& e, const Params& given) {
  Params out;
  for (auto& [k, v] : given) {
    bool known = false;
    for (auto& ps : e.params) known = known || ps.name == k;
    if (!known) throw ParamOutOfRange("entry " + e.name + " has no parameter '" + k + "'");
  }
  for (auto& ps : e.params) {
    auto it = given.find(ps.name);
    Rational v = it == given.end() ? ps.fallback : it->second;
    if (!ps.admissible(v))
      throw ParamOutOfRange(e.name + ": " + ps.name + " = " + render_rational(v) + " (needs " + ps.constraint + ")");
    out[ps.name] = v;
  }
  return out;
}

inline LieAlgebra instantiate(const std::string& name, const Params& params = {}) {
  const CatalogEntry& e = catalog_entry(name);
  return e.make(resolve_params(e, params));
}

inline std::optional<Witness> catalog_witness(const std::string& name, const Params& params = {}) {
  const CatalogEntry& e = catalog_entry(name);
  return e.witness(resolve_params(e, params));
}

inline std::pair<Verdict, Verdict> catalog_verdict(const std::string& name, const Params& params = {}) {
  const CatalogEntry& e = catalog_entry(name);
  resolve_params(e, params);
  return {e.geodesic_basis, e.orthonormal_basis};
}

}  // namespace geodesy

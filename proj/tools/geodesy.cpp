// geodesy: structural invariants of finite-dimensional real Lie algebras,
// geodesic-basis checking and construction, and the reproduction harness.

#include "geodesy/verify_paper.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace geodesy;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;
constexpr int kExitObstruction = 3;
constexpr int kExitUndetermined = 4;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("GEODESY_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw std::invalid_argument("GEODESY_SEED is not an unsigned integer");
    }
  }
  return 42;
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Params parse_params(const std::vector<std::string>& extras) {
  Params out;
  for (auto& kv : extras) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected parameter of the form name=value, got: " + kv);
    out[kv.substr(0, eq)] = parse_rational(kv.substr(eq + 1));
  }
  return out;
}

struct LoadedAlgebra {
  AlgebraDocument doc;
  std::optional<Witness> catalog_wit;
};

/// "catalog:NAME" (params from the extra args) or a JSON document path / '-'.
LoadedAlgebra load_algebra(const std::string& ref, const std::vector<std::string>& extras) {
  LoadedAlgebra out;
  if (ref.rfind("catalog:", 0) == 0) {
    std::string name = ref.substr(8);
    Params params = parse_params(extras);
    out.doc.algebra = instantiate(name, params);
    out.catalog_wit = catalog_witness(name, params);
    if (out.catalog_wit) {
      out.doc.metric = out.catalog_wit->metric;
      out.doc.basis = out.catalog_wit->basis;
    }
    return out;
  }
  if (!extras.empty()) throw std::invalid_argument("parameters only apply to catalog references");
  out.doc = parse_document(slurp(ref));
  return out;
}

void emit(const Report& rep, bool json) {
  if (json)
    std::cout << rep.machine.dump(2) << "\n";
  else
    std::cout << render_human(rep);
}

Json subspace_dims(const std::vector<Subspace>& chain) {
  Json arr = Json::array();
  for (auto& s : chain) arr.push_back(s.dim());
  return arr;
}

int cmd_info(const std::string& ref, const std::vector<std::string>& extras, bool json) {
  LoadedAlgebra loaded = load_algebra(ref, extras);
  const LieAlgebra& g = loaded.doc.algebra;
  Report rep;
  rep.machine["command"] = "info";
  rep.machine["name"] = g.name();
  rep.machine["dim"] = g.dim();
  rep.machine["mode"] = g.is_exact() ? "exact" : "float";
  auto violations = validate(g);
  rep.machine["valid"] = violations.empty();
  if (!violations.empty()) {
    Json v = Json::array();
    for (auto& viol : violations) v.push_back(viol.describe());
    rep.machine["violations"] = v;
    rep.machine["document"] = document_to_json(loaded.doc);
    emit(rep, json);
    return kExitCheckFailed;
  }
  rep.machine["derived_series_dims"] = subspace_dims(derived_series(g));
  rep.machine["lower_central_dims"] = subspace_dims(lower_central_series(g));
  bool solvable = is_solvable(g);
  rep.machine["solvable"] = solvable;
  rep.machine["nilpotent"] = is_nilpotent(g);
  rep.machine["center_dim"] = center(g).dim();
  if (solvable) rep.machine["nilradical_dim"] = nilradical_solvable(g).dim();
  bool unimod = is_unimodular(g);
  rep.machine["unimodular"] = unimod;
  Subspace kern = unimodular_kernel(g);
  rep.machine["unimodular_kernel_dim"] = kern.dim();
  if (!unimod && kern.dim() >= 3) {
    auto shape = geodesy::detail::heisenberg_shape(g, kern);
    rep.machine["kernel_heisenberg"] = shape.has_value();
  }
  rep.machine["document"] = document_to_json(loaded.doc);
  emit(rep, json);
  return kExitOk;
}

InnerProduct metric_from_arg(const std::string& arg, int n) {
  if (arg == "identity" || arg == "standard") return InnerProduct::standard(n);
  Json j = Json::parse(slurp(arg));
  const Json* m = nullptr;
  if (j.is_array()) m = &j;
  else if (j.is_object() && j.contains("metric")) m = &j["metric"];
  if (!m || (int)m->size() != n * n)
    throw std::invalid_argument("metric must be a row-major array of dim^2 scalar strings");
  SMat gram(n, n);
  for (int i = 0; i < n * n; ++i) gram.a[(size_t)i] = Scalar::parse((*m)[(size_t)i].get<std::string>());
  return InnerProduct(gram);
}

std::vector<Vec> basis_from_arg(const std::string& arg, int n) {
  if (arg == "standard" || arg == "identity") {
    std::vector<Vec> basis;
    for (int i = 0; i < n; ++i) basis.push_back(unit(n, i));
    return basis;
  }
  Json j = Json::parse(slurp(arg));
  const Json* b = nullptr;
  if (j.is_array()) b = &j;
  else if (j.is_object() && j.contains("basis")) b = &j["basis"];
  if (!b) throw std::invalid_argument("basis must be an array of coordinate arrays");
  std::vector<Vec> basis;
  for (auto& row : *b) {
    if ((int)row.size() != n) throw std::invalid_argument("basis vector has wrong length");
    Vec v;
    for (auto& s : row) v.push_back(Scalar::parse(s.get<std::string>()));
    basis.push_back(v);
  }
  return basis;
}

int cmd_check(const std::string& ref, const std::vector<std::string>& extras,
              const std::string& metric_arg, const std::string& basis_arg, bool orthonormal,
              double tolerance, bool json) {
  LoadedAlgebra loaded = load_algebra(ref, extras);
  const LieAlgebra& g = loaded.doc.algebra;
  std::optional<InnerProduct> metric = loaded.doc.metric;
  std::optional<std::vector<Vec>> basis = loaded.doc.basis;
  if (!metric_arg.empty()) metric = metric_from_arg(metric_arg, g.dim());
  if (!basis_arg.empty()) basis = basis_from_arg(basis_arg, g.dim());
  if (!metric || !basis)
    throw std::invalid_argument("check needs a metric and a basis (embedded, from the catalog, or via --metric/--basis)");

  BasisCertificate cert = verify_basis(g, *metric, *basis, orthonormal, tolerance);
  Report rep;
  rep.machine["command"] = "check";
  rep.machine["name"] = g.name();
  rep.machine["orthonormal_required"] = orthonormal;
  rep.machine["certificate"] = certificate_to_json(cert);
  rep.machine["pass"] = cert.ok;
  emit(rep, json);
  return cert.ok ? kExitOk : kExitCheckFailed;
}

int cmd_construct(const std::string& ref, const std::vector<std::string>& extras,
                  const std::string& theorem, std::uint64_t seed, const std::string& out_path,
                  bool json) {
  LoadedAlgebra loaded = load_algebra(ref, extras);
  const LieAlgebra& g = loaded.doc.algebra;
  Report rep;
  rep.machine["command"] = "construct";
  rep.machine["name"] = g.name();
  rep.machine["theorem"] = theorem;
  rep.machine["seed"] = seed;

  auto find_codim1 = [&](bool heisenberg) -> std::optional<Subspace> {
    std::vector<Subspace> candidates;
    auto add = [&](const Subspace& s) {
      if (s.dim() != g.dim() - 1) return;
      for (auto& c : candidates)
        if (c == s) return;
      candidates.push_back(s);
    };
    add(unimodular_kernel(g));
    add(derived_subalgebra(g));
    if (is_solvable(g)) {
      try {
        add(nilradical_solvable(g));
      } catch (const std::exception&) {
      }
    }
    for (auto& h : candidates) {
      if (heisenberg && geodesy::detail::heisenberg_shape(g, h)) return h;
      if (!heisenberg && derived_of(g, h).dim() == 0) return h;
    }
    return std::nullopt;
  };

  AutoOutcome outcome = Undetermined{{"no constructor attempted"}};
  try {
    if (theorem == "auto") {
      outcome = auto_construct(g, seed);
    } else if (theorem == "nilabelian") {
      outcome = construct_abelian_nilradical(g);
    } else if (theorem == "rdiag") {
      outcome = construct_rdiag(g, seed);
    } else if (theorem == "codim1") {
      auto h = find_codim1(false);
      if (!h) throw NotCodim1Abelian();
      auto r = construct_codim1_abelian(g, *h, seed);
      outcome = std::holds_alternative<ConstructionResult>(r)
                    ? AutoOutcome(std::get<ConstructionResult>(r))
                    : AutoOutcome(std::get<ObstructionCertificate>(r));
    } else if (theorem == "heisenberg") {
      auto h = find_codim1(true);
      if (!h) throw NotHeisenbergIdeal();
      auto r = construct_heisenberg_codim1(g, *h, seed);
      outcome = std::holds_alternative<ConstructionResult>(r)
                    ? AutoOutcome(std::get<ConstructionResult>(r))
                    : AutoOutcome(std::get<ObstructionCertificate>(r));
    } else {
      throw std::invalid_argument("unknown --theorem value: " + theorem);
    }
  } catch (const IsomorphicToAn&) {
    outcome = obstruction_certificate(g, InnerProduct::standard(g.dim()),
                                      ObstructionKind::kIdentitySuspension, 200, seed);
  } catch (const std::domain_error& e) {
    outcome = Undetermined{{e.what()}};
  }

  if (std::holds_alternative<ConstructionResult>(outcome)) {
    const auto& res = std::get<ConstructionResult>(outcome);
    rep.machine["result"] = "construction";
    rep.machine["method"] = res.method;
    rep.machine["certificate"] = certificate_to_json(res.certificate);
    AlgebraDocument doc{g, res.metric, res.basis, !res.metric.is_exact()};
    rep.machine["document"] = document_to_json(doc);
    emit(rep, json);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      out << render_document(doc);
    }
    return kExitOk;
  }
  if (std::holds_alternative<ObstructionCertificate>(outcome)) {
    rep.machine["result"] = "obstruction";
    rep.machine["obstruction"] = obstruction_to_json(std::get<ObstructionCertificate>(outcome));
    emit(rep, json);
    return kExitObstruction;
  }
  rep.machine["result"] = "undetermined";
  rep.machine["failures"] = std::get<Undetermined>(outcome).failures;
  emit(rep, json);
  return kExitUndetermined;
}

int cmd_sample(const std::string& ref, const std::vector<std::string>& extras,
               const std::string& metric_arg, int trials, std::uint64_t seed, bool json) {
  LoadedAlgebra loaded = load_algebra(ref, extras);
  const LieAlgebra& g = loaded.doc.algebra;
  InnerProduct metric = metric_arg.empty() ? (loaded.doc.metric ? *loaded.doc.metric
                                                                : InnerProduct::standard(g.dim()))
                                           : metric_from_arg(metric_arg, g.dim());
  auto samples = sample_geodesics(g, metric, trials, seed);
  Report rep;
  rep.machine["command"] = "sample";
  rep.machine["name"] = g.name();
  rep.machine["trials"] = trials;
  rep.machine["seed"] = seed;
  rep.machine["converged"] = samples.size();
  rep.machine["span_rank"] = span_rank(samples);
  Json arr = Json::array();
  for (auto& s : samples) {
    Json row = Json::array();
    for (auto& c : s) row.push_back(c.render());
    arr.push_back(row);
  }
  rep.machine["samples"] = arr;
  emit(rep, json);
  return kExitOk;
}

int cmd_verify_paper(const std::string& filter, std::uint64_t seed, bool json) {
  Report rep = run_verify_paper(filter, seed);
  emit(rep, json);
  return rep.machine["pass"].get<bool>() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodesy: geodesic bases of left-invariant metrics on Lie algebras"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "print the machine-form report");

  std::string ref, metric_arg, basis_arg, out_path, filter;
  std::vector<std::string> extras;
  bool orthonormal = false;
  double tolerance = geodesy::tol::defect;
  std::string theorem = "auto";
  int trials = 100;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& v) { seed = v; seed_given = true; },
        "random seed (default: GEODESY_SEED or 42)");
  };

  CLI::App* info = app.add_subcommand("info", "structural invariants of an algebra");
  info->add_option("algebra", ref, "catalog:NAME, a JSON file, or '-'")->required();
  info->add_option("params", extras, "catalog parameters as name=value");

  CLI::App* check = app.add_subcommand("check", "verify a metric/basis pair");
  check->add_option("algebra", ref)->required();
  check->add_option("params", extras);
  check->add_option("--metric", metric_arg, "metric JSON (file, '-', or 'identity')");
  check->add_option("--basis", basis_arg, "basis JSON (file, '-', or 'standard')");
  check->add_flag("--orthonormal", orthonormal, "require an orthonormal basis");
  check->add_option("--tol", tolerance, "defect tolerance in float mode");

  CLI::App* construct = app.add_subcommand("construct", "build an inner product with a geodesic basis");
  construct->add_option("algebra", ref)->required();
  construct->add_option("params", extras);
  construct->add_option("--theorem", theorem, "auto|nilabelian|rdiag|codim1|heisenberg")
      ->check(CLI::IsMember({"auto", "nilabelian", "rdiag", "codim1", "heisenberg"}));
  construct->add_option("--out", out_path, "write the metric+basis document here");
  add_seed(construct);

  CLI::App* sample = app.add_subcommand("sample", "randomized geodesic exploration");
  sample->add_option("algebra", ref)->required();
  sample->add_option("params", extras);
  sample->add_option("--metric", metric_arg);
  sample->add_option("--trials", trials, "number of random starts");
  add_seed(sample);

  CLI::App* verify = app.add_subcommand("verify-paper", "run the reproduction check suite");
  verify->add_option("--filter", filter, "only run checks whose name contains this substring");
  add_seed(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::uint64_t use_seed = seed_given ? seed : default_seed();
    if (info->parsed()) return cmd_info(ref, extras, json);
    if (check->parsed()) return cmd_check(ref, extras, metric_arg, basis_arg, orthonormal, tolerance, json);
    if (construct->parsed()) return cmd_construct(ref, extras, theorem, use_seed, out_path, json);
    if (sample->parsed()) return cmd_sample(ref, extras, metric_arg, trials, use_seed, json);
    if (verify->parsed()) return cmd_verify_paper(filter, use_seed, json);
  } catch (const geodesy::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

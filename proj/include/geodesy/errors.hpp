#pragma once

#include <stdexcept>
#include <string>

namespace geodesy {

struct NotSolvable : std::domain_error {
  NotSolvable() : std::domain_error("algebra is not solvable") {}
};
struct NumericalFailure : std::runtime_error {
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};
struct NotAnIdeal : std::domain_error {
  NotAnIdeal() : std::domain_error("subspace is not an ideal") {}
};
struct NotADerivation : std::domain_error {
  NotADerivation() : std::domain_error("operator is not a derivation") {}
};
struct NonzeroTrace : std::domain_error {
  NonzeroTrace() : std::domain_error("matrix trace is not zero") {}
};
struct DefiniteForm : std::domain_error {
  DefiniteForm() : std::domain_error("quadratic form is semidefinite and nonzero") {}
};
struct NotCommuting : std::domain_error {
  NotCommuting() : std::domain_error("operators do not pairwise commute") {}
};
struct NotRDiagonal : std::domain_error {
  explicit NotRDiagonal(const std::string& witness)
      : std::domain_error("restricted adjoint action is not semisimple with real eigenvalues: " + witness) {}
};
struct IsomorphicToAn : std::domain_error {
  IsomorphicToAn() : std::domain_error("algebra is the identity suspension of an abelian algebra") {}
};
struct HypothesisFailed : std::domain_error {
  explicit HypothesisFailed(const std::string& which)
      : std::domain_error("hypothesis failed: " + which), hypothesis(which) {}
  std::string hypothesis;
};
struct NotCodim1Abelian : std::domain_error {
  NotCodim1Abelian() : std::domain_error("not a codimension-one abelian ideal") {}
};
struct NotHeisenbergIdeal : std::domain_error {
  NotHeisenbergIdeal() : std::domain_error("ideal is not a Heisenberg algebra") {}
};
struct TrivialCenter : std::domain_error {
  TrivialCenter() : std::domain_error("centre is trivial") {}
};
struct WrongShape : std::domain_error {
  explicit WrongShape(const std::string& what) : std::domain_error("algebra shape mismatch: " + what) {}
};
struct UnknownName : std::invalid_argument {
  explicit UnknownName(const std::string& name) : std::invalid_argument("unknown catalog name: " + name) {}
};
struct ParamOutOfRange : std::invalid_argument {
  explicit ParamOutOfRange(const std::string& what) : std::invalid_argument("parameter out of range: " + what) {}
};

}  // namespace geodesy

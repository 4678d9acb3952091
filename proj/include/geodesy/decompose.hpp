#pragma once

#include "geodesy/invariants.hpp"

#include <algorithm>
#include <complex>
#include <vector>

namespace geodesy {

// ---- commuting-family block decomposition ----

/// One joint block: a subspace invariant under the whole family, with every
/// operator acting as c*I + nilpotent (real kind) or as a + b*J + nilpotent
/// on interleaved planes (complex kind), in the recorded basis the diagonal
/// of every operator is constant.
struct CommutingBlock {
  SMat basis;  // rows: block basis in the family's coordinate space
  bool complex_kind = false;
  std::vector<std::pair<double, double>> data;  // per operator: (c, 0) or (a, b)
  int dim() const { return basis.rows; }
};

struct CommutingBlockDecomposition {
  int ambient = 0;
  std::vector<CommutingBlock> blocks;
};

namespace detail {

struct JointSpace {
  MatC basis;  // orthonormal columns
  std::vector<Cplx> evals;
};

inline MatC restrict_to(const MatC& basis, const Eigen::MatrixXd& a) {
  return basis.adjoint() * a.cast<Cplx>() * basis;
}

/// Columns forming a flag with N_j(level k) in span(levels < k), for a
/// commuting nilpotent family.
inline MatC nilpotent_flag(const std::vector<MatC>& ns, int k) {
  MatC basis(k, 0);
  while (basis.cols() < k) {
    MatC p = MatC::Identity(k, k);
    if (basis.cols() > 0) p -= basis * basis.adjoint();
    MatC stacked((Eigen::Index)ns.size() * k, k);
    if (ns.empty()) {
      basis = MatC::Identity(k, k);
      break;
    }
    for (size_t j = 0; j < ns.size(); ++j) stacked.block((Eigen::Index)j * k, 0, k, k) = p * ns[j];
    MatC ker = kernel_orthobasis(stacked, tol::eig_cluster);
    MatC fresh = p * ker;  // new directions only
    Eigen::JacobiSVD<MatC> svd(fresh, Eigen::ComputeThinU);
    int add = 0;
    double top = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()[i] > 1e-9 * std::max(1.0, top)) ++add;
    if (add == 0) throw NumericalFailure("nilpotent flag construction stalled");
    MatC grown(k, basis.cols() + add);
    grown << basis, svd.matrixU().leftCols(add);
    basis = grown;
  }
  return basis;
}

inline std::vector<Cplx> cluster_representatives(const Eigen::VectorXcd& evals, double t) {
  std::vector<Cplx> reps;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    bool found = false;
    for (auto& r : reps)
      if (std::abs(evals[i] - r) <= t) { found = true; break; }
    if (!found) reps.push_back(evals[i]);
  }
  return reps;
}

}  // namespace detail

/// Joint block decomposition of pairwise-commuting operators given as square
/// matrices on R^d: complexify, split into joint generalized eigenspaces,
/// pair conjugates, and put a constant-diagonal basis in each block.
inline CommutingBlockDecomposition decompose_commuting_family(const std::vector<SMat>& ops_in) {
  if (ops_in.empty()) throw std::invalid_argument("empty operator family");
  int d = ops_in[0].rows;
  std::vector<Eigen::MatrixXd> ops;
  for (auto& o : ops_in) ops.push_back(o.to_eigen());
  double scale = 1.0;
  for (auto& o : ops) scale = std::max(scale, o.norm());
  for (size_t i = 0; i < ops.size(); ++i)
    for (size_t j = i + 1; j < ops.size(); ++j)
      if ((ops[i] * ops[j] - ops[j] * ops[i]).norm() > 1e-8 * scale * scale) throw NotCommuting();

  // joint generalized eigenspaces over C
  std::vector<detail::JointSpace> spaces{{detail::MatC::Identity(d, d), {}}};
  for (auto& a : ops) {
    std::vector<detail::JointSpace> next;
    for (auto& sp : spaces) {
      detail::MatC m = detail::restrict_to(sp.basis, a);
      int k = (int)m.cols();
      Eigen::ComplexEigenSolver<detail::MatC> es(m);
      auto reps = detail::cluster_representatives(es.eigenvalues(), tol::eig_cluster * std::max(1.0, scale));
      for (auto mu : reps) {
        detail::MatC nk = detail::MatC::Identity(k, k);
        detail::MatC nmat = m - mu * detail::MatC::Identity(k, k);
        for (int p = 0; p < k; ++p) nk = nk * nmat;  // (M - mu)^k
        detail::MatC kerb = detail::kernel_orthobasis(nk, tol::eig_cluster);
        if (kerb.cols() == 0) continue;
        detail::JointSpace child{detail::MatC(sp.basis * kerb), sp.evals};
        child.evals.push_back(mu);
        next.push_back(std::move(child));
      }
    }
    int total = 0;
    for (auto& sp : next) total += (int)sp.basis.cols();
    if (total != d) throw NumericalFailure("generalized eigenspace split lost dimensions");
    spaces = std::move(next);
  }

  // pair conjugate spaces
  auto tuple_is_real = [&](const detail::JointSpace& sp) {
    for (auto& e : sp.evals)
      if (std::abs(e.imag()) > tol::eig_cluster * std::max(1.0, scale)) return false;
    return true;
  };
  auto tuples_conjugate = [&](const detail::JointSpace& a, const detail::JointSpace& b) {
    for (size_t i = 0; i < a.evals.size(); ++i)
      if (std::abs(a.evals[i] - std::conj(b.evals[i])) > 10 * tol::eig_cluster * std::max(1.0, scale))
        return false;
    return true;
  };

  CommutingBlockDecomposition out;
  out.ambient = d;
  std::vector<bool> used(spaces.size(), false);
  for (size_t si = 0; si < spaces.size(); ++si) {
    if (used[si]) continue;
    used[si] = true;
    auto& sp = spaces[si];
    CommutingBlock block;
    if (tuple_is_real(sp)) {
      block.complex_kind = false;
      int k = (int)sp.basis.cols();
      // constant-diagonal basis: flag of the commuting nilpotent parts
      std::vector<detail::MatC> ns;
      for (size_t j = 0; j < ops.size(); ++j) {
        detail::MatC m = detail::restrict_to(sp.basis, ops[j]);
        ns.push_back(m - sp.evals[j] * detail::MatC::Identity(k, k));
      }
      detail::MatC flag = detail::nilpotent_flag(ns, k);
      detail::MatC cols = sp.basis * flag;  // columns in C^d, essentially real
      block.basis = SMat(k, d);
      for (int i = 0; i < k; ++i) {
        // realize: the space is conjugation-invariant, take the real part and
        // renormalize; fall back to the imaginary part if it collapses
        Eigen::VectorXd re = cols.col(i).real();
        if (re.norm() < 1e-8) re = cols.col(i).imag();
        re /= re.norm();
        for (int c = 0; c < d; ++c) block.basis.at(i, c) = Scalar(re[c]);
      }
      if (rank_of(block.basis) != k) throw NumericalFailure("real block basis degenerate");
    } else {
      // find the conjugate partner
      int partner = -1;
      for (size_t sj = si + 1; sj < spaces.size(); ++sj)
        if (!used[sj] && tuples_conjugate(sp, spaces[sj])) { partner = (int)sj; break; }
      if (partner < 0) throw NumericalFailure("conjugate eigenspace missing");
      used[(size_t)partner] = true;
      // canonical representative: first non-real eigenvalue with positive imag
      const detail::JointSpace* rep = &sp;
      for (auto& e : sp.evals) {
        if (std::abs(e.imag()) > tol::eig_cluster * std::max(1.0, scale)) {
          if (e.imag() < 0) rep = &spaces[(size_t)partner];
          break;
        }
      }
      block.complex_kind = true;
      int k = (int)rep->basis.cols();
      std::vector<detail::MatC> ns;
      for (size_t j = 0; j < ops.size(); ++j) {
        detail::MatC m = detail::restrict_to(rep->basis, ops[j]);
        ns.push_back(m - rep->evals[j] * detail::MatC::Identity(k, k));
      }
      detail::MatC flag = detail::nilpotent_flag(ns, k);
      detail::MatC cols = rep->basis * flag;
      block.basis = SMat(2 * k, d);
      for (int i = 0; i < k; ++i) {
        Eigen::VectorXd u = cols.col(i).real(), v = cols.col(i).imag();
        for (int c = 0; c < d; ++c) {
          block.basis.at(2 * i, c) = Scalar(u[c]);
          block.basis.at(2 * i + 1, c) = Scalar(v[c]);
        }
      }
      if (rank_of(block.basis) != 2 * k) throw NumericalFailure("complex block basis degenerate");
    }
    // per-operator data read from the matrix in the block basis
    SMat rt = block.basis.transpose();
    SMat gram_inv = inverse(block.basis * rt);
    for (auto& o : ops_in) {
      SMat img = o * rt;                       // images of basis rows as columns
      SMat coords = gram_inv * (block.basis * img);  // coordinates in the row basis
      double a = coords.at(0, 0).to_double();
      double b = block.complex_kind ? coords.at(1, 0).to_double() : 0.0;
      block.data.emplace_back(a, b);
    }
    out.blocks.push_back(std::move(block));
  }

  // deterministic order: by eigenvalue data, descending
  std::sort(out.blocks.begin(), out.blocks.end(), [](const CommutingBlock& x, const CommutingBlock& y) {
    return x.data > y.data;
  });
  int total = 0;
  for (auto& b : out.blocks) total += b.dim();
  if (total != d) throw NumericalFailure("block dimensions do not sum to the ambient dimension");
  return out;
}

// ---- root space decomposition (abelian derived algebra, R-diagonal action) ----

struct RootDecomposition {
  Subspace derived;                         // g'
  std::vector<Vec> complement;              // basis of t (ambient coordinates)
  std::vector<std::vector<Scalar>> roots;   // lambda_alpha on the complement basis
  std::vector<Subspace> blocks;             // n_alpha, ambient coordinates
  bool flattened = false;
};

namespace detail {

inline void roots_increment(std::vector<std::pair<Rational, int>>& roots, const Rational& r) {
  for (auto& [v, m] : roots)
    if (v == r) { ++m; return; }
  roots.emplace_back(r, 1);
}

/// Exact rational roots with multiplicities; returns false if the
/// characteristic polynomial does not split over Q.
inline bool rational_eigen_split(const std::vector<Scalar>& poly, std::vector<std::pair<Rational, int>>* out) {
  // poly = [1, c1, ..., ck], all rational
  std::vector<Rational> c;
  for (auto& s : poly) {
    if (!s.is_exact() || !s.surd().is_rational()) return false;
    c.push_back(s.surd().rational_part());
  }
  std::vector<Rational> cur = c;
  std::vector<std::pair<Rational, int>> roots;
  auto eval = [](const std::vector<Rational>& p, const Rational& x) {
    Rational acc = 0;
    for (auto& coef : p) acc = acc * x + coef;
    return acc;
  };
  auto deflate = [](std::vector<Rational>& p, const Rational& r) {
    std::vector<Rational> q(p.size() - 1);
    Rational carry = 0;
    for (size_t i = 0; i + 1 < p.size(); ++i) {
      carry = carry * r + p[i];
      q[i] = carry;
    }
    p = q;
  };
  while (cur.size() > 1) {
    // candidate roots p/q with p | num(c_last * lcm), q | lead; search small grid
    // plus 0 explicitly
    bool found = false;
    if (cur.back() == 0) {
      roots_increment(roots, Rational(0));
      deflate(cur, Rational(0));
      continue;
    }
    // collect divisors of numerator and denominator magnitude up to a bound
    Integer num = rat_num(cur.back()) < 0 ? Integer(-rat_num(cur.back())) : rat_num(cur.back());
    Integer den = rat_den(cur.back());
    std::vector<Integer> nds, dds;
    for (Integer v = 1; v * v <= num && v <= 10000; ++v)
      if (num % v == 0) { nds.push_back(v); nds.push_back(num / v); }
    for (Integer v = 1; v * v <= den && v <= 10000; ++v)
      if (den % v == 0) { dds.push_back(v); dds.push_back(den / v); }
    if (num > 100000000) return false;  // give up on huge constant terms
    for (auto& p : nds) {
      for (auto& q : dds) {
        for (int s = 1; s >= -1 && !found; s -= 2) {
          Rational cand = Rational(s * p, q);
          if (eval(cur, cand) == 0) {
            roots_increment(roots, cand);
            deflate(cur, cand);
            found = true;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) return false;
  }
  *out = roots;
  return true;
}

}  // namespace detail

/// Simultaneous eigenspace decomposition of g' under the commuting family
/// ad(t_a)|_{g'}; exact when every characteristic polynomial splits over Q,
/// floating point otherwise. Throws NotRDiagonal when some restriction is
/// not semisimple with real eigenvalues.
inline RootDecomposition root_space_decomposition(const LieAlgebra& g) {
  int n = g.dim();
  Subspace der = derived_subalgebra(g);
  if (derived_of(g, der).dim() != 0) throw HypothesisFailed("derived algebra is not abelian");
  RootDecomposition rd;
  rd.derived = der;
  std::vector<int> comp = der.complement_indices();
  for (int idx : comp) rd.complement.push_back(unit(n, idx));
  int m = (int)comp.size(), q = der.dim();
  if (q == 0) return rd;

  // semisimplicity with real eigenvalues must hold for every basis element
  std::vector<SMat> restricted;
  for (int i = 0; i < n; ++i) {
    SMat b = ad_restrict(g, unit(n, i), der).matrix;
    Eigen::MatrixXd be = b.to_eigen();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(be.cast<detail::Cplx>());
    auto reps = detail::cluster_representatives(es.eigenvalues(), tol::eig_cluster * std::max(1.0, be.norm()));
    int geo = 0;
    for (auto mu : reps) {
      if (std::abs(mu.imag()) > tol::eig_cluster * std::max(1.0, be.norm()))
        throw NotRDiagonal(g.labels()[(size_t)i] + " has a nonreal eigenvalue");
      Eigen::MatrixXcd nmat = be.cast<detail::Cplx>() - mu * Eigen::MatrixXcd::Identity(q, q);
      geo += (int)detail::kernel_orthobasis(nmat, tol::eig_cluster).cols();
    }
    if (geo != q) throw NotRDiagonal(g.labels()[(size_t)i] + " is not diagonalizable");
  }
  for (int a = 0; a < m; ++a) restricted.push_back(ad_restrict(g, rd.complement[(size_t)a], der).matrix);

  // split: list of (basis rows in g'-coordinates, root values so far)
  struct Piece {
    SMat rows;  // r x q
    std::vector<Scalar> root;
  };
  std::vector<Piece> pieces{{SMat::identity(q), {}}};
  for (int a = 0; a < m; ++a) {
    std::vector<Piece> next;
    for (auto& pc : pieces) {
      // operator in the piece's row coordinates
      int r = pc.rows.rows;
      SMat rt = pc.rows.transpose();
      SMat gram_inv = inverse(pc.rows * rt);
      SMat mm = gram_inv * (pc.rows * (restricted[(size_t)a] * rt));
      std::vector<std::pair<Rational, int>> rats;
      bool exact_ok = mm.is_exact() && detail::rational_eigen_split(char_poly(mm), &rats);
      if (exact_ok) {
        for (auto& [mu, mult] : rats) {
          SMat shifted = mm;
          for (int i = 0; i < r; ++i) shifted.at(i, i) -= Scalar(mu);
          SMat ker = kernel(shifted);
          if (ker.rows != mult) throw NotRDiagonal(g.labels()[(size_t)comp[(size_t)a]] + " is not diagonalizable");
          Piece child{ker * pc.rows, pc.root};
          child.root.push_back(Scalar(mu));
          next.push_back(std::move(child));
        }
      } else {
        Eigen::MatrixXd me = mm.to_eigen();
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(me.cast<detail::Cplx>());
        auto reps = detail::cluster_representatives(es.eigenvalues(), tol::eig_cluster * std::max(1.0, me.norm()));
        for (auto mu : reps) {
          if (std::abs(mu.imag()) > tol::eig_cluster * std::max(1.0, me.norm()))
            throw NotRDiagonal("nonreal root");
          Eigen::MatrixXcd nmat = me.cast<detail::Cplx>() - mu * Eigen::MatrixXcd::Identity(r, r);
          detail::MatC kerb = detail::kernel_orthobasis(nmat, tol::eig_cluster);
          SMat rows((int)kerb.cols(), q);
          for (int i = 0; i < rows.rows; ++i) {
            Eigen::VectorXd real = kerb.col(i).real();
            if (real.norm() < 1e-9) real = kerb.col(i).imag();
            Vec coord((size_t)r);
            for (int c = 0; c < r; ++c) coord[(size_t)c] = Scalar(real[c]);
            Vec amb = mat_vec(pc.rows.transpose(), coord);
            rows.set_row(i, amb);
          }
          Piece child{rows, pc.root};
          child.root.push_back(Scalar(mu.real()));
          next.push_back(std::move(child));
        }
      }
    }
    pieces = std::move(next);
  }

  // expand to ambient coordinates, sort deterministically
  std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) {
    for (size_t i = 0; i < x.root.size(); ++i) {
      double a = x.root[i].to_double(), b = y.root[i].to_double();
      if (std::abs(a - b) > 1e-12) return a > b;
    }
    return false;
  });
  for (auto& pc : pieces) {
    SMat amb(pc.rows.rows, n);
    for (int i = 0; i < pc.rows.rows; ++i) {
      Vec v((size_t)n, Scalar(0));
      for (int j = 0; j < q; ++j) v = v + pc.rows.at(i, j) * der.basis_vector(j);
      amb.set_row(i, v);
    }
    rd.blocks.push_back(Subspace::span(amb));
    rd.roots.push_back(pc.root);
  }
  return rd;
}

namespace detail {

/// Coordinates of v in the concatenated block bases (v must lie in g').
inline Vec joint_block_coordinates(const RootDecomposition& rd, const Vec& v, int n) {
  int q = 0;
  for (auto& b : rd.blocks) q += b.dim();
  SMat cols(n, q);
  int c = 0;
  for (auto& b : rd.blocks)
    for (int i = 0; i < b.dim(); ++i, ++c) {
      Vec bv = b.basis_vector(i);
      for (int r = 0; r < n; ++r) cols.at(r, c) = bv[(size_t)r];
    }
  return solve(cols, v);
}

}  // namespace detail

/// Replaces the complement basis with one satisfying [t, t] = 0 by solving
/// omega = lambda ^ psi blockwise; the Jacobi identity guarantees a solution.
inline RootDecomposition flatten_complement(const LieAlgebra& g, const RootDecomposition& rd_in) {
  RootDecomposition rd = rd_in;
  int m = (int)rd.complement.size();
  int n = g.dim();
  // omega coordinates for every complement pair
  std::vector<Vec> pair_coords;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      pair_coords.push_back(detail::joint_block_coordinates(
          rd, bracket(g, rd.complement[(size_t)a], rd.complement[(size_t)b]), n));

  std::vector<Vec> newc = rd.complement;
  int pairs = m * (m - 1) / 2;
  int offset = 0;
  for (size_t alpha = 0; alpha < rd.blocks.size(); ++alpha) {
    const auto& lam = rd.roots[alpha];
    bool lam_zero = true;
    for (auto& l : lam) lam_zero = lam_zero && l.is_zero(1e-12);
    for (int i = 0; i < rd.blocks[alpha].dim(); ++i) {
      SMat sys(pairs, m);
      Vec rhs((size_t)pairs, Scalar(0));
      int row = 0;
      for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b, ++row) {
          rhs[(size_t)row] = pair_coords[(size_t)row][(size_t)(offset + i)];
          sys.at(row, b) = lam[(size_t)a];
          sys.at(row, a) = Scalar(0) - lam[(size_t)b];
        }
      if (lam_zero) {
        if (!vec_is_zero(rhs, 1e-9)) throw NumericalFailure("zero root with nonzero two-form");
        continue;
      }
      Vec psi = solve(sys, rhs);
      for (int a = 0; a < m; ++a)
        newc[(size_t)a] = newc[(size_t)a] - psi[(size_t)a] * rd.blocks[alpha].basis_vector(i);
    }
    offset += rd.blocks[alpha].dim();
  }
  rd.complement = newc;
  rd.flattened = true;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (!vec_is_zero(bracket(g, rd.complement[(size_t)a], rd.complement[(size_t)b]),
                       g.is_exact() ? 0.0 : 1e-8))
        throw NumericalFailure("complement flattening left a nonzero bracket");
  return rd;
}

}  // namespace geodesy

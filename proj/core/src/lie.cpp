#include "njk/lie.hpp"

#include <stdexcept>
#include <string>

namespace njk {

namespace {

std::string pair_label(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

void check_square(const Matrix& P, int n, const char* what) {
  if (static_cast<int>(P.size()) != n) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  for (const auto& row : P)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument(std::string(what) + ": matrix is not square");
}

}  // namespace

void LieAlgebra::set_bracket(int i, int j, const Vec& value) {
  if (i == j) {
    if (!is_zero(value)) throw std::invalid_argument("[e_i,e_i] must vanish");
    return;
  }
  if (i > j) {
    set_bracket(j, i, scaled(value, Rational(-1)));
    return;
  }
  if (is_zero(value))
    structure.erase({i, j});
  else
    structure[{i, j}] = value;
}

Vec LieAlgebra::bracket_basis(int i, int j) const {
  if (i == j) return zero_vec(static_cast<std::size_t>(dim));
  if (i > j) return scaled(bracket_basis(j, i), Rational(-1));
  auto it = structure.find({i, j});
  return it == structure.end() ? zero_vec(static_cast<std::size_t>(dim)) : it->second;
}

Vec LieAlgebra::bracket(const Vec& a, const Vec& b) const {
  Vec out = zero_vec(static_cast<std::size_t>(dim));
  for (const auto& [ij, c] : structure) {
    auto [i, j] = ij;
    Rational coeff = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)] -
                     a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(i)];
    axpy(out, coeff, c);
  }
  return out;
}

Matrix LieAlgebra::ad(int i) const {
  Matrix m = zero_matrix(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j) {
    Vec col = bracket_basis(i, j);
    for (int k = 0; k < dim; ++k) m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = col[static_cast<std::size_t>(k)];
  }
  return m;
}

Matrix Representation::action_of(const Vec& a) const {
  Matrix m = zero_matrix(static_cast<std::size_t>(dim_m), static_cast<std::size_t>(dim_m));
  for (std::size_t i = 0; i < action.size(); ++i)
    if (a[i] != 0) m = mat_add(m, mat_scale(action[i], a[i]));
  return m;
}

Vec Representation::act(const Vec& a, const Vec& x) const { return mat_vec(action_of(a), x); }

Report validate_lie(const LieAlgebra& L) {
  Report r;
  for (const auto& [ij, c] : L.structure) {
    if (static_cast<int>(c.size()) != L.dim || ij.first < 0 || ij.second >= L.dim) {
      r.valid = false;
      r.detail = "structure constant " + pair_label(ij.first, ij.second) + " has wrong shape";
      r.witness = {ij.first, ij.second};
      return r;
    }
  }
  const std::size_t n = static_cast<std::size_t>(L.dim);
  for (int i = 0; i < L.dim; ++i)
    for (int j = i + 1; j < L.dim; ++j)
      for (int k = j + 1; k < L.dim; ++k) {
        Vec ei = basis_vec(n, static_cast<std::size_t>(i)), ej = basis_vec(n, static_cast<std::size_t>(j)),
            ek = basis_vec(n, static_cast<std::size_t>(k));
        Vec s = L.bracket(L.bracket(ei, ej), ek) + L.bracket(L.bracket(ej, ek), ei) +
                L.bracket(L.bracket(ek, ei), ej);
        if (!is_zero(s)) {
          r.valid = false;
          r.detail = "Jacobi identity fails on basis triple (" + std::to_string(i) + "," + std::to_string(j) +
                     "," + std::to_string(k) + ")";
          r.witness = {i, j, k};
          r.residual = s;
          return r;
        }
      }
  r.detail = "Jacobi identity holds on all basis triples";
  return r;
}

Report validate_representation(const LieAlgebra& L, const Representation& M) {
  Report r;
  if (static_cast<int>(M.action.size()) != L.dim) {
    r.valid = false;
    r.detail = "representation has " + std::to_string(M.action.size()) + " action matrices, expected " +
               std::to_string(L.dim);
    return r;
  }
  for (std::size_t i = 0; i < M.action.size(); ++i) {
    if (static_cast<int>(M.action[i].size()) != M.dim_m || static_cast<int>(cols_of(M.action[i])) != M.dim_m) {
      r.valid = false;
      r.detail = "action matrix " + std::to_string(i) + " has wrong shape";
      r.witness = {static_cast<int>(i)};
      return r;
    }
  }
  for (int i = 0; i < L.dim; ++i)
    for (int j = i + 1; j < L.dim; ++j) {
      Matrix lhs = M.action_of(L.bracket_basis(i, j));
      Matrix rhs = commutator(M.action[static_cast<std::size_t>(i)], M.action[static_cast<std::size_t>(j)]);
      Matrix diff = mat_sub(lhs, rhs);
      if (!is_zero(diff)) {
        r.valid = false;
        r.detail = "rho([e_i,e_j]) != [rho(e_i),rho(e_j)] at " + pair_label(i, j);
        r.witness = {i, j};
        for (const auto& row : diff) r.residual.insert(r.residual.end(), row.begin(), row.end());
        return r;
      }
    }
  r.detail = "representation identity holds on all basis pairs";
  return r;
}

Vec nijenhuis_torsion_alg(const LieAlgebra& L, const Matrix& P, const Vec& x, const Vec& y) {
  Vec Px = mat_vec(P, x), Py = mat_vec(P, y);
  Vec inner = L.bracket(Px, y) + L.bracket(x, Py) - mat_vec(P, L.bracket(x, y));
  return L.bracket(Px, Py) - mat_vec(P, inner);
}

Report validate_nijenhuis(const LieAlgebra& L, const Matrix& P) {
  check_square(P, L.dim, "validate_nijenhuis");
  Report r;
  const std::size_t n = static_cast<std::size_t>(L.dim);
  for (int i = 0; i < L.dim; ++i)
    for (int j = i + 1; j < L.dim; ++j) {
      Vec t = nijenhuis_torsion_alg(L, P, basis_vec(n, static_cast<std::size_t>(i)),
                                    basis_vec(n, static_cast<std::size_t>(j)));
      if (!is_zero(t)) {
        r.valid = false;
        r.detail = "Nijenhuis torsion nonzero at " + pair_label(i, j);
        r.witness = {i, j};
        r.residual = t;
        return r;
      }
    }
  r.detail = "Nijenhuis torsion vanishes on all basis pairs";
  return r;
}

LieAlgebra deformed_bracket_unchecked(const LieAlgebra& L, const Matrix& P) {
  LieAlgebra D(L.dim);
  D.basis = L.basis;
  const std::size_t n = static_cast<std::size_t>(L.dim);
  for (int i = 0; i < L.dim; ++i)
    for (int j = i + 1; j < L.dim; ++j) {
      Vec a = basis_vec(n, static_cast<std::size_t>(i)), b = basis_vec(n, static_cast<std::size_t>(j));
      Vec v = L.bracket(mat_vec(P, a), b) + L.bracket(a, mat_vec(P, b)) - mat_vec(P, L.bracket(a, b));
      D.set_bracket(i, j, v);
    }
  return D;
}

LieAlgebra deformed_bracket(const LieAlgebra& L, const Matrix& P) {
  Report r = validate_nijenhuis(L, P);
  if (!r.valid) throw std::domain_error("deformed_bracket: " + r.detail);
  return deformed_bracket_unchecked(L, P);
}

Report validate_nijenhuis_representation(const NijenhuisLieAlgebra& NL, const Representation& M,
                                         const Matrix& PM) {
  check_square(PM, M.dim_m, "validate_nijenhuis_representation");
  Report r = validate_representation(NL.algebra, M);
  if (!r.valid) return r;
  const std::size_t n = static_cast<std::size_t>(NL.algebra.dim), m = static_cast<std::size_t>(M.dim_m);
  for (std::size_t i = 0; i < n; ++i) {
    Vec a = basis_vec(n, i);
    Matrix rho_a = M.action[i];
    Matrix rho_Pa = M.action_of(mat_vec(NL.op, a));
    for (std::size_t k = 0; k < m; ++k) {
      Vec x = basis_vec(m, k);
      Vec PMx = mat_vec(PM, x);
      Vec lhs = mat_vec(rho_Pa, PMx);
      Vec inner = mat_vec(rho_Pa, x) + mat_vec(rho_a, PMx) - mat_vec(PM, mat_vec(rho_a, x));
      Vec diff = lhs - mat_vec(PM, inner);
      if (!is_zero(diff)) {
        r.valid = false;
        r.detail = "Nijenhuis representation relation fails at (e_" + std::to_string(i) + ", m_" +
                   std::to_string(k) + ")";
        r.witness = {static_cast<int>(i), static_cast<int>(k)};
        r.residual = diff;
        return r;
      }
    }
  }
  r.detail = "Nijenhuis representation relation holds on all basis pairs";
  return r;
}

NijenhuisLieAlgebra semidirect_product(const NijenhuisLieAlgebra& NL, const Representation& M,
                                       const Matrix& PM) {
  Report r = validate_nijenhuis_representation(NL, M, PM);
  if (!r.valid) throw std::domain_error("semidirect_product: " + r.detail);
  const int n = NL.algebra.dim, m = M.dim_m;
  LieAlgebra S(n + m);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec v = NL.algebra.bracket_basis(i, j);
      v.resize(static_cast<std::size_t>(n + m), Rational(0));
      S.set_bracket(i, j, v);
    }
  // [e_i, m_k] = e_i . m_k
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < m; ++k) {
      Vec v = zero_vec(static_cast<std::size_t>(n + m));
      for (int l = 0; l < m; ++l)
        v[static_cast<std::size_t>(n + l)] = M.action[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
      S.set_bracket(i, n + k, v);
    }
  return {S, block_diag(NL.op, PM)};
}

Representation deformed_representation(const NijenhuisLieAlgebra& NL, const Representation& M,
                                       const Matrix& PM) {
  Report r = validate_nijenhuis_representation(NL, M, PM);
  if (!r.valid) throw std::domain_error("deformed_representation: " + r.detail);
  Representation D;
  D.dim_m = M.dim_m;
  const std::size_t n = static_cast<std::size_t>(NL.algebra.dim);
  for (std::size_t i = 0; i < n; ++i) D.action.push_back(M.action_of(mat_vec(NL.op, basis_vec(n, i))));
  return D;
}

Representation adjoint_representation(const LieAlgebra& L) {
  Representation M;
  M.dim_m = L.dim;
  for (int i = 0; i < L.dim; ++i) M.action.push_back(L.ad(i));
  return M;
}

Representation trivial_representation(const LieAlgebra& L, int dim_m) {
  Representation M;
  M.dim_m = dim_m;
  M.action.assign(static_cast<std::size_t>(L.dim), zero_matrix(static_cast<std::size_t>(dim_m), static_cast<std::size_t>(dim_m)));
  return M;
}

LieAlgebra transform_lie(const LieAlgebra& L, const Matrix& T) {
  Matrix Ti = mat_inverse(T);
  const std::size_t n = static_cast<std::size_t>(L.dim);
  std::vector<Vec> f(n);
  for (std::size_t a = 0; a < n; ++a) {
    f[a] = zero_vec(n);
    for (std::size_t i = 0; i < n; ++i) f[a][i] = T[i][a];
  }
  LieAlgebra R(L.dim);
  R.basis = L.basis;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      R.set_bracket(static_cast<int>(a), static_cast<int>(b), mat_vec(Ti, L.bracket(f[a], f[b])));
  return R;
}

Matrix transform_operator(const Matrix& P, const Matrix& T) { return mat_mul(mat_inverse(T), mat_mul(P, T)); }

Representation transform_representation(const Representation& M, const Matrix& Tg, const Matrix& Tm) {
  Representation R;
  R.dim_m = M.dim_m;
  Matrix Tmi = mat_inverse(Tm);
  for (std::size_t a = 0; a < Tg.size(); ++a) {
    Vec col = zero_vec(Tg.size());
    for (std::size_t i = 0; i < Tg.size(); ++i) col[i] = Tg[i][a];
    R.action.push_back(mat_mul(Tmi, mat_mul(M.action_of(col), Tm)));
  }
  return R;
}

}  // namespace njk

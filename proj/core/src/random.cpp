#include "njk/random.hpp"

#include <stdexcept>

#include "njk/combinatorics.hpp"
#include "njk/sparse_matrix.hpp"

namespace njk {

int random_int(Rng& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(rng() % span);
}

Rational random_rational(Rng& rng, int range, int max_den) {
  Rational q(random_int(rng, -range, range), random_int(rng, 1, max_den));
  q.canonicalize();
  return q;
}

Vec random_vec(Rng& rng, std::size_t n, int range) {
  Vec v(n);
  for (auto& x : v) x = random_rational(rng, range);
  return v;
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int range) {
  Matrix m(rows);
  for (auto& r : m) r = random_vec(rng, cols, range);
  return m;
}

Matrix random_invertible(Rng& rng, std::size_t n) {
  Matrix lower = identity_matrix(n), upper = identity_matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      lower[i][j] = random_int(rng, -1, 1);
      upper[j][i] = random_int(rng, -1, 1);
    }
  return mat_mul(lower, upper);
}

namespace {

struct Block {
  LieAlgebra L;
  Vec lambda;  // diagonal of the Nijenhuis operator
  std::string name;
};

Rational small(Rng& rng) { return Rational(random_int(rng, -2, 2)); }

// Each family has monomial brackets [e_i,e_j] = c e_k; with P = diag(lambda)
// the torsion on (e_i,e_j) is (l_i - l_k)(l_j - l_k) c e_k, so each family
// picks eigenvalues with l_k in {l_i, l_j} whenever c != 0.
Block random_block(Rng& rng, int max_dim) {
  for (;;) {
    int family = random_int(rng, 0, 4);
    switch (family) {
      case 0: {
        int d = random_int(rng, 1, std::min(2, max_dim));
        Block b{LieAlgebra(d), {}, "abelian"};
        for (int i = 0; i < d; ++i) b.lambda.push_back(small(rng));
        return b;
      }
      case 1: {
        if (max_dim < 2) continue;
        Block b{LieAlgebra(2), {small(rng), small(rng)}, "affine"};
        b.L.set_bracket(0, 1, Vec{1, 0});
        return b;
      }
      case 2: {
        if (max_dim < 3) continue;
        // basis h, e, f
        Block b{LieAlgebra(3), {}, "sl2"};
        b.L.set_bracket(0, 1, Vec{0, 2, 0});
        b.L.set_bracket(0, 2, Vec{0, 0, -2});
        b.L.set_bracket(1, 2, Vec{1, 0, 0});
        Rational le = small(rng), lf = small(rng);
        b.lambda = {random_int(rng, 0, 1) ? le : lf, le, lf};
        return b;
      }
      case 3: {
        if (max_dim < 3) continue;
        Block b{LieAlgebra(3), {}, "heisenberg"};
        b.L.set_bracket(0, 1, Vec{0, 0, 1});
        Rational lx = small(rng), ly = small(rng);
        b.lambda = {lx, ly, random_int(rng, 0, 1) ? lx : ly};
        return b;
      }
      default: {
        if (max_dim < 2) continue;
        int d = random_int(rng, 2, std::min(3, max_dim));
        Block b{LieAlgebra(d), {}, "solvable"};
        for (int i = 1; i < d; ++i) {
          Vec v = zero_vec(static_cast<std::size_t>(d));
          v[static_cast<std::size_t>(i)] = random_int(rng, 1, 2);
          b.L.set_bracket(0, i, v);
        }
        for (int i = 0; i < d; ++i) b.lambda.push_back(small(rng));
        return b;
      }
    }
  }
}

Block direct_sum(const Block& a, const Block& b) {
  const int n = a.L.dim, m = b.L.dim;
  Block s{LieAlgebra(n + m), a.lambda, a.name + "+" + b.name};
  s.lambda.insert(s.lambda.end(), b.lambda.begin(), b.lambda.end());
  for (const auto& [ij, c] : a.L.structure) {
    Vec v = c;
    v.resize(static_cast<std::size_t>(n + m), Rational(0));
    s.L.set_bracket(ij.first, ij.second, v);
  }
  for (const auto& [ij, c] : b.L.structure) {
    Vec v = zero_vec(static_cast<std::size_t>(n));
    v.insert(v.end(), c.begin(), c.end());
    s.L.set_bracket(ij.first + n, ij.second + n, v);
  }
  return s;
}

Matrix diag(const Vec& d) {
  Matrix m = zero_matrix(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
  return m;
}

// Nijenhuis representation of dimension <= max_rep built from pieces that
// are Nijenhuis for any (g, P): adjoint with P_M = P, characters
// (vanishing on [g,g]) with scalar P_M, trivial summands with any P_M.
std::pair<Representation, Matrix> random_rep(Rng& rng, const NijenhuisLieAlgebra& nl, int max_rep) {
  const LieAlgebra& L = nl.algebra;
  if (L.dim <= max_rep && random_int(rng, 0, 2) == 0) return {adjoint_representation(L), nl.op};

  // characters: kernel of the matrix whose rows are all brackets
  SparseMatrix brackets(L.structure.size(), static_cast<std::size_t>(L.dim));
  std::size_t row = 0;
  for (const auto& [ij, c] : L.structure) {
    for (std::size_t k = 0; k < c.size(); ++k) brackets.set(row, k, c[k]);
    ++row;
  }
  std::vector<Vec> chars = kernel_basis(brackets);

  const int m = random_int(rng, 1, max_rep);
  Representation M = trivial_representation(L, m);
  Matrix PM = zero_matrix(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  int trivial_from = m;
  for (int s = 0; s < m; ++s) {
    if (chars.empty() || random_int(rng, 0, 3) == 0) {
      trivial_from = s;
      break;
    }
    Vec chi = zero_vec(static_cast<std::size_t>(L.dim));
    for (const auto& c : chars) axpy(chi, Rational(random_int(rng, -2, 2)), c);
    for (int i = 0; i < L.dim; ++i) M.action[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)][static_cast<std::size_t>(s)] = chi[static_cast<std::size_t>(i)];
    PM[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)] = small(rng);
  }
  // the trivial tail carries an arbitrary operator
  for (int i = trivial_from; i < m; ++i)
    for (int j = trivial_from; j < m; ++j) PM[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = small(rng);

  Matrix T = random_invertible(rng, static_cast<std::size_t>(m));
  Representation R = transform_representation(M, identity_matrix(static_cast<std::size_t>(L.dim)), T);
  return {R, transform_operator(PM, T)};
}

}  // namespace

NijenhuisSample random_nijenhuis_sample(Rng& rng, int max_dim, int max_rep) {
  if (max_dim < 1 || max_rep < 1) throw std::invalid_argument("random_nijenhuis_sample: bounds must be positive");
  Block b = random_block(rng, max_dim);
  if (b.L.dim < max_dim && random_int(rng, 0, 1)) b = direct_sum(b, random_block(rng, max_dim - b.L.dim));
  Matrix T = random_invertible(rng, static_cast<std::size_t>(b.L.dim));
  NijenhuisSample s;
  s.family = b.name;
  s.nl.algebra = transform_lie(b.L, T);
  s.nl.op = transform_operator(diag(b.lambda), T);
  auto [rep, op] = random_rep(rng, s.nl, max_rep);
  s.rep = std::move(rep);
  s.rep_op = std::move(op);
  return s;
}

std::pair<LieAlgebra, Matrix> random_perturbed_pair(Rng& rng, int max_dim) {
  if (max_dim < 3) throw std::invalid_argument("random_perturbed_pair: needs max_dim >= 3");
  for (;;) {
    NijenhuisSample s = random_nijenhuis_sample(rng, max_dim, 1);
    LieAlgebra L = s.nl.algebra;
    Matrix P = s.nl.op;
    const int n = L.dim;
    if (n < 3) continue;
    if (random_int(rng, 0, 1) == 0) {
      int i = random_int(rng, 0, n - 1), j = random_int(rng, 0, n - 1);
      P[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += random_int(rng, 1, 3);
    } else {
      int i = random_int(rng, 0, n - 2);
      int j = random_int(rng, i + 1, n - 1);
      int k = random_int(rng, 0, n - 1);
      Vec v = L.bracket_basis(i, j);
      v[static_cast<std::size_t>(k)] += random_int(rng, 1, 3);
      L.set_bracket(i, j, v);
    }
    if (!validate_lie(L).valid || !validate_nijenhuis(L, P).valid) return {L, P};
  }
}

Poly random_poly(Rng& rng, int n_vars, int max_degree, int max_terms) {
  Poly p(n_vars);
  const int terms = random_int(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t) {
    Exponent e(static_cast<std::size_t>(n_vars), 0);
    int left = random_int(rng, 0, max_degree);
    for (int s = 0; s < left && n_vars > 0; ++s) ++e[static_cast<std::size_t>(random_int(rng, 0, n_vars - 1))];
    p.add_term(e, random_rational(rng, 3, 2));
  }
  return p;
}

VectorForm random_vector_form(Rng& rng, int n_vars, int form_degree, int max_degree, int max_terms) {
  VectorForm k(n_vars, form_degree);
  for (const auto& idx : combinations(n_vars, form_degree))
    for (int a = 0; a < n_vars; ++a)
      if (random_int(rng, 0, 1)) k.add(idx, a, random_poly(rng, n_vars, max_degree, max_terms));
  return k;
}

}  // namespace njk

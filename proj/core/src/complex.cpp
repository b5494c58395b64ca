#include "njk/complex.hpp"

#include <stdexcept>

#include "njk/matrix.hpp"

namespace njk {

SparseMatrix matrix_of(std::size_t in_dim, std::size_t out_dim, const std::function<Vec(const Vec&)>& f) {
  SparseMatrix m(out_dim, in_dim);
  for (std::size_t j = 0; j < in_dim; ++j) {
    Vec col = f(basis_vec(in_dim, j));
    if (col.size() != out_dim) throw std::logic_error("matrix_of: image has wrong length");
    for (std::size_t i = 0; i < out_dim; ++i)
      if (col[i] != 0) m.set(i, j, col[i]);
  }
  return m;
}

std::size_t LinearComplex::dim(int n) const {
  if (n < 0 || n >= static_cast<int>(dims.size())) return 0;
  return dims[static_cast<std::size_t>(n)];
}

SparseMatrix LinearComplex::differential(int n) const {
  if (n >= 0 && n < static_cast<int>(d.size())) return d[static_cast<std::size_t>(n)];
  return SparseMatrix(dim(n + 1), dim(n));
}

std::vector<std::size_t> BettiReport::betti_numbers() const {
  std::vector<std::size_t> out;
  for (const auto& r : rows) out.push_back(r.betti);
  return out;
}

BettiReport betti(const LinearComplex& cx, int max_degree) {
  BettiReport rep;
  std::size_t prev_rank = rank(cx.differential(-1));
  for (int n = 0; n <= max_degree; ++n) {
    BettiRow row;
    row.degree = n;
    row.dim = cx.dim(n);
    row.rank = rank(cx.differential(n));
    row.betti = row.dim - row.rank - prev_rank;
    prev_rank = row.rank;
    rep.rows.push_back(row);
  }
  return rep;
}

bool squares_to_zero(const LinearComplex& cx) {
  for (int n = 0; n + 1 < static_cast<int>(cx.dims.size()); ++n) {
    SparseMatrix dd = cx.differential(n + 1).multiply(cx.differential(n));
    if (dd.nonzeros() != 0) return false;
  }
  return true;
}

std::vector<Vec> cocycles(const LinearComplex& cx, int n) { return kernel_basis(cx.differential(n)); }

std::vector<Vec> coboundaries(const LinearComplex& cx, int n) {
  SparseMatrix d = cx.differential(n - 1);
  std::vector<Vec> out;
  for (std::size_t j = 0; j < d.cols(); ++j) out.push_back(d.column(j));
  return out;
}

SparseMatrix ComplexMap::at(int n, std::size_t in_dim, std::size_t out_dim) const {
  if (n >= 0 && n < static_cast<int>(f.size())) return f[static_cast<std::size_t>(n)];
  return SparseMatrix(out_dim, in_dim);
}

namespace {

SparseMatrix columns(std::size_t rows, const std::vector<Vec>& cols) { return SparseMatrix::from_columns(rows, cols); }

std::vector<Vec> apply_all(const SparseMatrix& m, const std::vector<Vec>& vs) {
  std::vector<Vec> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(m.apply(v));
  return out;
}

}  // namespace

NodeExactness check_exactness(const LinearComplex& A, int a, const SparseMatrix& phi, const LinearComplex& B,
                              int b, const SparseMatrix& psi, const LinearComplex& C, int c) {
  const std::size_t nb = B.dim(b), nc = C.dim(c);
  std::vector<Vec> ZA = cocycles(A, a);
  std::vector<Vec> ZB = cocycles(B, b);
  std::vector<Vec> BB = coboundaries(B, b);
  std::vector<Vec> BC = coboundaries(C, c);

  NodeExactness r;
  const std::size_t rank_BB = rank(columns(nb, BB));
  const std::size_t rank_BC = rank(columns(nc, BC));

  SparseMatrix image = SparseMatrix::hstack(columns(nb, apply_all(phi, ZA)), columns(nb, BB));
  r.image_dim = rank(image) - rank_BB;

  SparseMatrix pushed = SparseMatrix::hstack(columns(nc, apply_all(psi, ZB)), columns(nc, BC));
  const std::size_t into_HC = rank(pushed) - rank_BC;
  r.kernel_dim = ZB.size() - into_HC - rank_BB;

  SparseMatrix comp = SparseMatrix::hstack(columns(nc, apply_all(psi, apply_all(phi, ZA))), columns(nc, BC));
  r.composite_zero = rank(comp) == rank_BC;
  return r;
}

}  // namespace njk

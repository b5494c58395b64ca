#include <gtest/gtest.h>

#include "njk/algebroid.hpp"
#include "njk/combinatorics.hpp"
#include "oracles.hpp"

using namespace njk;

namespace {

Poly P_(const char* s, int n) { return parse_poly(s, n); }

// Affine action algebroid over R: [e1, e2] = e2, rho(e1) = -x d/dx,
// rho(e2) = d/dx.
PolyAlgebroid affine_line() {
  PolyAlgebroid A(1, 2);
  A.anchor[0][0] = P_("-x1", 1);
  A.anchor[1][0] = P_("1", 1);
  A.set_bracket(0, 1, {Poly(1), Poly::constant(1, 1)});
  return A;
}

// so(3) acting on R^3 by rotations: rho(e_i) = x_k d_j - x_j d_k for
// (i, j, k) cyclic, with [e_i, e_j] = e_k.
PolyAlgebroid rotations() {
  PolyAlgebroid A(3, 3);
  const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& t : cyc) {
    const int i = t[0], j = t[1], k = t[2];
    A.anchor[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Poly::variable(3, k);
    A.anchor[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = -Poly::variable(3, j);
    std::vector<Poly> v(3, Poly(3));
    v[static_cast<std::size_t>(k)] = Poly::constant(3, 1);
    A.set_bracket(i, j, v);
  }
  return A;
}

PolyAlgebroid sl2_point() { return PolyAlgebroid::from_lie(oracle::sl2()); }

VectorForm scalar_op(const PolyAlgebroid& A, const Poly& f) {
  VectorForm P(A.base_dim, A.rank, 1);
  for (int i = 0; i < A.rank; ++i) P.add({i}, i, f);
  return P;
}

VectorForm constant_diag(const PolyAlgebroid& A, const std::vector<int>& d) {
  VectorForm P(A.base_dim, A.rank, 1);
  for (int i = 0; i < A.rank; ++i) P.add({i}, i, Poly::constant(A.base_dim, d[static_cast<std::size_t>(i)]));
  return P;
}

Section random_section(Rng& rng, const PolyAlgebroid& A, int deg) {
  Section e = A.zero();
  for (auto& p : e) p = random_poly(rng, A.base_dim, deg, 2);
  return e;
}

std::vector<Section> random_sections(Rng& rng, const PolyAlgebroid& A, int count, int deg) {
  std::vector<Section> out;
  for (int i = 0; i < count; ++i) out.push_back(random_section(rng, A, deg));
  return out;
}

// det [E_t^{idx_s}] by the Leibniz expansion over all permutations
Poly pairing(const std::vector<int>& idx, const std::vector<Section>& e, int m) {
  std::vector<int> p(idx.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<int>(i) + 1;
  Poly total(m);
  do {
    Poly t = Poly::constant(m, oracle::perm_sign_by_cycles(p));
    for (std::size_t s = 0; s < p.size(); ++s)
      t = t * e[s][static_cast<std::size_t>(idx[static_cast<std::size_t>(p[s] - 1)])];
    total += t;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// <a_X(h), E_1 ^ ... ^ E_k> from the stored coefficients
Poly a_pairing(const GradedField& x, const Poly& h, const std::vector<Section>& e) {
  Poly total(x.base_dim());
  for (const auto& [key, f] : x.a_part()) total += f * h.derivative(key.second) * pairing(key.first, e, x.base_dim());
  return total;
}

// Classical coordinate torsion on R^n:
//   P_i^a d_a P_j^k - P_j^a d_a P_i^k - P_a^k d_i P_j^a + P_a^k d_j P_i^a
VectorForm classical_torsion(const VectorForm& P) {
  const int n = P.n_vars();
  auto p = [&](int i, int a) { return P.coefficient({i}, a); };
  VectorForm r(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Poly v(n);
        for (int a = 0; a < n; ++a) {
          v += p(i, a) * p(j, k).derivative(a) - p(j, a) * p(i, k).derivative(a);
          v += p(a, k) * p(i, a).derivative(j) - p(a, k) * p(j, a).derivative(i);
        }
        r.add({i, j}, k, v);
      }
  return r;
}

// The matrix of a degree-0 field on a point: m[k][j] = g^k_j.
Matrix field_matrix(const GradedField& x) {
  Matrix m = zero_matrix(static_cast<std::size_t>(x.rank()), static_cast<std::size_t>(x.rank()));
  for (const auto& [key, g] : x.d_part())
    m[static_cast<std::size_t>(key.second)][static_cast<std::size_t>(key.first[0])] = g.coefficient({});
  return m;
}

ScalarForm random_function(Rng& rng, int m, int n, int k, int deg) {
  ScalarForm f(m, k);
  for (const auto& idx : combinations(n, k))
    if (random_int(rng, 0, 1)) f.add(idx, random_poly(rng, m, deg, 2));
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------

TEST(PolyAlgebroidTest, TangentBracketIsLieBracket) {
  Rng rng(1);
  PolyAlgebroid T = PolyAlgebroid::tangent(3);
  for (int s = 0; s < 20; ++s) {
    Section a = random_section(rng, T, 2), b = random_section(rng, T, 2);
    EXPECT_EQ(T.bracket(a, b), lie_bracket(a, b));
  }
}

TEST(PolyAlgebroidTest, PointBracketIsLieAlgebraBracket) {
  const LieAlgebra g = oracle::sl2();
  PolyAlgebroid A = PolyAlgebroid::from_lie(g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vec want = g.bracket(basis_vec(3, static_cast<std::size_t>(i)), basis_vec(3, static_cast<std::size_t>(j)));
      Section got = A.bracket(A.basis(i), A.basis(j));
      for (int k = 0; k < 3; ++k) EXPECT_EQ(got[static_cast<std::size_t>(k)].coefficient({}), want[static_cast<std::size_t>(k)]);
    }
}

TEST(PolyAlgebroidTest, LeibnizRule) {
  Rng rng(2);
  for (const auto& A : {affine_line(), rotations()}) {
    for (int s = 0; s < 10; ++s) {
      Section a = random_section(rng, A, 1), b = random_section(rng, A, 1);
      Poly f = random_poly(rng, A.base_dim, 2, 2);
      Section lhs = A.bracket(a, scaled(b, f));
      Section rhs = scaled(A.bracket(a, b), f) + scaled(b, act(A.anchor_of(a), f));
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(PolyAlgebroidTest, SetBracketStoresAntisymmetrically) {
  PolyAlgebroid A(0, 2);
  A.set_bracket(1, 0, {Poly::constant(0, 1), Poly(0)});
  EXPECT_EQ(A.c(0, 1, 0), Poly::constant(0, -1));
  EXPECT_EQ(A.c(1, 0, 0), Poly::constant(0, 1));
  EXPECT_THROW(A.set_bracket(0, 0, {Poly::constant(0, 1), Poly(0)}), std::invalid_argument);
  EXPECT_THROW(A.set_bracket(0, 1, {Poly(0)}), std::invalid_argument);
}

// ---------------------------------------------------------------------------

TEST(HomologicalField, TangentPlane) {
  GradedField q = homological_field_q(PolyAlgebroid::tangent(2));
  GradedField want(2, 2, 1);
  want.add_a({0}, 0, Poly::constant(2, 1));
  want.add_a({1}, 1, Poly::constant(2, 1));
  EXPECT_EQ(q, want);
}

TEST(HomologicalField, Sl2OverPoint) {
  GradedField q = homological_field_q(sl2_point());
  GradedField want(0, 3, 1);
  // -sum_{p<q} c_pq^k eta^p eta^q d/deta^k with [h,e] = 2e, [h,f] = -2f, [e,f] = h
  want.add_d({0, 1}, 1, Poly::constant(0, -2));
  want.add_d({0, 2}, 2, Poly::constant(0, 2));
  want.add_d({1, 2}, 0, Poly::constant(0, -1));
  EXPECT_EQ(q, want);
  EXPECT_TRUE(q.a_part().empty());
}

TEST(HomologicalField, AbelianIsZero) {
  EXPECT_TRUE(homological_field_q(PolyAlgebroid(0, 3)).is_zero());
}

// ---------------------------------------------------------------------------

TEST(GradedFieldTest, StorageSignsAndShape) {
  GradedField x(2, 3, 1);
  x.add_d({2, 0}, 1, P_("x1", 2));
  EXPECT_EQ(x.d_coefficient({0, 2}, 1), P_("-x1", 2));
  EXPECT_EQ(x.d_coefficient({2, 0}, 1), P_("x1", 2));
  x.add_d({1, 1}, 0, P_("1", 2));
  EXPECT_EQ(x.d_part().size(), 1u);
  EXPECT_THROW(x.add_a({0, 1}, 0, P_("1", 2)), std::invalid_argument);
  EXPECT_THROW(x.add_d({0, 3}, 0, P_("1", 2)), std::invalid_argument);
  EXPECT_THROW(x.add_a({0}, 2, P_("1", 2)), std::invalid_argument);
  EXPECT_THROW((void)graded_commutator(x, GradedField(1, 3, 0)), std::invalid_argument);
}

TEST(GradedFieldTest, ActionExamples) {
  // X = x1 eta2 d/dx1 + eta1 eta2 d/deta1 on F = x1^2 eta1
  GradedField x(1, 2, 1);
  x.add_a({1}, 0, P_("x1", 1));
  x.add_d({0, 1}, 0, P_("1", 1));
  ScalarForm f(1, 1);
  f.add({0}, P_("x1^2", 1));
  ScalarForm got = x.act(f);
  // a-part: x1 * 2 x1 eta2 eta1 = -2 x1^2 eta1 eta2 ; d-part: x1^2 eta1 eta2
  ScalarForm want(1, 2);
  want.add({0, 1}, P_("-x1^2", 1));
  EXPECT_EQ(got, want);
  // odd derivation from the left: d/deta2 (eta1 eta2) = -eta1
  GradedField y(0, 2, -1);
  y.add_d({}, 1, Poly::constant(0, 1));
  ScalarForm g = ScalarForm::basis(0, {0, 1});
  ScalarForm want2(0, 1);
  want2.add({0}, Poly::constant(0, -1));
  EXPECT_EQ(y.act(g), want2);
}

TEST(GradedFieldTest, ActionIsGradedDerivation) {
  Rng rng(3);
  PolyAlgebroid A = affine_line();
  for (int s = 0; s < 30; ++s) {
    const int d = random_int(rng, -1, 2);
    GradedField x = random_graded_field(rng, 1, 2, d, 2);
    const int k = random_int(rng, 0, 2), l = random_int(rng, 0, 2 - k);
    ScalarForm f = random_function(rng, 1, 2, k, 2), g = random_function(rng, 1, 2, l, 2);
    ScalarForm lhs = x.act(wedge(f, g));
    ScalarForm rhs = wedge(x.act(f), g) + wedge(f, x.act(g)).scaled(sign_pow(static_cast<long long>(d) * k));
    EXPECT_EQ(lhs, rhs) << x;
  }
}

// ---------------------------------------------------------------------------

TEST(GradedCommutator, CoefficientFormulaMatchesAction) {
  Rng rng(4);
  struct Shape {
    int m, n;
  };
  int checked = 0;
  for (Shape sh : {Shape{2, 2}, Shape{1, 2}, Shape{2, 3}, Shape{0, 3}}) {
    for (int s = 0; s < 25; ++s) {
      const int dx = random_int(rng, -1, sh.n), dy = random_int(rng, -1, sh.n);
      GradedField x = random_graded_field(rng, sh.m, sh.n, dx, 2);
      GradedField y = random_graded_field(rng, sh.m, sh.n, dy, 2);
      EXPECT_EQ(graded_commutator(x, y), graded_commutator_by_action(x, y)) << x << " | " << y;
      ++checked;
    }
  }
  EXPECT_GE(checked, 100);
}

TEST(GradedCommutator, ActsAsCommutatorOnMonomials) {
  Rng rng(5);
  const int m = 2, n = 2;
  for (int s = 0; s < 20; ++s) {
    const int dx = random_int(rng, -1, 2), dy = random_int(rng, -1, 2);
    GradedField x = random_graded_field(rng, m, n, dx, 2), y = random_graded_field(rng, m, n, dy, 2);
    GradedField c = graded_commutator(x, y);
    for (int k = 0; k <= n; ++k)
      for (const auto& idx : combinations(n, k))
        for (const auto& e : monomials_of_degree(m, 2)) {
          ScalarForm f(m, k);
          f.add(idx, Poly::monomial(m, e));
          ScalarForm want = x.act(y.act(f)) - y.act(x.act(f)).scaled(sign_pow(static_cast<long long>(dx) * dy));
          ASSERT_EQ(c.act(f), want);
        }
  }
}

TEST(GradedCommutator, DegreeZeroOnPointIsMatrixCommutator) {
  Rng rng(6);
  for (int s = 0; s < 10; ++s) {
    GradedField x(0, 3, 0), y(0, 3, 0);
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) {
        x.add_d({j}, k, Poly::constant(0, random_rational(rng)));
        y.add_d({j}, k, Poly::constant(0, random_rational(rng)));
      }
    // functions transform contragrediently: [X,Y] has matrix M_Y M_X - M_X M_Y
    Matrix want = commutator(field_matrix(y), field_matrix(x));
    EXPECT_EQ(field_matrix(graded_commutator(x, y)), want);
  }
}

TEST(GradedCommutator, GradedAntisymmetryAndJacobi) {
  Rng rng(7);
  for (int s = 0; s < 15; ++s) {
    const int dx = random_int(rng, -1, 1), dy = random_int(rng, -1, 1), dz = random_int(rng, -1, 1);
    GradedField x = random_graded_field(rng, 1, 2, dx, 1), y = random_graded_field(rng, 1, 2, dy, 1),
                z = random_graded_field(rng, 1, 2, dz, 1);
    EXPECT_EQ(graded_commutator(x, y), graded_commutator(y, x).scaled(-sign_pow(static_cast<long long>(dx) * dy)));
    GradedField lhs = graded_commutator(x, graded_commutator(y, z));
    GradedField rhs = graded_commutator(graded_commutator(x, y), z) +
                      graded_commutator(y, graded_commutator(x, z)).scaled(sign_pow(static_cast<long long>(dx) * dy));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(GradedCommutator, OddSelfBracketIsTwiceSquare) {
  // invalid data so that Q^2 != 0
  PolyAlgebroid A = sl2_point();
  A.set_bracket(1, 2, {Poly::constant(0, 1), Poly::constant(0, 1), Poly(0)});
  GradedField q = homological_field_q(A);
  GradedField qq = graded_commutator(q, q);
  ASSERT_FALSE(qq.is_zero());
  for (int k = 0; k < 3; ++k) {
    ScalarForm f = ScalarForm::basis(0, {k});
    EXPECT_EQ(qq.act(f), q.act(q.act(f)).scaled(2));
  }
}

// ---------------------------------------------------------------------------

TEST(ValidateAlgebroid, Fixtures) {
  EXPECT_TRUE(validate_algebroid(PolyAlgebroid::tangent(2)).valid);
  EXPECT_TRUE(validate_algebroid(PolyAlgebroid::tangent(3)).valid);
  EXPECT_TRUE(validate_algebroid(sl2_point()).valid);
  EXPECT_TRUE(validate_algebroid(PolyAlgebroid(0, 3)).valid);
  EXPECT_TRUE(validate_algebroid(affine_line()).valid);
  EXPECT_TRUE(validate_algebroid(rotations()).valid);
}

TEST(ValidateAlgebroid, PointAgreesWithValidateLie) {
  Rng rng(8);
  int invalid = 0;
  for (int s = 0; s < 20; ++s) {
    LieAlgebra g = oracle::sl2();
    if (s % 2) {
      auto [i, j] = std::pair{random_int(rng, 0, 1), 2};
      Vec v = g.bracket_basis(i, j);
      v[static_cast<std::size_t>(random_int(rng, 0, 2))] += random_rational(rng);
      g.set_bracket(i, j, v);
    }
    const bool lie = validate_lie(g).valid;
    AlgebroidReport rep = validate_algebroid(PolyAlgebroid::from_lie(g));
    EXPECT_EQ(rep.valid, lie);
    EXPECT_TRUE(rep.routes_agree);
    EXPECT_EQ(rep.q_squared_zero, lie);
    invalid += lie ? 0 : 1;
  }
  EXPECT_GT(invalid, 0);
}

TEST(ValidateAlgebroid, BrokenAnchorIsCaughtByBothRoutes) {
  PolyAlgebroid A = PolyAlgebroid::tangent(2);
  A.anchor[0][0] = P_("x2", 2);  // [x2 d1, d2] = -d1 but [e1, e2] = 0
  AlgebroidReport rep = validate_algebroid(A);
  EXPECT_FALSE(rep.valid);
  EXPECT_FALSE(rep.anchor_ok);
  EXPECT_FALSE(rep.q_squared_zero);
  EXPECT_TRUE(rep.routes_agree);
  EXPECT_FALSE(rep.detail.empty());
}

TEST(ValidateAlgebroid, BrokenLeibnizDataIsCaught) {
  // anchor compatible on frames but Jacobi fails through the anchor term
  PolyAlgebroid A = affine_line();
  A.set_bracket(0, 1, {Poly(1), P_("2", 1)});
  AlgebroidReport rep = validate_algebroid(A);
  EXPECT_FALSE(rep.valid);
  EXPECT_TRUE(rep.routes_agree);
}

TEST(ValidateAlgebroid, RoutesAgreeOnRandomPerturbations) {
  Rng rng(9);
  int invalid = 0;
  for (int s = 0; s < 12; ++s) {
    PolyAlgebroid A = s % 3 == 0 ? rotations() : s % 3 == 1 ? affine_line() : PolyAlgebroid::tangent(2);
    const int i = random_int(rng, 0, A.rank - 1), a = random_int(rng, 0, A.base_dim - 1);
    A.anchor[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] += random_poly(rng, A.base_dim, 1, 1);
    AlgebroidReport rep = validate_algebroid(A);
    EXPECT_TRUE(rep.routes_agree);
    invalid += rep.valid ? 0 : 1;
  }
  EXPECT_GT(invalid, 6);
}

// ---------------------------------------------------------------------------

TEST(BFromField, BqIsTheAlgebroidBracket) {
  Rng rng(10);
  for (const auto& A : {affine_line(), rotations(), sl2_point(), PolyAlgebroid::tangent(2)}) {
    GradedField q = homological_field_q(A);
    for (int j = 0; j < A.rank; ++j)
      for (int k = 0; k < A.rank; ++k) {
        std::vector<Poly> want(static_cast<std::size_t>(A.rank), Poly(A.base_dim));
        for (int i = 0; i < A.rank; ++i) want[static_cast<std::size_t>(i)] = A.c(j, k, i);
        EXPECT_EQ(b_eval(q, {A.basis(j), A.basis(k)}), want);
        EXPECT_EQ(b_eval_basis(q, {j, k}), want);
        // B_Q(e_j, g e_k) = g [e_j, e_k] + rho(e_j)(g) e_k
        Poly g = random_poly(rng, A.base_dim, 2, 2);
        Section rhs = scaled(Section(want), g) + scaled(A.basis(k), act(A.anchor_of(A.basis(j)), g));
        EXPECT_EQ(b_eval(q, {A.basis(j), scaled(A.basis(k), g)}), rhs);
      }
    for (int s = 0; s < 5; ++s) {
      Section a = random_section(rng, A, 1), b = random_section(rng, A, 1);
      EXPECT_EQ(b_eval(q, {a, b}), A.bracket(a, b));
    }
  }
}

TEST(BFromField, BasisFormulaAndDerivationRule) {
  Rng rng(11);
  PolyAlgebroid A = rotations();
  for (int s = 0; s < 20; ++s) {
    const int b = random_int(rng, 1, 3);
    GradedField x = random_graded_field(rng, 3, 3, b - 1, 2);
    for (const auto& J : combinations(3, b)) {
      std::vector<Section> e;
      for (int j : J) e.push_back(A.basis(j));
      ASSERT_EQ(b_eval(x, e), b_eval_basis(x, J));
    }
    std::vector<Section> e = random_sections(rng, A, b, 1);
    Poly f = random_poly(rng, 3, 2, 2);
    const int j = random_int(rng, 1, b);
    std::vector<Section> fe = e;
    fe[static_cast<std::size_t>(j - 1)] = scaled(e[static_cast<std::size_t>(j - 1)], f);
    std::vector<Section> rest;
    for (int t = 1; t <= b; ++t)
      if (t != j) rest.push_back(e[static_cast<std::size_t>(t - 1)]);
    Section want = scaled(b_eval(x, e), f) +
                   scaled(e[static_cast<std::size_t>(j - 1)], a_pairing(x, f, rest).scaled(sign_pow(j)));
    EXPECT_EQ(b_eval(x, fe), want);
  }
}

TEST(BFromField, AntisymmetricInArguments) {
  Rng rng(12);
  PolyAlgebroid A = affine_line();
  for (int s = 0; s < 10; ++s) {
    GradedField x = random_graded_field(rng, 1, 2, 1, 2);
    auto e = random_sections(rng, A, 2, 1);
    EXPECT_EQ(b_eval(x, {e[0], e[1]}), scaled(b_eval(x, {e[1], e[0]}), Rational(-1)));
  }
}

TEST(BFromField, PureAnchorPartOnOneSection) {
  // X = x1 d/dx1 of degree 0: B_X(E) = -(-1)^0 <a_X(E^q)> = -x1 dE/dx1
  GradedField x(1, 1, 0);
  x.add_a({}, 0, P_("x1", 1));
  Section e{P_("x1^3 + 2", 1)};
  EXPECT_EQ(b_eval(x, {e}), Section{P_("-3*x1^3", 1)});
}

TEST(BFromField, CommutatorIsPinnedRnBracket) {
  Rng rng(13);
  int nonzero = 0;
  struct Case {
    PolyAlgebroid A;
    int max_deg;
  };
  for (const auto& [A, max_deg] : {Case{PolyAlgebroid::tangent(2), 2}, Case{affine_line(), 2}, Case{rotations(), 1}}) {
    for (int s = 0; s < 25; ++s) {
      const int b = random_int(rng, 1, 3), c = random_int(rng, 1, 3);
      GradedField x = random_graded_field(rng, A.base_dim, A.rank, b - 1, max_deg);
      GradedField y = random_graded_field(rng, A.base_dim, A.rank, c - 1, max_deg);
      auto e = random_sections(rng, A, b + c - 1, 1);
      Section lhs = b_eval(graded_commutator(x, y), e);
      Section rhs = kBCommutatorSwapsOrder ? rna_bracket_eval(b_from_field(y), c, b_from_field(x), b, e)
                                           : rna_bracket_eval(b_from_field(x), b, b_from_field(y), c, e);
      EXPECT_EQ(lhs, rhs);
      nonzero += is_zero(lhs) ? 0 : 1;
    }
  }
  EXPECT_GT(nonzero, 30);
}

// ---------------------------------------------------------------------------

TEST(Phi, OfQIsTorsion) {
  Rng rng(14);
  for (const auto& A : {PolyAlgebroid::tangent(2), affine_line(), rotations(), sl2_point()}) {
    GradedField q = homological_field_q(A);
    for (int s = 0; s < 4; ++s) {
      VectorForm P = random_algebroid_form(rng, A.base_dim, A.rank, 1, 1);
      EXPECT_EQ(phi_map(A, P, q), algebroid_torsion(A, P));
    }
  }
}

TEST(Phi, TensorialProbe) {
  Rng rng(15);
  for (const auto& A : {affine_line(), rotations()}) {
    for (int s = 0; s < 10; ++s) {
      const int b = random_int(rng, 1, 3);
      GradedField x = random_graded_field(rng, A.base_dim, A.rank, b - 1, 2);
      VectorForm P = random_algebroid_form(rng, A.base_dim, A.rank, 1, 1);
      auto e = random_sections(rng, A, b, 1);
      Poly f = random_poly(rng, A.base_dim, 2, 2);
      const Section value = phi_eval(P, x, e);
      for (int j = 0; j < b; ++j) {
        auto fe = e;
        fe[static_cast<std::size_t>(j)] = scaled(e[static_cast<std::size_t>(j)], f);
        ASSERT_EQ(phi_eval(P, x, fe), scaled(value, f));
      }
      // and the form agrees with the evaluator on general sections
      EXPECT_EQ(phi_map(A, P, x).eval(e), value);
    }
  }
}

TEST(Phi, ZeroAndIdentityOperators) {
  Rng rng(16);
  PolyAlgebroid A = affine_line();
  for (int s = 0; s < 10; ++s) {
    const int b = random_int(rng, 1, 3);
    GradedField x = random_graded_field(rng, 1, 2, b - 1, 2);
    EXPECT_TRUE(phi_map(A, VectorForm(1, 2, 1), x).is_zero());
    EXPECT_TRUE(phi_map(A, scalar_op(A, Poly::constant(1, 1)), x).is_zero());
  }
  // b = 0: Phi(X) = B_X()
  GradedField x(1, 2, -1);
  x.add_d({}, 1, P_("x1", 1));
  VectorForm want(1, 2, 0);
  want.add({}, 1, P_("-x1", 1));
  EXPECT_EQ(phi_map(A, VectorForm(1, 2, 1), x), want);
}

// ---------------------------------------------------------------------------

TEST(AlgebroidFn, TangentMatchesFormsModule) {
  Rng rng(17);
  PolyAlgebroid T = PolyAlgebroid::tangent(2);
  for (int s = 0; s < 20; ++s) {
    const int k = random_int(rng, 0, 2), l = random_int(rng, 0, 2 - k);
    VectorForm K = random_vector_form(rng, 2, k, 2), L = random_vector_form(rng, 2, l, 2);
    EXPECT_EQ(algebroid_fn_bracket(T, K, L), fn_bracket(K, L));
  }
}

TEST(AlgebroidFn, GradedAntisymmetryAndJacobi) {
  Rng rng(18);
  PolyAlgebroid A = affine_line();
  for (int s = 0; s < 10; ++s) {
    const int k = random_int(rng, 0, 1), l = random_int(rng, 0, 1), r = random_int(rng, 0, 1);
    VectorForm K = random_algebroid_form(rng, 1, 2, k, 1), L = random_algebroid_form(rng, 1, 2, l, 1),
               M = random_algebroid_form(rng, 1, 2, r, 1);
    EXPECT_EQ(algebroid_fn_bracket(A, K, L), algebroid_fn_bracket(A, L, K).scaled(-sign_pow(k * l)));
    if (k + l + r > 2) continue;
    VectorForm lhs = algebroid_fn_bracket(A, K, algebroid_fn_bracket(A, L, M));
    VectorForm rhs = algebroid_fn_bracket(A, algebroid_fn_bracket(A, K, L), M) +
                     algebroid_fn_bracket(A, L, algebroid_fn_bracket(A, K, M)).scaled(sign_pow(k * l));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(AlgebroidFn, SelfBracketIsTwiceTorsion) {
  Rng rng(19);
  for (const auto& A : {affine_line(), rotations(), sl2_point()}) {
    VectorForm P = random_algebroid_form(rng, A.base_dim, A.rank, 1, 1);
    EXPECT_EQ(algebroid_fn_bracket(A, P, P), algebroid_torsion(A, P).scaled(2));
  }
}

// ---------------------------------------------------------------------------

TEST(PhiChainMap, TangentPlaneDiagonal) {
  PolyAlgebroid T = PolyAlgebroid::tangent(2);
  VectorForm P = VectorForm::diagonal_coordinates(2);
  // the worked example X = eta1 d/dx1
  GradedField x(2, 2, 1);
  x.add_a({0}, 0, Poly::constant(2, 1));
  GradedField q = homological_field_q(T);
  EXPECT_EQ(phi_map(T, P, graded_commutator(q, x).scaled(-1)), algebroid_fn_bracket(T, P, phi_map(T, P, x)));
  PhiChainReport rep = validate_phi_chain_map(T, P, 20, 99);
  EXPECT_TRUE(rep.ok) << rep.detail;
  EXPECT_GT(rep.checked, 100u);
  EXPECT_EQ(rep.seed, 99u);
}

TEST(PhiChainMap, QItselfGivesZeroOnBothSides) {
  PolyAlgebroid T = PolyAlgebroid::tangent(2);
  VectorForm P = VectorForm::diagonal_coordinates(2);
  GradedField q = homological_field_q(T);
  EXPECT_TRUE(graded_commutator(q, q).is_zero());
  EXPECT_TRUE(algebroid_fn_bracket(T, P, phi_map(T, P, q)).is_zero());
}

TEST(PhiChainMap, OtherAlgebroids) {
  {
    PolyAlgebroid A = sl2_point();
    PhiChainReport rep = validate_phi_chain_map(A, constant_diag(A, {1, 1, 3}), 10, 5);
    EXPECT_TRUE(rep.ok) << rep.detail;
  }
  {
    PolyAlgebroid A = affine_line();
    PhiChainReport rep = validate_phi_chain_map(A, scalar_op(A, P_("x1", 1)), 10, 6);
    EXPECT_TRUE(rep.ok) << rep.detail;
  }
  {
    PolyAlgebroid A = rotations();
    PhiChainReport rep = validate_phi_chain_map(A, scalar_op(A, P_("x1^2 + x2^2 + x3^2", 3)), 4, 7, 2, 1);
    EXPECT_TRUE(rep.ok) << rep.detail;
  }
}

TEST(PhiChainMap, OppositeSignFails) {
  // with d_Q = +[Q,-] the square does not commute
  PolyAlgebroid T = PolyAlgebroid::tangent(2);
  VectorForm P = VectorForm::diagonal_coordinates(2);
  GradedField q = homological_field_q(T);
  int witnesses = 0;
  for (int d = 0; d <= 2; ++d)
    for (const auto& x : monomial_fields(2, 2, d, 2)) {
      VectorForm rhs = algebroid_fn_bracket(T, P, phi_map(T, P, x));
      if (rhs.is_zero()) continue;
      EXPECT_NE(phi_map(T, P, graded_commutator(q, x)), rhs) << x;
      ++witnesses;
    }
  EXPECT_GT(witnesses, 5);
}

TEST(PhiChainMap, PreconditionFailures) {
  PolyAlgebroid T = PolyAlgebroid::tangent(2);
  VectorForm bad = VectorForm::diagonal_coordinates(2);
  bad.add({0}, 1, P_("x2", 2));
  EXPECT_THROW(validate_phi_chain_map(T, bad, 1, 1), std::domain_error);
  PolyAlgebroid broken = T;
  broken.anchor[0][0] = P_("x2", 2);
  EXPECT_THROW(validate_phi_chain_map(broken, VectorForm::diagonal_coordinates(2), 1, 1), std::domain_error);
  ConePair pair{GradedField(2, 2, 0), VectorForm(2, 2, 0)};
  EXPECT_THROW(delta_njld(T, bad, pair), std::domain_error);
}

// ---------------------------------------------------------------------------

TEST(DeltaNjld, Definitional) {
  PolyAlgebroid T = PolyAlgebroid::tangent(2);
  VectorForm P = VectorForm::diagonal_coordinates(2);
  GradedField q = homological_field_q(T);
  GradedField x(2, 2, 1);
  x.add_d({0, 1}, 0, P_("x2", 2));
  ConePair out = delta_njld(T, P, {x, VectorForm(2, 2, 1)});
  EXPECT_EQ(out.field, graded_commutator(q, x).scaled(-1));
  EXPECT_EQ(out.form, phi_map(T, P, x).scaled(-1));
  VectorForm e = VectorForm::from_field({P_("x1*x2", 2), P_("1", 2)});
  ConePair out2 = delta_njld(T, P, {GradedField(2, 2, 0), e});
  EXPECT_TRUE(out2.field.is_zero());
  EXPECT_EQ(out2.form, fn_bracket(P, e).scaled(-1));
  EXPECT_THROW(delta_njld(T, P, {GradedField(2, 2, 0), VectorForm(2, 2, 1)}), std::invalid_argument);
}

TEST(DeltaNjld, SquaresToZero) {
  Rng rng(20);
  PolyAlgebroid T = PolyAlgebroid::tangent(2);
  VectorForm P = VectorForm::diagonal_coordinates(2);
  int nonzero = 0;
  for (int s = 0; s < 25; ++s) {
    const int d = random_int(rng, -1, 1);
    ConePair pair{random_graded_field(rng, 2, 2, d, 2), random_algebroid_form(rng, 2, 2, std::max(d, 0), 2)};
    if (d < 0) pair.form = VectorForm(2, 2, -1);
    ConePair once = delta_njld(T, P, pair);
    ConePair twice = delta_njld(T, P, once);
    EXPECT_TRUE(twice.field.is_zero());
    EXPECT_TRUE(twice.form.is_zero()) << twice.form;
    nonzero += once.field.is_zero() && once.form.is_zero() ? 0 : 1;
  }
  EXPECT_GT(nonzero, 15);
}

// ---------------------------------------------------------------------------

TEST(AlgebroidMc, TangentDiagonalVanishes) {
  for (int n = 1; n <= 3; ++n) {
    AlgebroidMcResidual res = algebroid_mc_residual(PolyAlgebroid::tangent(n), VectorForm::diagonal_coordinates(n));
    EXPECT_TRUE(res.vanishes());
    EXPECT_TRUE(res.routes_agree);
  }
}

TEST(AlgebroidMc, TrivialAlgebroidGivesClassicalTorsion) {
  Rng rng(21);
  PolyAlgebroid T = PolyAlgebroid::tangent(3);
  for (int s = 0; s < 10; ++s) {
    VectorForm P = random_vector_form(rng, 3, 1, 2);
    EXPECT_EQ(algebroid_torsion_coefficients(T, P), classical_torsion(P));
    EXPECT_EQ(algebroid_torsion(T, P), nijenhuis_torsion_form(P));
  }
}

TEST(AlgebroidMc, PerturbedOperatorBothRoutes) {
  PolyAlgebroid T = PolyAlgebroid::tangent(2);
  VectorForm P = VectorForm::diagonal_coordinates(2);
  P.add({0}, 1, P_("x2", 2));  // x2 dx1 (x) d2
  AlgebroidMcResidual res = algebroid_mc_residual(T, P);
  EXPECT_TRUE(res.q_squared.is_zero());
  EXPECT_FALSE(res.torsion_brace.is_zero());
  EXPECT_TRUE(res.routes_agree);
  EXPECT_FALSE(res.vanishes());
}

TEST(AlgebroidMc, VanishingMatchesValidators) {
  Rng rng(22);
  int vanish = 0, total = 0;
  std::vector<PolyAlgebroid> algebroids{affine_line(), rotations(), sl2_point(), PolyAlgebroid::tangent(2)};
  PolyAlgebroid broken = affine_line();
  broken.set_bracket(0, 1, {Poly(1), P_("2", 1)});
  algebroids.push_back(broken);
  for (const auto& A : algebroids) {
    std::vector<VectorForm> ops{scalar_op(A, Poly::constant(A.base_dim, 2)),
                                random_algebroid_form(rng, A.base_dim, A.rank, 1, 1)};
    if (A.base_dim > 0) ops.push_back(scalar_op(A, Poly::variable(A.base_dim, 0)));
    for (const auto& P : ops) {
      AlgebroidMcResidual res = algebroid_mc_residual(A, P);
      EXPECT_TRUE(res.routes_agree);
      const bool expected = validate_algebroid(A).valid && algebroid_torsion(A, P).is_zero();
      EXPECT_EQ(res.vanishes(), expected);
      vanish += res.vanishes() ? 1 : 0;
      ++total;
    }
  }
  EXPECT_GT(vanish, 0);
  EXPECT_LT(vanish, total);
}

// Polynomials over S and S (x) S, exact sparse linear algebra, Laurent polynomials.

#include <gtest/gtest.h>

#include <random>

#include "vkr/laurent.hpp"
#include "vkr/linalg.hpp"
#include "vkr/poly.hpp"

using namespace vkr;

namespace {

Poly random_poly(std::mt19937& rng, int n, Side side, int max_deg) {
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, max_deg), terms(1, 4);
  int nv = free_vars(n, side);
  Poly p(n, side);
  for (int t = terms(rng); t > 0; --t) {
    Exponents e(nv, 0);
    int d = deg(rng);
    std::uniform_int_distribution<int> var(0, std::max(nv - 1, 0));
    for (int s = 0; s < d && nv > 0; ++s) ++e[var(rng)];
    p += Poly::monomial(n, side, e, coef(rng));
  }
  return p;
}

}  // namespace

TEST(Poly, AdditiveInverseCancels) {
  Poly x = Poly::x(3, 1);
  EXPECT_TRUE((x + (-x)).is_zero());
}

TEST(Poly, LastVariableIsEliminated) {
  // x_2 = -x_1 when n = 2
  EXPECT_EQ(Poly::x(2, 2), -Poly::x(2, 1));
  EXPECT_EQ(Poly::x(2, 1) * Poly::x(2, 2), -(Poly::x(2, 1).pow(2)));
  Poly sum(4, Side::Left);
  for (int k = 1; k <= 4; ++k) sum += Poly::x(4, k);
  EXPECT_TRUE(sum.is_zero());
}

TEST(Poly, DifferenceOfSquares) {
  Poly x = Poly::x(2, 1, Side::TwoSided), y = Poly::y(2, 1);
  EXPECT_EQ((x + y) * (x - y), x.pow(2) - y.pow(2));
}

TEST(Poly, QuotientOfPowerDifferences) {
  Poly x = Poly::x(3, 1, Side::TwoSided), y = Poly::y(3, 1);
  EXPECT_EQ(psi_quotient(3, 1, 1), Poly::one(3, Side::TwoSided));
  EXPECT_EQ(psi_quotient(3, 1, 2), x + y);
  EXPECT_EQ(psi_quotient(3, 1, 3), x * x + x * y + y * y);
  // (x - y) psi_N = x^N - y^N
  for (int N = 1; N <= 5; ++N) EXPECT_EQ((x - y) * psi_quotient(3, 1, N), x.pow(N) - y.pow(N));
}

TEST(Poly, GradedPieces) {
  EXPECT_EQ(enumerate_graded_piece(2, Side::Left, 0).dim(), 1u);
  auto p4 = enumerate_graded_piece(2, Side::Left, 4);
  ASSERT_EQ(p4.dim(), 1u);
  EXPECT_EQ(p4.basis[0], Exponents{2});
  EXPECT_EQ(enumerate_graded_piece(3, Side::TwoSided, 2).dim(), 4u);
  EXPECT_THROW(enumerate_graded_piece(2, Side::Left, 3), std::invalid_argument);
}

TEST(Poly, MonomialIndexRanksInOrder) {
  for (int nv = 1; nv <= 4; ++nv) {
    MonomialIndex idx(nv, 6);
    for (int d = 0; d <= 6; ++d) {
      auto mons = monomials_of_degree(nv, d);
      ASSERT_EQ(static_cast<long>(mons.size()), idx.count(d));
      for (std::size_t r = 0; r < mons.size(); ++r) EXPECT_EQ(idx.rank(mons[r]), static_cast<long>(r));
      EXPECT_TRUE(std::is_sorted(mons.begin(), mons.end()));
    }
  }
}

TEST(PolyProperty, RingAxiomsOnRandomPolynomials) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + trial % 4;
    Side side = trial % 2 ? Side::TwoSided : Side::Left;
    Poly a = random_poly(rng, n, side, 3), b = random_poly(rng, n, side, 3), c = random_poly(rng, n, side, 3);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a.canonicalized(), a);
  }
}

TEST(PolyProperty, ProductsOfHomogeneousAreHomogeneous) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    Poly a = Poly::x(3, 1 + trial % 3).pow(1 + trial % 2), b = Poly::x(3, 2) + Poly::x(3, 1);
    Poly p = a * b;
    if (p.is_zero()) continue;
    EXPECT_TRUE(p.is_homogeneous());
    EXPECT_EQ(p.degree(), a.degree() + b.degree());
  }
}

TEST(Linalg, HomologyOfSmallComplex) {
  // Q --[1,1]--> Q^2 --[1,-1]--> Q : exact in the middle
  SparseMatrix in(2, 1), out(1, 2);
  in.col[0] = {{0, Rational(1)}, {1, Rational(1)}};
  out.col[0] = {{0, Rational(1)}};
  out.col[1] = {{0, Rational(-1)}};
  EXPECT_TRUE((out * in).is_zero());
  EXPECT_EQ(HomologyAt(&in, &out, 2).dim, 0);
  EXPECT_EQ(HomologyAt(nullptr, &out, 2).dim, 1);
  EXPECT_EQ(HomologyAt(&in, nullptr, 2).dim, 1);
  EXPECT_EQ(HomologyAt(nullptr, nullptr, 2).dim, 2);
}

TEST(Linalg, CoordinatesRejectNonCycles) {
  SparseMatrix out(1, 2);
  out.col[0] = {{0, Rational(1)}};
  HomologyAt h(nullptr, &out, 2);
  ASSERT_EQ(h.dim, 1);
  EXPECT_THROW(h.coordinates({{0, Rational(1)}}), std::logic_error);
  auto c = h.coordinates({{1, Rational(3)}});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_NE(c[0], 0);
}

TEST(LinalgProperty, RankNullityOnRandomMatrices) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> v(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    int r = 1 + trial % 6, c = 1 + (trial * 7) % 6;
    SparseMatrix m(r, c);
    for (int j = 0; j < c; ++j) {
      std::map<int, Rational> col;
      for (int i = 0; i < r; ++i)
        if (int x = v(rng); x != 0 && (trial + i + j) % 3) col[i] = x;
      m.col[j] = to_sparse(col);
    }
    ColumnReduction cr(m);
    EchelonBasis img;
    for (const auto& col : m.col)
      if (!col.empty()) img.insert(col);
    int rank = static_cast<int>(img.vectors().size());
    EXPECT_EQ(static_cast<int>(cr.kernel.size()) + rank, c);
    for (const auto& z : cr.kernel) EXPECT_TRUE(m.apply(z).empty());
    // the solver finds preimages of every column combination
    LinearSolver solver(m);
    SparseVec b = axpy(m.col[0], 2, m.col[c - 1]);
    auto u = solver.solve(b);
    ASSERT_TRUE(u.has_value());
    EXPECT_EQ(m.apply(*u), b);
  }
}

TEST(Linalg, SolverReportsInconsistentSystems) {
  SparseMatrix m(2, 1);
  m.col[0] = {{0, Rational(1)}};
  LinearSolver s(m);
  EXPECT_FALSE(s.solve({{1, Rational(1)}}).has_value());
}

TEST(Laurent, ArithmeticAndDivision) {
  Laurent z = Laurent::monomial(0, 1) - Laurent::monomial(0, -1);
  Laurent p = Laurent::monomial(2, 3) - Laurent::monomial(-1, 0, 4) + Laurent::constant(7);
  EXPECT_EQ((p * z).divide_by_q_minus_inverse(), p);
  EXPECT_THROW(Laurent::constant(1).divide_by_q_minus_inverse(), std::domain_error);
  EXPECT_EQ(z.pow(2), Laurent::monomial(0, 2) - Laurent::constant(2) + Laurent::monomial(0, -2));
  EXPECT_EQ(p - p, Laurent());
}

TEST(Laurent, MonomialSubstitution) {
  // A -> -a^2 q^2 on A^-1 Q^4 gives -a^-2 q^2
  Laurent e = Laurent::monomial(-1, 4);
  EXPECT_EQ(e.substitute(-1, 2, 2, 1, 0, 1), Laurent::monomial(-2, 2, -1));
  EXPECT_EQ(Laurent::monomial(3, 1).substitute(1, 0, 2, 1, 0, 1), Laurent::monomial(0, 7));
}

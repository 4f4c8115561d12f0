// Soergel bimodules: S, B_i, the auxiliary S', maps between them and tensor products.

#include <gtest/gtest.h>

#include <random>

#include "vkr/bimodule.hpp"
#include "vkr/complex.hpp"
#include "vkr/koszul.hpp"

using namespace vkr;

namespace {

int matrix_rank(const SparseMatrix& m) {
  EchelonBasis b;
  for (const auto& c : m.col)
    if (!c.empty()) b.insert(c);
  return static_cast<int>(b.vectors().size());
}

}  // namespace

TEST(Identity, RightActionMatrices) {
  Bimodule s1 = identity_bimodule(1);
  ASSERT_EQ(s1.rank(), 1);
  EXPECT_TRUE(s1.right[0].is_zero());

  Bimodule s2 = identity_bimodule(2);
  EXPECT_EQ(s2.right[0](0, 0), Poly::x(2, 1));
  EXPECT_EQ(s2.right[1](0, 0), -Poly::x(2, 1));

  Bimodule s3 = identity_bimodule(3);
  EXPECT_EQ(s3.right[2](0, 0), -Poly::x(3, 1) - Poly::x(3, 2));
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(identity_bimodule(n).check(), "");
}

TEST(BottSamelson, TwoStrandMatrix) {
  Bimodule b = bs_bimodule(2, 1);
  PolyMatrix expect(2, 2, 2);
  expect(0, 1) = Poly::x(2, 1).pow(2);
  expect(1, 0) = Poly::one(2);
  EXPECT_EQ(b.right[1], expect);
  EXPECT_EQ(b.check(), "");
}

TEST(BottSamelson, SymmetricFunctionsActAsScalars) {
  for (int n = 2; n <= 4; ++n)
    for (int i = 1; i < n; ++i) {
      Bimodule b = bs_bimodule(n, i);
      EXPECT_EQ(b.check(), "") << n << " " << i;
      Poly xi = Poly::x(n, i), xj = Poly::x(n, i + 1);
      EXPECT_EQ(b.right[i - 1] + b.right[i], PolyMatrix::scalar(n, 2, xi + xj));
      EXPECT_EQ(b.right[i - 1] * b.right[i], PolyMatrix::scalar(n, 2, xi * xj));
      for (int k = 1; k <= n; ++k)
        if (k != i && k != i + 1) EXPECT_EQ(b.right[k - 1], PolyMatrix::scalar(n, 2, Poly::x(n, k)));
    }
}

TEST(BottSamelson, OutOfRangeIndex) {
  EXPECT_THROW(bs_bimodule(2, 2), std::out_of_range);
  EXPECT_THROW(bs_bimodule(3, 0), std::out_of_range);
}

TEST(Maps, MultiplicationOnGenerators) {
  for (int n = 2; n <= 3; ++n) {
    BimoduleMap m = mult_map(n, 1);
    EXPECT_EQ(m.check(), "");
    EXPECT_EQ(m.matrix(0, 0), Poly::one(n));
    EXPECT_EQ(m.matrix(0, 1), Poly::x(n, 2));
  }
}

TEST(Maps, InclusionImageAndComposite) {
  for (int n = 2; n <= 4; ++n)
    for (int i = 1; i < n; ++i) {
      // homogeneous once the target carries the shift {1} used in F(s_i)
      BimoduleMap iota = rouquier_positive(n, i).d[0], m = mult_map(n, i);
      EXPECT_EQ(iota.check(), "");
      EXPECT_EQ(iota.matrix(0, 0), Poly::x(n, i));
      EXPECT_EQ(iota.matrix(1, 0), -Poly::one(n));
      // m o iota is multiplication by x_i - x_{i+1}
      EXPECT_EQ((m.matrix * iota.matrix)(0, 0), Poly::x(n, i) - Poly::x(n, i + 1));
    }
}

TEST(Maps, InclusionInjectiveInEachDegree) {
  for (int n = 2; n <= 3; ++n) {
    BimoduleMap iota = rouquier_positive(n, 1).d[0];
    KoszulModule src(iota.source, FunctorSpec{}), tgt(iota.target, FunctorSpec{});
    for (int j = -2; j <= 12; j += 2) {
      SparseMatrix f = src.apply(iota.matrix, tgt, 0, j);
      EXPECT_EQ(matrix_rank(f), src.dim(0, j)) << "n=" << n << " j=" << j;
    }
  }
}

TEST(Auxiliary, CyclicQuotientAndDiagrams) {
  for (int n = 2; n <= 3; ++n)
    for (int i = 1; i < n; ++i) {
      AuxBimodules aux = aux_bimodules(n, i);
      EXPECT_EQ(aux.s_prime.rank(), 3);
      EXPECT_EQ(aux.s_prime.check(), "");
      for (const BimoduleMap* f : {&aux.lower_in, &aux.lower_out, &aux.upper_in, &aux.upper_out})
        EXPECT_EQ(f->check(), "");
      // (y - a)^2 (y - b) acts as zero, y the right action of x_i
      const PolyMatrix& y = aux.s_prime.right[i - 1];
      PolyMatrix a = PolyMatrix::scalar(n, 3, Poly::x(n, i)), b = PolyMatrix::scalar(n, 3, Poly::x(n, i + 1));
      EXPECT_TRUE(((y - a) * (y - a) * (y - b)).is_zero());
      // rows are short exact: out o in = 0
      EXPECT_TRUE((aux.lower_out.matrix * aux.lower_in.matrix).is_zero());
      EXPECT_TRUE((aux.upper_out.matrix * aux.upper_in.matrix).is_zero());
      // the diagram commutes: the left square is iota, the right square is m
      BimoduleMap iota = iota_map(n, i), m = mult_map(n, i);
      EXPECT_EQ(aux.upper_in.matrix * iota.matrix, aux.lower_in.matrix);
      EXPECT_EQ(m.matrix * aux.lower_out.matrix, aux.upper_out.matrix);
    }
}

TEST(Tensor, UnitLaws) {
  Bimodule s = identity_bimodule(3), b = bs_bimodule(3, 2);
  Bimodule sb = tensor_over_S(s, b), bs = tensor_over_S(b, s);
  EXPECT_EQ(sb.degrees, b.degrees);
  EXPECT_EQ(bs.degrees, b.degrees);
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(sb.right[k], b.right[k]);
    EXPECT_EQ(bs.right[k], b.right[k]);
  }
}

TEST(Tensor, SquareOfGenerator) {
  Bimodule b = bs_bimodule(2, 1);
  Bimodule bb = tensor_over_S(b, b);
  EXPECT_EQ(bb.rank(), 4);
  EXPECT_EQ(bb.check(), "");
  // graded rank of B (x) B equals that of B{-1} (+) B{1}
  std::vector<int> d = bb.degrees, expect = {-2, 0, 0, 2};
  std::sort(d.begin(), d.end());
  EXPECT_EQ(d, expect);
}

TEST(Tensor, MapsInterchange) {
  auto s = share(identity_bimodule(2));
  BimoduleMap m = mult_map(2, 1);
  BimoduleMap iota = rouquier_positive(2, 1).d[0];
  BimoduleMap idS = identity_map(s);
  // (m (x) id) on B (x) S is m under the unit isomorphism
  EXPECT_EQ(map_tensor(m, idS).matrix, m.matrix);
  // (f (x) id)(id (x) g) = (id (x) g)(f (x) id) = f (x) g
  BimoduleMap idB = identity_map(m.source), idS2 = identity_map(iota.source), idB2 = identity_map(iota.target);
  BimoduleMap fg = map_tensor(m, iota);
  BimoduleMap a = compose(map_tensor(m, idB2), map_tensor(idB, iota));
  BimoduleMap b = compose(map_tensor(identity_map(m.target), iota), map_tensor(m, idS2));
  EXPECT_EQ(a.matrix, fg.matrix);
  EXPECT_EQ(b.matrix, fg.matrix);
  EXPECT_EQ(fg.check(), "");
  EXPECT_EQ(map_tensor(idB, idB).matrix, PolyMatrix::identity(2, 4));
}

TEST(TensorProperty, RandomWordsGiveValidBimodules) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 2 + trial % 3;
    std::uniform_int_distribution<int> idx(1, n - 1);
    Bimodule t = identity_bimodule(n);
    for (int l = 0; l < 3; ++l) t = tensor_over_S(t, bs_bimodule(n, idx(rng)));
    EXPECT_EQ(t.check(), "");
    EXPECT_EQ(t.rank(), 8);
  }
}

#include <gtest/gtest.h>

#include "bethelab/chain.hpp"

using namespace bethelab;

namespace {

ChainModel<Rational> small_chain(int N, int L, uint64_t seed = 51) {
  RationalSampler pool(seed);
  Rational q = pool.next_q();
  std::vector<Rational> xi;
  for (int k = 0; k < L; ++k) xi.push_back(pool.next());
  return ChainModel<Rational>(N, q, L, xi);
}

TEST(ChainModel, Validation) {
  EXPECT_THROW(ChainModel<Rational>(1, Rational(2), 1, {Rational(1)}), RankMismatch);
  EXPECT_THROW(ChainModel<Rational>(2, Rational(0), 1, {Rational(1)}), InvalidQ);
  EXPECT_THROW(ChainModel<Rational>(2, Rational(1), 1, {Rational(1)}), InvalidQ);
  EXPECT_THROW(ChainModel<Rational>(2, Rational(2), 2, {Rational(1), Rational(1)}), PoleCollision);
  EXPECT_THROW(ChainModel<Rational>(2, Rational(2), 1, {Rational(0)}), ZeroParameter);
}

TEST(Vacuum, Basics) {
  ChainModel<Rational> m(2, Rational(2), 1, {Rational(1)});
  StateVector<Rational> v = vacuum(m);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0], Rational(1));
  EXPECT_EQ(v[1], Rational(0));
  // <0|0> = 1
  StateVector<Rational> w = dual_vacuum(m);
  Rational dot = 0;
  for (std::size_t r = 0; r < v.size(); ++r) dot += w[r] * v[r];
  EXPECT_EQ(dot, Rational(1));
}

TEST(Monodromy, EmptyChainIsIdentity) {
  ChainModel<Rational> m(3, Rational(2), 0, {});
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      Matrix<Rational> t = monodromy_entry(m, i, j, Rational(5));
      if (i == j)
        EXPECT_TRUE(t == Matrix<Rational>::identity(1));
      else
        EXPECT_TRUE(t.is_zero_matrix());
    }
}

TEST(Monodromy, AnnihilationOnVacuum) {
  auto m = small_chain(3, 2);
  Rational z(9, 7);
  StateVector<Rational> v = vacuum(m);
  for (int j = 1; j <= 3; ++j)
    for (int i = 1; i < j; ++i) {
      // T_{j,i}(z)|0> = 0 for j > i
      StateVector<Rational> out = apply_monodromy_right(m, j, i, z, v);
      EXPECT_EQ(max_abs_entry(out), Rational(0));
      // <0|T_{i,j}(z) = 0 for j > i
      StateVector<Rational> outl = apply_monodromy_left(m, i, j, z, dual_vacuum(m));
      EXPECT_EQ(max_abs_entry(outl), Rational(0));
    }
}

TEST(Monodromy, ExplicitNTwoLOne) {
  ChainModel<Rational> m(2, Rational(2), 1, {Rational(1)});
  Rational z(3);
  StateVector<Rational> v = vacuum(m);
  StateVector<Rational> t11 = apply_monodromy_right(m, 1, 1, z, v);
  Rational f = eval_f(z, Rational(1), Rational(2));
  EXPECT_EQ(t11[0], f);
  EXPECT_EQ(t11[1], Rational(0));
  StateVector<Rational> t22 = apply_monodromy_right(m, 2, 2, z, v);
  EXPECT_EQ(t22[0], Rational(1));
  EXPECT_EQ(t22[1], Rational(0));
  // agreement with the dense operator route
  Matrix<Rational> t12 = monodromy_entry(m, 1, 2, z);
  StateVector<Rational> one_magnon = t12.apply(v);
  EXPECT_EQ(one_magnon[1], eval_g(z, Rational(1), Rational(2), GKind::left));
}

TEST(Monodromy, PoleAtInhomogeneity) {
  ChainModel<Rational> m(2, Rational(2), 1, {Rational(1)});
  EXPECT_THROW(apply_monodromy_right(m, 1, 1, Rational(1), vacuum(m)), PoleCollision);
}

TEST(Lambda, EmptyChain) {
  ChainModel<Rational> m(3, Rational(2), 0, {});
  for (int i = 1; i <= 3; ++i) EXPECT_EQ(lambda_fn(m, i, Rational(4)), Rational(1));
}

TEST(Lambda, MatchesDiagonalActionOnVacuum) {
  auto m = small_chain(3, 2, 53);
  Rational z(22, 7);
  EXPECT_EQ(lambda_fn(m, 1, z), eval_f(z, m.xi[0], m.q) * eval_f(z, m.xi[1], m.q));
  StateVector<Rational> v = vacuum(m);
  for (int i = 1; i <= 3; ++i) {
    StateVector<Rational> out = apply_monodromy_right(m, i, i, z, v);
    StateVector<Rational> expect = v;
    for (auto& x : expect) x *= lambda_fn(m, i, z);
    EXPECT_EQ(out, expect) << "i=" << i;
  }
}

TEST(Lambda, ConsistencyNFour) {
  auto m = small_chain(4, 2, 57);
  Rational z(13, 5);
  StateVector<Rational> v = vacuum(m);
  for (int i = 1; i <= 4; ++i) {
    StateVector<Rational> out = apply_monodromy_right(m, i, i, z, v);
    for (std::size_t r = 0; r < out.size(); ++r) out[r] -= lambda_fn(m, i, z) * v[r];
    EXPECT_EQ(max_abs_entry(out), Rational(0));
  }
}

TEST(Transfer, EmptyChain) {
  ChainModel<Rational> m(3, Rational(2), 0, {});
  Matrix<Rational> t = transfer_matrix(m, Rational(2));
  EXPECT_TRUE(t == Matrix<Rational>::identity(1).scaled(Rational(3)));
}

TEST(Transfer, TraceEqualsDiagonalSum) {
  auto m = small_chain(2, 2, 61);
  Rational z(17, 3);
  auto entries = monodromy_all(m, z);
  Matrix<Rational> sum = entries[0] + entries[3];
  EXPECT_TRUE(transfer_matrix(m, z) == sum);
}

TEST(Transfer, CommutingFamily) {
  auto m = small_chain(2, 2, 63);
  Rational z(19, 4), w(23, 5);
  Matrix<Rational> tz = transfer_matrix(m, z), tw = transfer_matrix(m, w);
  EXPECT_TRUE((tz * tw - tw * tz).is_zero_matrix());
  auto m3 = small_chain(3, 3, 67);
  Matrix<Rational> t3z = transfer_matrix(m3, z), t3w = transfer_matrix(m3, w);
  EXPECT_TRUE((t3z * t3w - t3w * t3z).is_zero_matrix());
}

TEST(Rtt, ExactZeroSmall) {
  for (int N : {2, 3}) {
    for (int L : {1, 2}) {
      RationalSampler pool(70 + 10 * N + L);
      Rational q = pool.next_q();
      std::vector<Rational> xi;
      for (int k = 0; k < L; ++k) xi.push_back(pool.next());
      ChainModel<Rational> m(N, q, L, xi);
      Rational u = pool.next(), v = pool.next();
      EXPECT_EQ(rtt_residual(m, u, v), Rational(0)) << "N=" << N << " L=" << L;
    }
  }
}

TEST(Rtt, FloatSmallResidual) {
  ComplexSampler pool(83);
  Cplx q = pool.next_q();
  std::vector<Cplx> xi = pool.take(3);
  ChainModel<Cplx> m(2, q, 3, xi);
  Cplx u = pool.next(), v = pool.next();
  EXPECT_LT(std::abs(rtt_residual(m, u, v)), 1e-12);
}

TEST(EvaluateWord, EmptySumIsZero) {
  auto m = small_chain(2, 2, 91);
  WeightedWordSum<Rational> empty{2, m.q, {}};
  EXPECT_EQ(max_abs_entry(evaluate_word_right(m, empty)), Rational(0));
  EXPECT_EQ(max_abs_entry(evaluate_word_left(m, empty)), Rational(0));
  EXPECT_TRUE(evaluate_word_operator(m, empty).is_zero_matrix());
}

TEST(EvaluateWord, SingleLetterOneMagnon) {
  ChainModel<Rational> m(2, Rational(2), 1, {Rational(1)});
  Rational z(3);
  WeightedWordSum<Rational> sum{2, m.q, {{Rational(1), {Letter<Rational>{1, 2, z}}}}};
  StateVector<Rational> out = evaluate_word_right(m, sum);
  Matrix<Rational> t12 = monodromy_entry(m, 1, 2, z);
  EXPECT_EQ(out, t12.apply(vacuum(m)));
}

TEST(EvaluateWord, Linearity) {
  auto m = small_chain(2, 2, 97);
  Rational a(3, 2), b(-5, 4), z1(31, 7), z2(33, 8);
  Word<Rational> w1{Letter<Rational>{1, 2, z1}};
  Word<Rational> w2{Letter<Rational>{1, 2, z2}, Letter<Rational>{1, 1, z1}};
  WeightedWordSum<Rational> s1{2, m.q, {{Rational(1), w1}}};
  WeightedWordSum<Rational> s2{2, m.q, {{Rational(1), w2}}};
  WeightedWordSum<Rational> combo{2, m.q, {{a, w1}, {b, w2}}};
  StateVector<Rational> lhs = evaluate_word_right(m, combo);
  StateVector<Rational> r1 = evaluate_word_right(m, s1), r2 = evaluate_word_right(m, s2);
  for (std::size_t r = 0; r < lhs.size(); ++r) EXPECT_EQ(lhs[r], a * r1[r] + b * r2[r]);
}

TEST(EvaluateWord, EqualIndexReorderingActsIdentically) {
  auto m = small_chain(2, 2, 101);
  Rational z1(3, 7), z2(5, 9);
  WeightedWordSum<Rational> ab{2, m.q,
                               {{Rational(1),
                                 {Letter<Rational>{1, 2, z1}, Letter<Rational>{1, 2, z2}}}}};
  WeightedWordSum<Rational> ba{2, m.q,
                               {{Rational(1),
                                 {Letter<Rational>{1, 2, z2}, Letter<Rational>{1, 2, z1}}}}};
  EXPECT_TRUE(sums_equal(ab, ba, m));
  EXPECT_EQ(evaluate_word_right(m, ab), evaluate_word_right(m, ba));
}

TEST(SumsEqual, DetectsDifference) {
  auto m = small_chain(2, 1, 103);
  Rational z(3, 7);
  WeightedWordSum<Rational> s1{2, m.q, {{Rational(1), {Letter<Rational>{1, 2, z}}}}};
  WeightedWordSum<Rational> s2{2, m.q, {{Rational(2), {Letter<Rational>{1, 2, z}}}}};
  EXPECT_FALSE(sums_equal(s1, s2, m));
  EXPECT_TRUE(sums_equal(s1, s1, m));
}

}  // namespace

#include <gtest/gtest.h>

#include "bethelab/chain.hpp"
#include "bethelab/words.hpp"

using namespace bethelab;

namespace {

Letter<Rational> let(int i, int j, long p, long q = 1) {
  Rational z(p, q);
  z.canonicalize();
  return Letter<Rational>{i, j, z};
}

WeightedWordSum<Rational> single(int rank, Rational q, Word<Rational> w, Rational c = Rational(1)) {
  return WeightedWordSum<Rational>{rank, q, {{c, std::move(w)}}};
}

TEST(Canonicalize, EqualIndexRunsSort) {
  Rational q(2);
  auto s1 = single(2, q, {let(1, 2, 5), let(1, 2, 3)});
  auto s2 = single(2, q, {let(1, 2, 3), let(1, 2, 5)});
  EXPECT_TRUE(sums_match(canonicalize(s1), canonicalize(s2)));
}

TEST(Canonicalize, DistinctIndicesUntouched) {
  Rational q(2);
  auto s = canonicalize(single(3, q, {let(1, 2, 5), let(2, 3, 3)}));
  ASSERT_EQ(s.terms.size(), 1u);
  EXPECT_EQ(s.terms[0].second[0].row, 1);
  EXPECT_EQ(s.terms[0].second[1].row, 2);
  // and the reordering across distinct indices is a different canonical word
  auto t = canonicalize(single(3, q, {let(2, 3, 3), let(1, 2, 5)}));
  EXPECT_FALSE(sums_match(s, t));
}

TEST(Canonicalize, CancellationDropsTerms) {
  Rational q(2);
  Word<Rational> w{let(1, 2, 5)};
  WeightedWordSum<Rational> s{2, q, {{Rational(3, 4), w}, {Rational(-3, 4), w}}};
  EXPECT_TRUE(canonicalize(s).terms.empty());
}

TEST(Canonicalize, Idempotent) {
  Rational q(2);
  WeightedWordSum<Rational> s{3, q,
                              {{Rational(2), {let(1, 2, 5), let(1, 2, 3), let(2, 3, 7)}},
                               {Rational(1), {let(1, 3, 2)}},
                               {Rational(-1), {let(1, 3, 2)}}}};
  auto once = canonicalize(s);
  auto twice = canonicalize(once);
  EXPECT_TRUE(sums_match(once, twice));
  EXPECT_EQ(once.terms.size(), 1u);
}

TEST(Phi, LetterMapNTwo) {
  Rational q(2);
  auto s = apply_phi(single(2, q, {let(1, 1, 5)}));
  ASSERT_EQ(s.terms.size(), 1u);
  EXPECT_EQ(s.terms[0].second[0].row, 2);
  EXPECT_EQ(s.terms[0].second[0].col, 2);
  EXPECT_EQ(s.q, inverse(Rational(2)));
  EXPECT_EQ(s.rank, 2);

  auto t = apply_phi(single(2, q, {let(1, 2, 5)}));
  EXPECT_EQ(t.terms[0].second[0].row, 1);
  EXPECT_EQ(t.terms[0].second[0].col, 2);
}

TEST(Phi, PreservesWordOrder) {
  Rational q(2);
  auto s = apply_phi(single(3, q, {let(1, 2, 5), let(2, 3, 7)}));
  ASSERT_EQ(s.terms[0].second.size(), 2u);
  // (1,2) -> (2,3) and (2,3) -> (1,2), order kept
  EXPECT_EQ(s.terms[0].second[0].row, 2);
  EXPECT_EQ(s.terms[0].second[0].col, 3);
  EXPECT_EQ(s.terms[0].second[1].row, 1);
  EXPECT_EQ(s.terms[0].second[1].col, 2);
}

TEST(Phi, IndexMapIsInvolutive) {
  Rational q(5, 3);
  auto orig = single(4, q, {let(1, 3, 5), let(2, 4, 7), let(2, 2, 9)}, Rational(7, 2));
  auto back = apply_phi(apply_phi(orig));
  EXPECT_TRUE(sums_match(canonicalize(orig), back));
  EXPECT_EQ(back.q, q);
}

TEST(Psi, SingleLetter) {
  Rational q(2);
  auto s = apply_psi(single(2, q, {let(1, 2, 2)}));
  ASSERT_EQ(s.terms.size(), 1u);
  EXPECT_EQ(s.terms[0].second[0].row, 2);
  EXPECT_EQ(s.terms[0].second[0].col, 1);
  EXPECT_EQ(s.terms[0].second[0].z, Rational(1, 2));
  EXPECT_EQ(s.q, Rational(1, 2));
}

TEST(Psi, ReversesWords) {
  Rational q(2);
  auto s = apply_psi(single(3, q, {let(1, 2, 5), let(2, 3, 7)}));
  ASSERT_EQ(s.terms[0].second.size(), 2u);
  EXPECT_EQ(s.terms[0].second[0].row, 3);
  EXPECT_EQ(s.terms[0].second[0].col, 2);
  EXPECT_EQ(s.terms[0].second[0].z, Rational(1, 7));
  EXPECT_EQ(s.terms[0].second[1].row, 2);
  EXPECT_EQ(s.terms[0].second[1].col, 1);
  EXPECT_EQ(s.terms[0].second[1].z, Rational(1, 5));
}

TEST(Psi, Involution) {
  Rational q(5, 3);
  auto orig = single(3, q, {let(1, 2, 5), let(2, 3, 7), let(1, 1, 9)}, Rational(-3, 8));
  auto back = apply_psi(apply_psi(orig));
  EXPECT_TRUE(sums_match(canonicalize(orig), back));
  EXPECT_EQ(back.q, q);
}

TEST(Psi, ZeroParameterRejected) {
  Rational q(2);
  EXPECT_THROW(apply_psi(single(2, q, {let(1, 2, 0)})), ZeroParameter);
}

TEST(Psi, AntiMorphismOnProducts) {
  RationalSampler pool(113);
  Rational q = pool.next_q();
  auto w1 = single(3, q, {let(1, 2, 5), let(1, 3, 7)}, pool.next());
  auto w2 = single(3, q, {let(2, 3, 11), let(1, 2, 13)}, pool.next());
  auto lhs = apply_psi(sum_product(w1, w2));
  auto rhs = sum_product(apply_psi(w2), apply_psi(w1));
  EXPECT_TRUE(sums_match(lhs, rhs));
}

TEST(Phi, DistributesOverSums) {
  Rational q(2);
  auto w1 = single(3, q, {let(1, 2, 5)}, Rational(2));
  auto w2 = single(3, q, {let(2, 3, 7)}, Rational(-1, 3));
  auto lhs = apply_phi(sum_add(w1, w2));
  auto rhs = sum_add(apply_phi(w1), apply_phi(w2));
  EXPECT_TRUE(sums_match(lhs, rhs));
}

TEST(Morphisms, RandomWordProperties) {
  RationalSampler pool(131);
  std::mt19937_64 rng(509);
  std::uniform_int_distribution<int> idx(1, 4), len(1, 4);
  Rational q = pool.next_q();
  for (int rep = 0; rep < 20; ++rep) {
    Word<Rational> w1, w2;
    for (int l = len(rng); l-- > 0;) w1.push_back(Letter<Rational>{idx(rng), idx(rng), pool.next()});
    for (int l = len(rng); l-- > 0;) w2.push_back(Letter<Rational>{idx(rng), idx(rng), pool.next()});
    auto s1 = single(4, q, w1, pool.next());
    auto s2 = single(4, q, w2, pool.next());

    // phi keeps word lengths and distributes over sums
    auto phi_sum = apply_phi(sum_add(s1, s2));
    for (const auto& [c, w] : phi_sum.terms)
      EXPECT_TRUE(w.size() == w1.size() || w.size() == w2.size());
    EXPECT_TRUE(sums_match(phi_sum, sum_add(apply_phi(s1), apply_phi(s2))));

    // psi is an anti-morphism
    EXPECT_TRUE(
        sums_match(apply_psi(sum_product(s1, s2)), sum_product(apply_psi(s2), apply_psi(s1))));
  }
}

TEST(RepresentationSoundness, CanonicalEqualityImpliesOperatorEquality) {
  RationalSampler pool(127);
  Rational q = pool.next_q();
  std::vector<Rational> xi{pool.next(), pool.next()};
  ChainModel<Rational> model(2, q, 2, xi);
  std::mt19937_64 rng(401);
  std::uniform_int_distribution<int> pick(1, 2);
  for (int rep = 0; rep < 12; ++rep) {
    // random 2-letter word; its equal-index commuted variant must act the same
    int i = pick(rng), j = pick(rng);
    Rational z1 = pool.next(), z2 = pool.next();
    auto a = single(2, q, {Letter<Rational>{i, j, z1}, Letter<Rational>{i, j, z2}});
    auto b = single(2, q, {Letter<Rational>{i, j, z2}, Letter<Rational>{i, j, z1}});
    ASSERT_TRUE(sums_match(canonicalize(a), canonicalize(b)));
    Matrix<Rational> ma = evaluate_word_operator(model, a);
    Matrix<Rational> mb = evaluate_word_operator(model, b);
    EXPECT_TRUE(ma == mb);
  }
}

}  // namespace

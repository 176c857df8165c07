#include <gtest/gtest.h>

#include "bethelab/onshell.hpp"

#ifdef BETHELAB_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace bethelab;

namespace {

TEST(BetheResidual, ClosedFormRootNTwoLOne) {
  // f(t, xi) = 1 solves to t = -xi/q.
  ChainModel<Rational> m(2, Rational(2), 1, {Rational(1)});
  auto t = make_bethe_params<Rational>(2, {{Rational(-1, 2)}});
  auto res = bethe_residual(m, t);
  ASSERT_EQ(res.size(), 1u);
  EXPECT_EQ(res[0], Rational(0));
}

TEST(BetheResidual, GenericPointIsOffShell) {
  ChainModel<Rational> m(2, Rational(2), 1, {Rational(1)});
  auto t = make_bethe_params<Rational>(2, {{Rational(7, 5)}});
  EXPECT_NE(bethe_residual(m, t)[0], Rational(0));
}

TEST(BetheResidual, QuadraticRootsNTwoLTwo) {
  // With xi = (1, 9), q = 2 the one-root system f(t,1) f(t,9) = 1 clears to
  // t^2 = xi1 xi2 / q^2, so t = 3/2 and t = -3/2 are the two on-shell points.
  ChainModel<Rational> m(2, Rational(2), 2, {Rational(1), Rational(9)});
  for (Rational root : {Rational(3, 2), Rational(-3, 2)}) {
    auto t = make_bethe_params<Rational>(2, {{root}});
    EXPECT_EQ(bethe_residual(m, t)[0], Rational(0)) << root.get_str();
  }
}

TEST(BetheResidual, PermutingRootsWithinTypeInvariant) {
  ChainModel<Rational> m(2, Rational(3), 2, {Rational(1), Rational(4)});
  auto t1 = make_bethe_params<Rational>(2, {{Rational(5, 7), Rational(9, 5)}});
  auto t2 = make_bethe_params<Rational>(2, {{Rational(9, 5), Rational(5, 7)}});
  auto r1 = bethe_residual(m, t1);
  auto r2 = bethe_residual(m, t2);
  // same multiset of residuals, aligned with the root order
  EXPECT_EQ(r1[0], r2[1]);
  EXPECT_EQ(r1[1], r2[0]);
}

TEST(Tau, EmptyParametersGiveLambdaSum) {
  ChainModel<Rational> m(3, Rational(2), 2, {Rational(1), Rational(3)});
  auto t = make_bethe_params<Rational>(3, {{}, {}});
  Rational z(7, 2);
  Rational expect = lambda_fn(m, 1, z) + lambda_fn(m, 2, z) + lambda_fn(m, 3, z);
  EXPECT_EQ(tau(m, z, t), expect);
}

TEST(Tau, ClosedFormNTwoLOne) {
  ChainModel<Rational> m(2, Rational(2), 1, {Rational(1)});
  Rational troot(-1, 2);
  auto t = make_bethe_params<Rational>(2, {{troot}});
  Rational z(4);
  Rational expect = eval_f(z, Rational(1), m.q) * eval_f(troot, z, m.q) + eval_f(z, troot, m.q);
  EXPECT_EQ(tau(m, z, t), expect);
}

TEST(EigenResidual, ExactZeroOnShell) {
  ChainModel<Rational> m(2, Rational(2), 1, {Rational(1)});
  auto t = make_bethe_params<Rational>(2, {{Rational(-1, 2)}});
  Rational z(4);
  EXPECT_EQ(eigen_residual_right(m, t, z), Rational(0));
  EXPECT_EQ(eigen_residual_left(m, t, z), Rational(0));
}

TEST(EigenResidual, OffShellDefectIsOrderOne) {
  ChainModel<Rational> m(2, Rational(2), 1, {Rational(1)});
  auto t = make_bethe_params<Rational>(2, {{Rational(7, 5)}});
  Rational z(4);
  EXPECT_GT(scalar_traits<Rational>::abs_approx(eigen_residual_right(m, t, z)), 0.01);
}

TEST(EigenResidual, InvariantUnderVectorScaling) {
  ChainModel<Rational> m(2, Rational(2), 2, {Rational(1), Rational(9)});
  auto t = make_bethe_params<Rational>(2, {{Rational(3, 2)}});
  Rational z(5);
  StateVector<Rational> b = bv_right(m, PreBVKind::B, t);
  StateVector<Rational> tb = transfer_apply_right(m, z, b);
  Rational ev = tau(m, z, t);
  for (std::size_t r = 0; r < tb.size(); ++r) tb[r] -= ev * b[r];
  Rational res = max_abs_entry(tb) / max_abs_entry(b);
  // scale B by -7/3 and recompute the same ratio
  StateVector<Rational> b2 = b;
  for (auto& x : b2) x *= Rational(-7, 3);
  StateVector<Rational> tb2 = transfer_apply_right(m, z, b2);
  for (std::size_t r = 0; r < tb2.size(); ++r) tb2[r] -= ev * b2[r];
  EXPECT_EQ(max_abs_entry(tb2) / max_abs_entry(b2), res);
  EXPECT_EQ(res, eigen_residual_right(m, t, z));
}

TEST(SolveBethe, ClosedFormNTwoLOne) {
  ChainModel<Cplx> m(2, Cplx(2.0, 0.0), 1, {Cplx(1.0, 0.0)});
  auto sol = solve_bethe(m, {1}, default_guesses(m, {1}, 7, 8), 1e-11, 200);
  ASSERT_TRUE(sol.converged);
  EXPECT_LT(std::abs(sol.roots.sets[0][0] - Cplx(-0.5, 0.0)), 1e-12);
}

TEST(SolveBethe, QuadraticOracleNTwoLTwo) {
  ChainModel<Cplx> m(2, Cplx(2.0, 0.0), 2, {Cplx(1.0, 0.0), Cplx(9.0, 0.0)});
  auto sol = solve_bethe(m, {1}, default_guesses(m, {1}, 11, 12), 1e-11, 200);
  ASSERT_TRUE(sol.converged);
  Cplx root = sol.roots.sets[0][0];
  double d = std::min(std::abs(root - Cplx(1.5, 0.0)), std::abs(root + Cplx(1.5, 0.0)));
  EXPECT_LT(d, 1e-10);
}

TEST(SolveBethe, ErrorsAndGuards) {
  ChainModel<Cplx> m(2, Cplx(2.0, 0.0), 1, {Cplx(1.0, 0.0)});
  EXPECT_THROW(solve_bethe(m, {1}, {}, 1e-10, 50), NoConvergence);
  // hopeless guesses far away with zero iterations allowed
  EXPECT_THROW(solve_bethe(m, {1}, {{Cplx(1e6, 1e6)}}, 1e-10, 1), NoConvergence);
}

TEST(SolveBethe, RankThreeRootsAreEigenvectors) {
  ComplexSampler pool(577);
  Cplx q(1.4, 0.3);
  std::vector<Cplx> xi{Cplx(1.1, -0.2), Cplx(-0.7, 0.9)};
  ChainModel<Cplx> m(3, q, 2, xi);
  auto sol = solve_bethe(m, {1, 1}, default_guesses(m, {1, 1}, 13, 40), 1e-9, 300);
  ASSERT_TRUE(sol.converged);
  for (int p = 0; p < 3; ++p) {
    Cplx z = pool.next();
    EXPECT_LT(std::abs(eigen_residual_right(m, sol.roots, z)), 1e-9);
    EXPECT_LT(std::abs(eigen_residual_left(m, sol.roots, z)), 1e-9);
  }
}

#ifdef BETHELAB_HAVE_EIGEN
TEST(Tau, MatchesDenseSpectrum) {
  ChainModel<Cplx> m(2, Cplx(2.0, 0.0), 2, {Cplx(1.0, 0.0), Cplx(9.0, 0.0)});
  auto t = make_bethe_params<Cplx>(2, {{Cplx(1.5, 0.0)}});
  Cplx z(0.4, 0.7);
  Cplx ev = tau(m, z, t);
  Matrix<Cplx> tm = transfer_matrix(m, z);
  Eigen::MatrixXcd em(tm.rows(), tm.cols());
  for (long r = 0; r < tm.rows(); ++r)
    for (long c = 0; c < tm.cols(); ++c) em(r, c) = tm(r, c);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(em, false);
  double best = 1e300;
  for (int k = 0; k < em.rows(); ++k) best = std::min(best, std::abs(solver.eigenvalues()[k] - ev));
  EXPECT_LT(best / std::abs(ev), 1e-9);
}
#endif

}  // namespace

#pragma once

#include <vector>

#include "bethelab/kernel.hpp"
#include "bethelab/linalg.hpp"

namespace bethelab {

// Tensor-leg flattening used everywhere: E_ij (x) E_kl sits at
// row (i-1)*N + (k-1), column (j-1)*N + (l-1), indices 1-based.

/// Trigonometric R-matrix on C^N (x) C^N:
///   f(u,v) on E_ii(x)E_ii, 1 on E_ii(x)E_jj (i != j),
///   g^{(l)}(u,v) on E_ij(x)E_ji and g^{(r)}(u,v) on E_ji(x)E_ij for i < j.
template <class S>
Matrix<S> build_r(const S& u, const S& v, const S& q, int N) {
  if (N < 2) throw RankMismatch("build_r requires N >= 2");
  S f = eval_f(u, v, q);
  S gl = eval_g(u, v, q, GKind::left);
  S gr = eval_g(u, v, q, GKind::right);
  Matrix<S> r(static_cast<long>(N) * N, static_cast<long>(N) * N);
  auto at = [N](int a, int b) { return static_cast<long>(a - 1) * N + (b - 1); };
  for (int i = 1; i <= N; ++i) r(at(i, i), at(i, i)) = f;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      if (i != j) r(at(i, j), at(i, j)) = scalar_traits<S>::one();
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) {
      r(at(i, j), at(j, i)) = gl;
      r(at(j, i), at(i, j)) = gr;
    }
  return r;
}

/// Anti-diagonal involution U = sum_i E_{i, N+1-i}.
template <class S>
Matrix<S> build_u_matrix(int N) {
  if (N < 2) throw RankMismatch("build_u_matrix requires N >= 2");
  Matrix<S> u(N, N);
  for (int i = 1; i <= N; ++i) u(i - 1, N - i) = scalar_traits<S>::one();
  return u;
}

/// Permutation of the two tensor legs.
template <class S>
Matrix<S> permutation_p(int N) {
  Matrix<S> p(static_cast<long>(N) * N, static_cast<long>(N) * N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) p(a * N + b, b * N + a) = scalar_traits<S>::one();
  return p;
}

/// R_21(u,v) = P_12 R_12(u,v) P_12.
template <class S>
Matrix<S> build_r21(const S& u, const S& v, const S& q, int N) {
  Matrix<S> p = permutation_p<S>(N);
  return p * build_r(u, v, q, N) * p;
}

/// Max-magnitude entries of the residual matrices for the R-matrix symmetry
/// relations, in this order:
///   0) R_12(u,v) R_21(v,u) - f(u,v) f(v,u) Id
///   1) R_12(u,v)^{t_1 t_2} - R_21(u,v)
///   2) U_1 U_2 R_12(u,v) U_1^{-1} U_2^{-1} - R_21(u,v)
///   3) R_21(v,u;q) - R_21(u^{-1}, v^{-1}; q)
///   4) R_21(v,u;q) - R_12(u,v; q^{-1})
///   5) R_12(v^{-1}, u^{-1}) - R_12(u,v)
template <class S>
std::vector<S> r_property_residuals(const S& u, const S& v, const S& q, int N) {
  if (is_zero(u) || is_zero(v)) throw ZeroParameter("r_property_residuals requires u, v != 0");
  Matrix<S> r12 = build_r(u, v, q, N);
  Matrix<S> r21_uv = build_r21(u, v, q, N);
  Matrix<S> r21_vu = build_r21(v, u, q, N);
  Matrix<S> id = Matrix<S>::identity(static_cast<long>(N) * N);

  std::vector<S> out;
  out.push_back((r12 * r21_vu - id.scaled(eval_f(u, v, q) * eval_f(v, u, q))).max_abs_entry());
  out.push_back((r12.transpose() - r21_uv).max_abs_entry());
  Matrix<S> uu = Matrix<S>::kron(build_u_matrix<S>(N), build_u_matrix<S>(N));
  out.push_back((uu * r12 * uu - r21_uv).max_abs_entry());
  out.push_back((r21_vu - build_r21(inverse(u), inverse(v), q, N)).max_abs_entry());
  out.push_back((r21_vu - build_r(u, v, inverse(q), N)).max_abs_entry());
  out.push_back((build_r(inverse(v), inverse(u), q, N) - r12).max_abs_entry());
  return out;
}

}  // namespace bethelab

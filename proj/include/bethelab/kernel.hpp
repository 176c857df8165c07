#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "bethelab/errors.hpp"
#include "bethelab/linalg.hpp"
#include "bethelab/scalar.hpp"

namespace bethelab {

/// Ordered list of spectral parameters (a "barred set").  Kernel routines
/// require pairwise distinct elements wherever a pole could be hit.
template <class S>
using ParamSet = std::vector<S>;

/// f(u,v) = (q u - q^{-1} v) / (u - v).
template <class S>
S eval_f(const S& u, const S& v, const S& q) {
  if (is_zero(q)) throw InvalidQ("f requires q != 0");
  if (scalar_traits<S>::equal(u, v, 0.0)) throw PoleCollision("f(u,v) pole at u = v");
  return (q * u - v / q) / (u - v);
}

enum class GKind { plain, left, right };

/// g(u,v) = (q - q^{-1})/(u - v); left/right variants carry an extra u or v.
template <class S>
S eval_g(const S& u, const S& v, const S& q, GKind kind = GKind::plain) {
  if (is_zero(q)) throw InvalidQ("g requires q != 0");
  if (scalar_traits<S>::equal(u, v, 0.0)) throw PoleCollision("g(u,v) pole at u = v");
  S plain = (q - inverse(q)) / (u - v);
  switch (kind) {
    case GKind::plain:
      return plain;
    case GKind::left:
      return u * plain;
    case GKind::right:
      return v * plain;
  }
  throw Error("unreachable");
}

/// Set-product convention: f(xbar, ybar) = prod_{x in xbar} prod_{y in ybar} f(x,y).
/// Empty sets give 1.
template <class S>
S set_f(const ParamSet<S>& xs, const ParamSet<S>& ys, const S& q) {
  S out = scalar_traits<S>::one();
  for (const S& x : xs)
    for (const S& y : ys) out *= eval_f(x, y, q);
  return out;
}

enum class IzKind { plain, left, right };

/// Izergin determinant K_n(xbar | ybar), with the left (* prod x_i) and right
/// (* prod y_j) modifications.  n = 0 gives 1; n = 1 collapses to g(x, y).
template <class S>
S izergin(const ParamSet<S>& xs, const ParamSet<S>& ys, const S& q, IzKind kind = IzKind::plain) {
  if (xs.size() != ys.size()) throw CardinalityMismatch("izergin needs |xbar| = |ybar|");
  if (is_zero(q)) throw InvalidQ("izergin requires q != 0");
  const long n = static_cast<long>(xs.size());
  const S qinv = inverse(q);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      if (i < j && scalar_traits<S>::equal(xs[i], xs[j], 0.0))
        throw PoleCollision("izergin: coinciding x parameters");
      if (i < j && scalar_traits<S>::equal(ys[i], ys[j], 0.0))
        throw PoleCollision("izergin: coinciding y parameters");
      if (scalar_traits<S>::equal(xs[i], ys[j], 0.0))
        throw PoleCollision("izergin: x meets y");
      if (scalar_traits<S>::equal(q * xs[i], qinv * ys[j], 0.0))
        throw PoleCollision("izergin: q x meets q^{-1} y");
    }
  S out = scalar_traits<S>::one();
  if (n > 0) {
    Matrix<S> cauchy(n, n);
    S qdiff = q - qinv;
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        cauchy(i, j) = qdiff / ((xs[i] - ys[j]) * (q * xs[i] - qinv * ys[j]));
    S pref = scalar_traits<S>::one();
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) pref *= q * xs[i] - qinv * ys[j];
    for (long i = 0; i < n; ++i)
      for (long j = i + 1; j < n; ++j) pref /= (xs[i] - xs[j]) * (ys[j] - ys[i]);
    out = pref * determinant(cauchy);
  }
  if (kind == IzKind::left)
    for (const S& x : xs) out *= x;
  if (kind == IzKind::right)
    for (const S& y : ys) out *= y;
  return out;
}

template <class S>
struct BgfValues {
  S b, g, f;
};

/// The three blocks entering the symmetrization identities:
///   B(ybar)        = prod_{l<l'} f(y_{l'}, y_l)
///   G(ybar|xbar)   = prod_l g(y_l, x_l)
///   F(ybar|xbar)   = prod_{l<l'} f(y_l, x_{l'})
template <class S>
BgfValues<S> bgf(const ParamSet<S>& ys, const ParamSet<S>& xs, const S& q) {
  if (xs.size() != ys.size()) throw CardinalityMismatch("bgf needs |xbar| = |ybar|");
  const long n = static_cast<long>(ys.size());
  BgfValues<S> out{scalar_traits<S>::one(), scalar_traits<S>::one(), scalar_traits<S>::one()};
  for (long l = 0; l < n; ++l)
    for (long lp = l + 1; lp < n; ++lp) out.b *= eval_f(ys[lp], ys[l], q);
  for (long l = 0; l < n; ++l) out.g *= eval_g(ys[l], xs[l], q);
  for (long l = 0; l < n; ++l)
    for (long lp = l + 1; lp < n; ++lp) out.f *= eval_f(ys[l], xs[lp], q);
  return out;
}

/// Sum of fn over all permutations of one parameter set.
template <class S, class Fn>
S symmetrize_set(Fn&& fn, const ParamSet<S>& xs) {
  std::vector<int> idx(xs.size());
  std::iota(idx.begin(), idx.end(), 0);
  S total = scalar_traits<S>::zero();
  do {
    ParamSet<S> permuted(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) permuted[i] = xs[idx[i]];
    total += fn(permuted);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return total;
}

/// Sum of fn over the product group S_{n_1} x ... x S_{n_{N-1}} acting on the
/// typed parameter lists independently.
template <class S, class Fn>
S symmetrize(Fn&& fn, const std::vector<ParamSet<S>>& sets) {
  const std::size_t types = sets.size();
  std::vector<std::vector<int>> perm(types);
  for (std::size_t k = 0; k < types; ++k) {
    perm[k].resize(sets[k].size());
    std::iota(perm[k].begin(), perm[k].end(), 0);
  }
  S total = scalar_traits<S>::zero();
  for (;;) {
    std::vector<ParamSet<S>> permuted(types);
    for (std::size_t k = 0; k < types; ++k) {
      permuted[k].resize(sets[k].size());
      for (std::size_t i = 0; i < sets[k].size(); ++i) permuted[k][i] = sets[k][perm[k][i]];
    }
    total += fn(permuted);
    std::size_t k = 0;
    while (k < types && !std::next_permutation(perm[k].begin(), perm[k].end())) ++k;
    if (k == types) break;
  }
  return total;
}

/// Residual of the symmetrization identities
///   side 1:  Sym_ybar B(ybar) G(ybar|xbar) F(ybar|xbar) - K_n(ybar|xbar)
///   side 2:  Sym_xbar B(xbar) G(ybar|xbar) F(ybar|xbar) - K_n(ybar|xbar)
/// Vanishes identically at generic points.
template <class S>
S ident_residual(int side, const ParamSet<S>& ys, const ParamSet<S>& xs, const S& q) {
  if (side != 1 && side != 2) throw Error("ident_residual: side must be 1 or 2");
  S sym = scalar_traits<S>::zero();
  if (side == 1) {
    sym = symmetrize_set<S>(
        [&](const ParamSet<S>& yp) -> S {
          BgfValues<S> v = bgf(yp, xs, q);
          return v.b * v.g * v.f;
        },
        ys);
  } else {
    sym = symmetrize_set<S>(
        [&](const ParamSet<S>& xp) -> S {
          BgfValues<S> v = bgf(ys, xp, q);
          S bx = scalar_traits<S>::one();
          for (std::size_t l = 0; l < xp.size(); ++l)
            for (std::size_t lp = l + 1; lp < xp.size(); ++lp) bx *= eval_f(xp[lp], xp[l], q);
          return bx * v.g * v.f;
        },
        xs);
  }
  return sym - izergin(ys, xs, q);
}

}  // namespace bethelab

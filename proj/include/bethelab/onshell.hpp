#pragma once

#include <utility>
#include <vector>

#include "bethelab/bethe.hpp"
#include "bethelab/chain.hpp"
#include "bethelab/kernel.hpp"
#include "bethelab/linalg.hpp"

namespace bethelab {

/// Residuals of the Bethe system, one per root, in type-major order:
///   lambda_i / lambda_{i+1}  -  (-1)^{n_i - 1}
///     prod_{m != j} f(t^i_j, t^i_m) / f(t^i_m, t^i_j)
///     prod_m f(t^i_j, t^{i-1}_m)^{-1}  prod_m f(t^{i+1}_m, t^i_j)
/// with the conventions tbar^0 = tbar^N = empty.
template <class S>
std::vector<S> bethe_residual(const ChainModel<S>& model, const BetheParams<S>& t) {
  const int types = model.N - 1;
  if (static_cast<int>(t.sets.size()) != types)
    throw CardinalityMismatch("bethe_residual: wrong number of types");
  std::vector<S> out;
  for (int i = 1; i <= types; ++i) {
    const auto& roots = t.sets[i - 1];
    const int ni = static_cast<int>(roots.size());
    for (int j = 0; j < ni; ++j) {
      const S& tij = roots[j];
      S lhs = lambda_fn(model, i, tij) / lambda_fn(model, i + 1, tij);
      S rhs = (ni - 1) % 2 == 0 ? scalar_traits<S>::one() : S(-scalar_traits<S>::one());
      for (int m = 0; m < ni; ++m) {
        if (m == j) continue;
        rhs *= eval_f(tij, roots[m], model.q) / eval_f(roots[m], tij, model.q);
      }
      if (i >= 2)
        for (const S& prev : t.sets[i - 2]) rhs /= eval_f(tij, prev, model.q);
      if (i + 1 <= types)
        for (const S& next : t.sets[i]) rhs *= eval_f(next, tij, model.q);
      out.push_back(lhs - rhs);
    }
  }
  return out;
}

/// Transfer-matrix eigenvalue candidate
///   tau(z) = sum_i lambda_i(z) prod_j f(z, t^{i-1}_j) prod_j f(t^i_j, z).
template <class S>
S tau(const ChainModel<S>& model, const S& z, const BetheParams<S>& t) {
  const int types = model.N - 1;
  if (static_cast<int>(t.sets.size()) != types)
    throw CardinalityMismatch("tau: wrong number of types");
  S total = scalar_traits<S>::zero();
  for (int i = 1; i <= model.N; ++i) {
    S term = lambda_fn(model, i, z);
    if (i >= 2)
      for (const S& tj : t.sets[i - 2]) term *= eval_f(z, tj, model.q);
    if (i <= types)
      for (const S& tj : t.sets[i - 1]) term *= eval_f(tj, z, model.q);
    total += term;
  }
  return total;
}

/// ||T(z) B - tau(z) B|| / ||B|| in the max norm (both exact and float).
template <class S>
S eigen_residual_right(const ChainModel<S>& model, const BetheParams<S>& t, const S& z) {
  StateVector<S> b = bv_right(model, PreBVKind::B, t);
  S bnorm = max_abs_entry(b);
  if (is_zero(bnorm)) throw ZeroVector("right Bethe vector vanishes");
  StateVector<S> tb = transfer_apply_right(model, z, b);
  S ev = tau(model, z, t);
  for (std::size_t r = 0; r < tb.size(); ++r) tb[r] -= ev * b[r];
  return max_abs_entry(tb) / bnorm;
}

template <class S>
S eigen_residual_left(const ChainModel<S>& model, const BetheParams<S>& t, const S& z) {
  StateVector<S> c = bv_left(model, PreBVKind::C, t);
  S cnorm = max_abs_entry(c);
  if (is_zero(cnorm)) throw ZeroVector("left Bethe vector vanishes");
  StateVector<S> ct = transfer_apply_left(model, z, c);
  S ev = tau(model, z, t);
  for (std::size_t r = 0; r < ct.size(); ++r) ct[r] -= ev * c[r];
  return max_abs_entry(ct) / cnorm;
}

struct BetheSolution {
  BetheParams<Cplx> roots;
  std::vector<Cplx> residuals;  // rational-form residuals per root
  int iterations = 0;
  bool converged = false;
};

namespace detail {

/// Denominator-cleared Bethe system: polynomial in the roots, so Newton never
/// trips over the poles of f.  num/den split of f and of lambda_1.
inline std::vector<Cplx> cleared_system(const ChainModel<Cplx>& model,
                                        const std::vector<std::vector<Cplx>>& sets) {
  const int types = model.N - 1;
  const Cplx q = model.q;
  const Cplx qi = 1.0 / q;
  auto num = [&](const Cplx& a, const Cplx& b) { return q * a - qi * b; };
  auto den = [](const Cplx& a, const Cplx& b) { return a - b; };
  std::vector<Cplx> out;
  for (int i = 1; i <= types; ++i) {
    const auto& roots = sets[i - 1];
    const int ni = static_cast<int>(roots.size());
    for (int j = 0; j < ni; ++j) {
      const Cplx& tij = roots[j];
      Cplx lam_num_i(1.0), lam_den_i(1.0), lam_num_n(1.0), lam_den_n(1.0);
      if (i == 1)
        for (const Cplx& xi : model.xi) {
          lam_num_i *= num(tij, xi);
          lam_den_i *= den(tij, xi);
        }
      Cplx lhs = lam_num_i * lam_den_n;
      Cplx rhs = ((ni - 1) % 2 == 0 ? 1.0 : -1.0) * lam_num_n * lam_den_i;
      for (int m = 0; m < ni; ++m) {
        if (m == j) continue;
        lhs *= num(roots[m], tij);
        rhs *= num(tij, roots[m]);
      }
      if (i >= 2)
        for (const Cplx& prev : sets[i - 2]) {
          lhs *= num(tij, prev);
          rhs *= den(tij, prev);
        }
      if (i + 1 <= types)
        for (const Cplx& next : sets[i]) {
          lhs *= den(next, tij);
          rhs *= num(next, tij);
        }
      // cross-multiplied residual; the sign bookkeeping of the m != j
      // denominators is absorbed by clearing both sides the same way
      for (int m = 0; m < ni; ++m) {
        if (m == j) continue;
        lhs *= den(tij, roots[m]);
        rhs *= den(roots[m], tij);
      }
      out.push_back(lhs - rhs);
    }
  }
  return out;
}

inline std::vector<Cplx> flatten(const std::vector<std::vector<Cplx>>& sets) {
  std::vector<Cplx> out;
  for (const auto& list : sets) out.insert(out.end(), list.begin(), list.end());
  return out;
}

inline std::vector<std::vector<Cplx>> unflatten(const std::vector<Cplx>& flat,
                                                const Cardinalities& n) {
  std::vector<std::vector<Cplx>> out;
  std::size_t pos = 0;
  for (int nk : n) {
    out.emplace_back(flat.begin() + pos, flat.begin() + pos + nk);
    pos += nk;
  }
  return out;
}

}  // namespace detail

/// Damped Newton iteration on the denominator-cleared Bethe system with
/// multi-start over the supplied guesses.  Roots colliding with each other or
/// with an inhomogeneity are rejected.
inline BetheSolution solve_bethe(const ChainModel<Cplx>& model, const Cardinalities& n,
                                 const std::vector<std::vector<Cplx>>& guesses, double tolerance,
                                 int max_iter) {
  if (static_cast<int>(n.size()) != model.N - 1)
    throw CardinalityMismatch("solve_bethe: wrong number of types");
  int total = 0;
  for (int nk : n) total += nk;
  if (total == 0) throw Error("solve_bethe: nothing to solve");
  if (guesses.empty()) throw NoConvergence("solve_bethe: no guesses supplied");

  double scale = 1.0;
  for (const Cplx& xi : model.xi) scale = std::max(scale, std::abs(xi));

  BetheSolution best;
  int iterations_total = 0;
  for (const auto& guess : guesses) {
    if (static_cast<int>(guess.size()) != total) throw DimensionMismatch("guess size mismatch");
    for (std::size_t a = 0; a < guess.size(); ++a)
      for (std::size_t b = a + 1; b < guess.size(); ++b)
        if (guess[a] == guess[b]) throw PoleCollision("guesses must be pairwise distinct");
    std::vector<Cplx> x = guess;
    for (int it = 0; it < max_iter; ++it) {
      ++iterations_total;
      auto fx = detail::cleared_system(model, detail::unflatten(x, n));
      double fnorm = max_abs_approx(fx);
      if (fnorm == 0.0) break;
      Matrix<Cplx> jac(total, total);
      const double h = 1e-7 * scale;
      for (int c = 0; c < total; ++c) {
        std::vector<Cplx> xh = x;
        xh[c] += Cplx(h, 0.0);
        auto fh = detail::cleared_system(model, detail::unflatten(xh, n));
        for (int r = 0; r < total; ++r) jac(r, c) = (fh[r] - fx[r]) / Cplx(h, 0.0);
      }
      std::vector<Cplx> step;
      try {
        std::vector<Cplx> rhs(fx.size());
        for (std::size_t r = 0; r < fx.size(); ++r) rhs[r] = -fx[r];
        step = solve_linear(jac, rhs);
      } catch (const DegenerateJacobian&) {
        break;
      }
      double damping = 1.0;
      bool improved = false;
      for (int halving = 0; halving < 12; ++halving) {
        std::vector<Cplx> xnew = x;
        for (int c = 0; c < total; ++c) xnew[c] += damping * step[c];
        double fnew = max_abs_approx(detail::cleared_system(model, detail::unflatten(xnew, n)));
        if (fnew < fnorm) {
          x = std::move(xnew);
          improved = true;
          break;
        }
        damping /= 2;
      }
      if (!improved) break;  // stalled at the attainable floor
    }

    // reject root collisions and inhomogeneity hits
    bool admissible = true;
    for (std::size_t a = 0; a < x.size() && admissible; ++a) {
      if (std::abs(x[a]) < 1e-10 * scale) admissible = false;
      for (std::size_t b = a + 1; b < x.size(); ++b)
        if (std::abs(x[a] - x[b]) < 1e-8 * scale) admissible = false;
      for (const Cplx& xi : model.xi)
        if (std::abs(x[a] - xi) < 1e-10 * scale) admissible = false;
    }
    if (!admissible) continue;

    BetheParams<Cplx> roots{detail::unflatten(x, n)};
    std::vector<Cplx> res = bethe_residual(model, roots);
    if (max_abs_approx(res) <= tolerance) {
      best.roots = std::move(roots);
      best.residuals = std::move(res);
      best.iterations = iterations_total;
      best.converged = true;
      return best;
    }
  }
  throw NoConvergence("solve_bethe: no admissible root set from the supplied guesses");
}

/// Deterministic guess bank around the expected root locations -xi_k / q plus
/// seeded perturbations.
inline std::vector<std::vector<Cplx>> default_guesses(const ChainModel<Cplx>& model,
                                                      const Cardinalities& n, std::uint64_t seed,
                                                      int count) {
  int total = 0;
  for (int nk : n) total += nk;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<std::vector<Cplx>> out;
  for (int g = 0; g < count; ++g) {
    std::vector<Cplx> x;
    for (int c = 0; c < total; ++c) {
      Cplx base = model.xi.empty() ? Cplx(1.0, 0.0) : -model.xi[c % model.xi.size()] / model.q;
      double spread = (g == 0) ? 0.05 : 0.6;
      x.push_back(base + spread * Cplx(unit(rng), unit(rng)));
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace bethelab

#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bethelab/kernel.hpp"
#include "bethelab/rmatrix.hpp"
#include "bethelab/linalg.hpp"
#include "bethelab/words.hpp"

namespace bethelab {

/// Inhomogeneous L-site chain in the vector representation of rank N.
/// Site k contributes the factor R_{0k}(z, xi_k) to the monodromy
/// T(z) = R_{0L} ... R_{01} (site 1 applied first).
template <class S>
struct ChainModel {
  int N;
  S q;
  int L;
  std::vector<S> xi;

  ChainModel(int rank, S deformation, int sites, std::vector<S> inhomogeneities)
      : N(rank), q(std::move(deformation)), L(sites), xi(std::move(inhomogeneities)) {
    if (N < 2) throw RankMismatch("chain rank must be >= 2");
    if (L < 0 || static_cast<int>(xi.size()) != L)
      throw DimensionMismatch("need one inhomogeneity per site");
    if (is_zero(q)) throw InvalidQ("q must be nonzero");
    if constexpr (scalar_traits<S>::is_exact) {
      if (scalar_traits<S>::equal(q, S(1), 0.0) || scalar_traits<S>::equal(q, S(-1), 0.0))
        throw InvalidQ("exact backend requires q != +-1");
    }
    for (std::size_t a = 0; a < xi.size(); ++a) {
      if (is_zero(xi[a])) throw ZeroParameter("inhomogeneities must be nonzero");
      for (std::size_t b = a + 1; b < xi.size(); ++b)
        if (scalar_traits<S>::equal(xi[a], xi[b], 0.0))
          throw PoleCollision("inhomogeneities must be pairwise distinct");
    }
  }

  long dim() const {
    long d = 1;
    for (int k = 0; k < L; ++k) d *= N;
    return d;
  }

  long stride(int site) const {  // site is 1-based; site 1 is the fastest digit
    long s = 1;
    for (int k = 1; k < site; ++k) s *= N;
    return s;
  }
};

template <class S>
using StateVector = std::vector<S>;

/// |0> = e_1 (x) ... (x) e_1.
template <class S>
StateVector<S> vacuum(const ChainModel<S>& model) {
  StateVector<S> v(static_cast<std::size_t>(model.dim()), scalar_traits<S>::zero());
  v[0] = scalar_traits<S>::one();
  return v;
}

template <class S>
StateVector<S> dual_vacuum(const ChainModel<S>& model) {
  return vacuum(model);
}

/// Vacuum eigenvalue of T_{ii}(z): lambda_1(z) = prod_k f(z, xi_k), and
/// lambda_i(z) = 1 for i >= 2 in this realization.
template <class S>
S lambda_fn(const ChainModel<S>& model, int i, const S& z) {
  if (i < 1 || i > model.N) throw RankMismatch("lambda index out of range");
  if (i > 1) return scalar_traits<S>::one();
  S out = scalar_traits<S>::one();
  for (const S& xi : model.xi) out *= eval_f(z, xi, model.q);
  return out;
}

namespace detail {

template <class S>
void check_spectral_point(const ChainModel<S>& model, const S& z) {
  for (const S& xi : model.xi)
    if (scalar_traits<S>::equal(z, xi, 0.0))
      throw PoleCollision("spectral parameter hits an inhomogeneity");
}

/// One site factor applied to the bank of auxiliary-slot payloads:
///   out[a] = sum_b R_{0,site}[a][b] payload[b]
/// where R[a][a] scales site-digit a by f and leaves other digits alone, and
/// R[a][b] (a != b) moves site-digit a to b with weight g^{(l)} or g^{(r)}.
/// Payload is a vector (V = StateVector) or a dense operator column bank.
template <class S>
void site_step_right(const ChainModel<S>& model, int site, const S& z,
                     std::vector<StateVector<S>>& bank) {
  const int N = model.N;
  const long dim = model.dim();
  const long stride = model.stride(site);
  const S f = eval_f(z, model.xi[site - 1], model.q);
  const S gl = eval_g(z, model.xi[site - 1], model.q, GKind::left);
  const S gr = eval_g(z, model.xi[site - 1], model.q, GKind::right);
  std::vector<StateVector<S>> out(N, StateVector<S>(static_cast<std::size_t>(dim),
                                                    scalar_traits<S>::zero()));
  for (int b = 0; b < N; ++b) {
    const StateVector<S>& src = bank[b];
    for (long idx = 0; idx < dim; ++idx) {
      const S& x = src[idx];
      if (is_zero(x)) continue;
      const int digit = static_cast<int>((idx / stride) % N);
      // diagonal slot a = b
      if (digit == b)
        out[b][idx] += f * x;
      else
        out[b][idx] += x;
      // off-diagonal slots a != b read digit == a and deposit at digit == b
      if (digit != b) {
        const int a = digit;
        const S& w = (a < b) ? gl : gr;
        out[a][idx + static_cast<long>(b - a) * stride] += w * x;
      }
    }
  }
  bank = std::move(out);
}

template <class S>
void site_step_left(const ChainModel<S>& model, int site, const S& z,
                    std::vector<StateVector<S>>& bank) {
  // Row-covector version: out[b] = sum_a bank[a] R_{0,site}[a][b].
  const int N = model.N;
  const long dim = model.dim();
  const long stride = model.stride(site);
  const S f = eval_f(z, model.xi[site - 1], model.q);
  const S gl = eval_g(z, model.xi[site - 1], model.q, GKind::left);
  const S gr = eval_g(z, model.xi[site - 1], model.q, GKind::right);
  std::vector<StateVector<S>> out(N, StateVector<S>(static_cast<std::size_t>(dim),
                                                    scalar_traits<S>::zero()));
  for (int a = 0; a < N; ++a) {
    const StateVector<S>& src = bank[a];
    for (long idx = 0; idx < dim; ++idx) {
      const S& x = src[idx];
      if (is_zero(x)) continue;
      const int digit = static_cast<int>((idx / stride) % N);
      if (digit == a)
        out[a][idx] += f * x;
      else
        out[a][idx] += x;
      // w E_{b,a} read at digit b, deposit at digit a: covector moves b -> a
      if (digit != a) {
        const int b = digit;
        const S& w = (a < b) ? gl : gr;
        out[b][idx + static_cast<long>(a - b) * stride] += w * x;
      }
    }
  }
  bank = std::move(out);
}

}  // namespace detail

/// T_{ij}(z) applied to a vector without materializing the operator.
template <class S>
StateVector<S> apply_monodromy_right(const ChainModel<S>& model, int i, int j, const S& z,
                                     const StateVector<S>& v) {
  if (i < 1 || i > model.N || j < 1 || j > model.N) throw RankMismatch("monodromy index out of range");
  detail::check_spectral_point(model, z);
  std::vector<StateVector<S>> bank(model.N,
                                   StateVector<S>(static_cast<std::size_t>(model.dim()),
                                                  scalar_traits<S>::zero()));
  bank[j - 1] = v;
  for (int site = 1; site <= model.L; ++site) detail::site_step_right(model, site, z, bank);
  return bank[i - 1];
}

/// w T_{ij}(z) for a row covector w.
template <class S>
StateVector<S> apply_monodromy_left(const ChainModel<S>& model, int i, int j, const S& z,
                                    const StateVector<S>& w) {
  if (i < 1 || i > model.N || j < 1 || j > model.N) throw RankMismatch("monodromy index out of range");
  detail::check_spectral_point(model, z);
  std::vector<StateVector<S>> bank(model.N,
                                   StateVector<S>(static_cast<std::size_t>(model.dim()),
                                                  scalar_traits<S>::zero()));
  bank[i - 1] = w;
  for (int site = model.L; site >= 1; --site) detail::site_step_left(model, site, z, bank);
  return bank[j - 1];
}

/// All N^2 monodromy entries at once, as dense operators.
template <class S>
std::vector<Matrix<S>> monodromy_all(const ChainModel<S>& model, const S& z) {
  detail::check_spectral_point(model, z);
  const int N = model.N;
  const long dim = model.dim();
  std::vector<Matrix<S>> entries(static_cast<std::size_t>(N) * N, Matrix<S>(dim, dim));
  // Column c of every entry is T_{ij} e_c, obtained from one bank iteration.
  for (long c = 0; c < dim; ++c) {
    for (int j = 1; j <= N; ++j) {
      std::vector<StateVector<S>> bank(N, StateVector<S>(static_cast<std::size_t>(dim),
                                                         scalar_traits<S>::zero()));
      bank[j - 1][c] = scalar_traits<S>::one();
      for (int site = 1; site <= model.L; ++site) detail::site_step_right(model, site, z, bank);
      for (int i = 1; i <= N; ++i)
        for (long r = 0; r < dim; ++r)
          entries[(i - 1) * N + (j - 1)](r, c) = bank[i - 1][r];
    }
  }
  return entries;
}

/// Single entry <i|_0 T(z) |j>_0 as a dense operator.
template <class S>
Matrix<S> monodromy_entry(const ChainModel<S>& model, int i, int j, const S& z) {
  if (i < 1 || i > model.N || j < 1 || j > model.N) throw RankMismatch("monodromy index out of range");
  detail::check_spectral_point(model, z);
  const long dim = model.dim();
  Matrix<S> out(dim, dim);
  for (long c = 0; c < dim; ++c) {
    StateVector<S> e(static_cast<std::size_t>(dim), scalar_traits<S>::zero());
    e[c] = scalar_traits<S>::one();
    StateVector<S> col = apply_monodromy_right(model, i, j, z, e);
    for (long r = 0; r < dim; ++r) out(r, c) = col[r];
  }
  return out;
}

/// Transfer matrix sum_i T_{ii}(z).
template <class S>
Matrix<S> transfer_matrix(const ChainModel<S>& model, const S& z) {
  auto entries = monodromy_all(model, z);
  Matrix<S> out(model.dim(), model.dim());
  for (int i = 1; i <= model.N; ++i) out += entries[(i - 1) * model.N + (i - 1)];
  return out;
}

template <class S>
StateVector<S> transfer_apply_right(const ChainModel<S>& model, const S& z,
                                    const StateVector<S>& v) {
  StateVector<S> out(v.size(), scalar_traits<S>::zero());
  for (int i = 1; i <= model.N; ++i) {
    StateVector<S> part = apply_monodromy_right(model, i, i, z, v);
    for (std::size_t r = 0; r < out.size(); ++r) out[r] += part[r];
  }
  return out;
}

template <class S>
StateVector<S> transfer_apply_left(const ChainModel<S>& model, const S& z,
                                   const StateVector<S>& w) {
  StateVector<S> out(w.size(), scalar_traits<S>::zero());
  for (int i = 1; i <= model.N; ++i) {
    StateVector<S> part = apply_monodromy_left(model, i, i, z, w);
    for (std::size_t r = 0; r < out.size(); ++r) out[r] += part[r];
  }
  return out;
}

/// Max-magnitude entry of R(u,v)(T(u) (x) 1)(1 (x) T(v)) minus its exchanged
/// counterpart, on aux (x) aux (x) quantum.  Zero is the exchange relation.
template <class S>
S rtt_residual(const ChainModel<S>& model, const S& u, const S& v) {
  if (scalar_traits<S>::equal(u, v, 0.0)) throw PoleCollision("rtt_residual needs u != v");
  const int N = model.N;
  const long dim = model.dim();
  auto tu = monodromy_all(model, u);
  auto tv = monodromy_all(model, v);
  Matrix<S> r = build_r(u, v, model.q, N);

  // All pairwise operator products, both orders.
  std::vector<Matrix<S>> uv(static_cast<std::size_t>(N) * N * N * N);
  std::vector<Matrix<S>> vu(static_cast<std::size_t>(N) * N * N * N);
  auto pidx = [N](int a, int j, int b, int l) {
    return ((static_cast<std::size_t>(a) * N + j) * N + b) * N + l;
  };
  for (int a = 0; a < N; ++a)
    for (int j = 0; j < N; ++j)
      for (int b = 0; b < N; ++b)
        for (int l = 0; l < N; ++l) {
          uv[pidx(a, j, b, l)] = tu[a * N + j] * tv[b * N + l];
          vu[pidx(a, j, b, l)] = tv[b * N + l] * tu[a * N + j];
        }

  auto rat = [&r, N](int row1, int row2, int col1, int col2) -> const S& {
    return r(static_cast<long>(row1) * N + row2, static_cast<long>(col1) * N + col2);
  };
  S best = scalar_traits<S>::zero();
  Matrix<S> zero(dim, dim);
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k)
      for (int j = 0; j < N; ++j)
        for (int l = 0; l < N; ++l) {
          Matrix<S> lhs = zero;
          // R[(i,k),(a,b)] nonzero only for (a,b) in {(i,k), (k,i)}
          if (!is_zero(rat(i, k, i, k))) lhs += uv[pidx(i, j, k, l)].scaled(rat(i, k, i, k));
          if (i != k && !is_zero(rat(i, k, k, i))) lhs += uv[pidx(k, j, i, l)].scaled(rat(i, k, k, i));
          Matrix<S> rhs = zero;
          if (!is_zero(rat(j, l, j, l))) rhs += vu[pidx(i, j, k, l)].scaled(rat(j, l, j, l));
          if (j != l && !is_zero(rat(l, j, j, l))) rhs += vu[pidx(i, l, k, j)].scaled(rat(l, j, j, l));
          S m = (lhs - rhs).max_abs_entry();
          if (scalar_traits<S>::less(best, m)) best = m;
        }
  return best;
}

namespace detail {
template <class S>
Matrix<S> monodromy_for_letter(const ChainModel<S>& model,
                               std::map<S, std::vector<Matrix<S>>, ScalarLess<S>>& cache,
                               const Letter<S>& l) {
  auto it = cache.find(l.z);
  if (it == cache.end()) it = cache.emplace(l.z, monodromy_all(model, l.z)).first;
  return it->second[(l.row - 1) * model.N + (l.col - 1)];
}
}  // namespace detail

template <class S>
void check_word_sum(const ChainModel<S>& model, const WeightedWordSum<S>& sum) {
  if (sum.rank != model.N) throw RankMismatch("word sum rank does not match the chain");
  if (!scalar_traits<S>::equal(sum.q, model.q, 0.0))
    throw DimensionMismatch("word sum q tag does not match the chain");
}

/// Evaluates the sum on |0>, applying letters right to left; operators are
/// never materialized.
template <class S>
StateVector<S> evaluate_word_right(const ChainModel<S>& model, const WeightedWordSum<S>& sum) {
  check_word_sum(model, sum);
  StateVector<S> total(static_cast<std::size_t>(model.dim()), scalar_traits<S>::zero());
  for (const auto& [coeff, word] : sum.terms) {
    StateVector<S> v = vacuum(model);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      v = apply_monodromy_right(model, it->row, it->col, it->z, v);
    for (std::size_t r = 0; r < total.size(); ++r) total[r] += coeff * v[r];
  }
  return total;
}

/// Evaluates the sum on <0|, applying letters left to right.
template <class S>
StateVector<S> evaluate_word_left(const ChainModel<S>& model, const WeightedWordSum<S>& sum) {
  check_word_sum(model, sum);
  StateVector<S> total(static_cast<std::size_t>(model.dim()), scalar_traits<S>::zero());
  for (const auto& [coeff, word] : sum.terms) {
    StateVector<S> w = dual_vacuum(model);
    for (const Letter<S>& l : word) w = apply_monodromy_left(model, l.row, l.col, l.z, w);
    for (std::size_t r = 0; r < total.size(); ++r) total[r] += coeff * w[r];
  }
  return total;
}

/// Evaluates the sum as a full operator (dense); intended for desk-scale
/// dimensions only.
template <class S>
Matrix<S> evaluate_word_operator(const ChainModel<S>& model, const WeightedWordSum<S>& sum) {
  check_word_sum(model, sum);
  const long dim = model.dim();
  Matrix<S> total(dim, dim);
  std::map<S, std::vector<Matrix<S>>, ScalarLess<S>> cache;
  for (const auto& [coeff, word] : sum.terms) {
    Matrix<S> acc = Matrix<S>::identity(dim);
    for (const Letter<S>& l : word) acc = acc * detail::monodromy_for_letter(model, cache, l);
    total += acc.scaled(coeff);
  }
  return total;
}

/// True iff the two sums act identically on the given chain.  Canonical-form
/// agreement short-circuits the operator evaluation.
template <class S>
bool sums_equal(const WeightedWordSum<S>& a, const WeightedWordSum<S>& b,
                const ChainModel<S>& model, double tol = 1e-10) {
  if (a.rank != b.rank || !scalar_traits<S>::equal(a.q, b.q, 0.0)) return false;
  if (sums_match(a, b)) return true;
  Matrix<S> diff = evaluate_word_operator(model, a) - evaluate_word_operator(model, b);
  if constexpr (scalar_traits<S>::is_exact)
    return diff.is_zero_matrix();
  else
    return diff.max_abs_approx() <= tol;
}

}  // namespace bethelab

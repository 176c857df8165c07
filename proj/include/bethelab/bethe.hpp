#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "bethelab/chain.hpp"
#include "bethelab/kernel.hpp"
#include "bethelab/partitions.hpp"
#include "bethelab/words.hpp"

namespace bethelab {

/// Typed Bethe parameter lists tbar^1 ... tbar^{N-1}.
template <class S>
struct BetheParams {
  std::vector<std::vector<S>> sets;

  Cardinalities counts() const {
    Cardinalities n;
    n.reserve(sets.size());
    for (const auto& list : sets) n.push_back(static_cast<int>(list.size()));
    return n;
  }

  int total() const {
    int t = 0;
    for (const auto& list : sets) t += static_cast<int>(list.size());
    return t;
  }
};

/// Validating constructor: distinct within each type, no collision between
/// adjacent types (poles of the coupling f), all values nonzero.
template <class S>
BetheParams<S> make_bethe_params(int N, std::vector<std::vector<S>> sets) {
  if (static_cast<int>(sets.size()) != N - 1)
    throw CardinalityMismatch("bethe parameters need N-1 type lists");
  for (const auto& list : sets)
    for (const S& t : list)
      if (is_zero(t)) throw ZeroParameter("bethe parameters must be nonzero");
  for (const auto& list : sets)
    for (std::size_t a = 0; a < list.size(); ++a)
      for (std::size_t b = a + 1; b < list.size(); ++b)
        if (scalar_traits<S>::equal(list[a], list[b], 0.0))
          throw PoleCollision("coinciding bethe parameters within a type");
  for (std::size_t k = 0; k + 1 < sets.size(); ++k)
    for (const S& a : sets[k])
      for (const S& b : sets[k + 1])
        if (scalar_traits<S>::equal(a, b, 0.0))
          throw PoleCollision("coinciding bethe parameters in adjacent types");
  return BetheParams<S>{std::move(sets)};
}

enum class PreBVKind { B, Bhat, C, Chat, OracleB, OracleBhat };

template <class S>
struct PreBV {
  PreBVKind kind;
  WeightedWordSum<S> sum;
};

namespace detail {

template <class S>
S set_f_pairs(const std::vector<S>& xs, const std::vector<S>& ys, const S& q) {
  return set_f(xs, ys, q);
}

/// Coefficient shared by the row-ordered builders (B and C): within-type f
/// factors over strictly ordered label pairs, cross-type f factors and one
/// Izergin block per label alive at both adjacent types.
template <class S, class Order>
S partition_coefficient(const PartitionAssignment<S>& a, int N, const S& q, Order before,
                        IzKind izkind) {
  S coeff = scalar_traits<S>::one();
  for (int k = 1; k <= N - 1; ++k) {
    auto pairs = level_pairs(N, k);
    for (const PairLabel& p : pairs)
      for (const PairLabel& pp : pairs)
        if (before(p, pp)) coeff *= set_f_pairs(a.at(k, pp), a.at(k, p), q);
  }
  for (int k = 2; k <= N - 1; ++k) {
    for (const PairLabel& p : level_pairs(N, k))
      for (const PairLabel& pp : level_pairs(N, k - 1))
        if (before(p, pp)) coeff *= set_f_pairs(a.at(k, p), a.at(k - 1, pp), q);
    for (const PairLabel& p : level_pairs(N, k)) {
      if (p.first > k - 1) continue;  // needs to be alive at type k-1 as well
      coeff *= izergin(a.at(k, p), a.at(k - 1, p), q, izkind);
    }
  }
  return coeff;
}

template <class S>
void append_letters(Word<S>& word, int row, int col, const std::vector<S>& params) {
  for (const S& z : params) word.push_back(Letter<S>{row, col, z});
}

}  // namespace detail

/// Right pre-BV, row-ordered presentation: sum over upper-permissible
/// partitions of f-weights and left Izergin blocks times the word
///   -> over k:  T_{k,N} ... T_{k,k+1}   then the diagonal tail T_{k,k}.
template <class S>
PreBV<S> prebv_B(int N, const BetheParams<S>& t, const S& q) {
  if (N < 2) throw RankMismatch("prebv_B requires N >= 2");
  WeightedWordSum<S> sum;
  sum.rank = N;
  sum.q = q;
  for (const UpperPermissible& m : enumerate_upper(N, t.counts())) {
    auto sizes = subset_cardinalities(m);
    for (const auto& a : enumerate_assignments(t.sets, sizes, N)) {
      S coeff = detail::partition_coefficient(a, N, q, precedes, IzKind::left);
      Word<S> word;
      for (int k = 1; k <= N - 1; ++k)
        for (int j = N; j > k; --j) detail::append_letters(word, k, j, a.at(k, {k, j - 1}));
      for (int k = 2; k <= N - 1; ++k)
        for (const PairLabel& p : level_pairs(N, k))
          if (precedes(p, {k, k})) detail::append_letters(word, k, k, a.at(k, p));
      sum.terms.emplace_back(std::move(coeff), std::move(word));
    }
  }
  return PreBV<S>{PreBVKind::B, canonicalize(std::move(sum))};
}

/// Right pre-BV, column-ordered presentation: lower-permissible partitions,
/// transposed pair order, right Izergin blocks, and the word
///   <- over k:  T_{1,k+1} ... T_{k,k+1}   then the diagonal tail T_{k+1,k+1}.
template <class S>
PreBV<S> prebv_Bhat(int N, const BetheParams<S>& t, const S& q) {
  if (N < 2) throw RankMismatch("prebv_Bhat requires N >= 2");
  WeightedWordSum<S> sum;
  sum.rank = N;
  sum.q = q;
  for (const LowerPermissible& s : enumerate_lower(N, t.counts())) {
    auto sizes = subset_cardinalities(s);
    for (const auto& a : enumerate_assignments(t.sets, sizes, N)) {
      S coeff = detail::partition_coefficient(a, N, q, precedes_t, IzKind::right);
      Word<S> word;
      for (int k = N - 1; k >= 1; --k)
        for (int j = 1; j <= k; ++j) detail::append_letters(word, j, k + 1, a.at(k, {j, k}));
      for (int k = 1; k <= N - 2; ++k)
        for (const PairLabel& p : level_pairs(N, k))
          if (precedes_t({k, k}, p)) detail::append_letters(word, k + 1, k + 1, a.at(k, p));
      sum.terms.emplace_back(std::move(coeff), std::move(word));
    }
  }
  return PreBV<S>{PreBVKind::Bhat, canonicalize(std::move(sum))};
}

/// Left pre-BV companion of prebv_B: same weights with right Izergin blocks,
/// diagonal factors in front, lowering word
///   <- over k:  T_{k+1,k} ... T_{N,k}.
template <class S>
PreBV<S> prebv_C(int N, const BetheParams<S>& t, const S& q) {
  if (N < 2) throw RankMismatch("prebv_C requires N >= 2");
  WeightedWordSum<S> sum;
  sum.rank = N;
  sum.q = q;
  for (const UpperPermissible& m : enumerate_upper(N, t.counts())) {
    auto sizes = subset_cardinalities(m);
    for (const auto& a : enumerate_assignments(t.sets, sizes, N)) {
      S coeff = detail::partition_coefficient(a, N, q, precedes, IzKind::right);
      Word<S> word;
      for (int k = 2; k <= N - 1; ++k)
        for (const PairLabel& p : level_pairs(N, k))
          if (precedes(p, {k, k})) detail::append_letters(word, k, k, a.at(k, p));
      for (int k = N - 1; k >= 1; --k)
        for (int j = k + 1; j <= N; ++j) detail::append_letters(word, j, k, a.at(k, {k, j - 1}));
      sum.terms.emplace_back(std::move(coeff), std::move(word));
    }
  }
  return PreBV<S>{PreBVKind::C, canonicalize(std::move(sum))};
}

/// Left pre-BV companion of prebv_Bhat: left Izergin blocks, diagonal factors
/// in front, lowering word  -> over k:  T_{k+1,k} ... T_{k+1,1}.
template <class S>
PreBV<S> prebv_Chat(int N, const BetheParams<S>& t, const S& q) {
  if (N < 2) throw RankMismatch("prebv_Chat requires N >= 2");
  WeightedWordSum<S> sum;
  sum.rank = N;
  sum.q = q;
  for (const LowerPermissible& s : enumerate_lower(N, t.counts())) {
    auto sizes = subset_cardinalities(s);
    for (const auto& a : enumerate_assignments(t.sets, sizes, N)) {
      S coeff = detail::partition_coefficient(a, N, q, precedes_t, IzKind::left);
      Word<S> word;
      for (int k = 1; k <= N - 2; ++k)
        for (const PairLabel& p : level_pairs(N, k))
          if (precedes_t({k, k}, p)) detail::append_letters(word, k + 1, k + 1, a.at(k, p));
      for (int k = 1; k <= N - 1; ++k)
        for (int j = k; j >= 1; --j) detail::append_letters(word, k + 1, j, a.at(k, {j, k}));
      sum.terms.emplace_back(std::move(coeff), std::move(word));
    }
  }
  return PreBV<S>{PreBVKind::Chat, canonicalize(std::move(sum))};
}

/// Permutation-sum oracles: the raw factorial-cost presentations the closed
/// partition sums were derived from.  Guarded to tiny sizes; the canonical
/// forms must coincide with prebv_B / prebv_Bhat.
template <class S>
PreBV<S> oracle_perm(PreBVKind variant, int N, const BetheParams<S>& t, const S& q) {
  if (variant != PreBVKind::B && variant != PreBVKind::Bhat)
    throw Error("oracle_perm handles the B and Bhat variants");
  if (t.total() > 6) throw SizeGuardExceeded("oracle_perm limited to <= 6 parameters");
  if (N < 2) throw RankMismatch("oracle_perm requires N >= 2");
  const Cardinalities n = t.counts();
  const int types = N - 1;

  WeightedWordSum<S> sum;
  sum.rank = N;
  sum.q = q;

  auto factorial = [](int k) -> long {
    long r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
  };

  // Iterate sigma in S_{n_1} x ... x S_{n_{N-1}}.
  std::vector<std::vector<int>> perm(types);
  for (int k = 0; k < types; ++k) {
    perm[k].resize(n[k]);
    std::iota(perm[k].begin(), perm[k].end(), 0);
  }

  auto visit = [&](auto&& value_at, const auto& matrix_m, const auto& matrix_s, bool upper) {
    // value_at(k, pos): parameter of type k (1-based) at 1-based position pos
    // after the permutation.
    S coeff = scalar_traits<S>::one();
    for (int k = 1; k <= types; ++k)
      for (int l = 1; l <= n[k - 1]; ++l)
        for (int lp = l + 1; lp <= n[k - 1]; ++lp)
          coeff *= eval_f(value_at(k, lp), value_at(k, l), q);

    Word<S> word;
    if (upper) {
      for (int j = 1; j <= types; ++j)
        for (int i = j; i <= types; ++i) {
          int width = matrix_m.m(j, i) - matrix_m.m(j, i + 1);
          coeff /= S(factorial(width));
          int lo = n[j - 1] - matrix_m.m(j, i), hi = n[j - 1] - matrix_m.m(j, i + 1);
          for (int lp = lo + 1; lp <= hi; ++lp)
            for (int l = lp + 1; l <= hi; ++l)
              coeff /= eval_f(value_at(j, l), value_at(j, lp), q);
        }
      auto cum = [&](int j, int i) {  // sum of rows 1..j at column i
        int acc = 0;
        for (int r = 1; r <= j; ++r) acc += matrix_m.m(r, i);
        return acc;
      };
      for (int i = 2; i <= types; ++i)
        for (int j = 1; j <= i - 1; ++j)
          for (int l = 0; l <= matrix_m.m(j, i) - 1; ++l) {
            int apos = cum(j, i) - l, bpos = cum(j, i - 1) - l;
            coeff *= eval_g(value_at(i, apos), value_at(i - 1, bpos), q, GKind::left);
            for (int lp = bpos + 1; lp <= n[i - 2]; ++lp)
              coeff *= eval_f(value_at(i, apos), value_at(i - 1, lp), q);
          }
      for (int j = 1; j <= types; ++j)
        for (int i = types; i >= j; --i)
          for (int l = n[j - 1] - matrix_m.m(j, i) + 1; l <= n[j - 1] - matrix_m.m(j, i + 1); ++l)
            word.push_back(Letter<S>{j, i + 1, value_at(j, l)});
      for (int j = 1; j <= types; ++j)
        for (int l = 1; l <= n[j - 1] - matrix_m.m(j, j); ++l)
          word.push_back(Letter<S>{j, j, value_at(j, l)});
    } else {
      for (int j = 1; j <= types; ++j)
        for (int i = 1; i <= j; ++i) {
          int width = matrix_s.s(j, i) - matrix_s.s(j, i - 1);
          coeff /= S(factorial(width));
          int lo = matrix_s.s(j, i - 1), hi = matrix_s.s(j, i);
          for (int lp = lo + 1; lp <= hi; ++lp)
            for (int l = lp + 1; l <= hi; ++l)
              coeff /= eval_f(value_at(j, l), value_at(j, lp), q);
        }
      auto cum = [&](int j, int i) {  // sum of rows j..N-1 at column i
        int acc = 0;
        for (int r = j; r <= types; ++r) acc += matrix_s.s(r, i);
        return acc;
      };
      for (int j = 2; j <= types; ++j)
        for (int i = 1; i <= j - 1; ++i)
          for (int l = 1; l <= matrix_s.s(j, i); ++l) {
            int apos = n[i] - cum(j, i + 1) + l, bpos = n[i - 1] - cum(j, i) + l;
            coeff *= eval_g(value_at(i + 1, apos), value_at(i, bpos), q, GKind::right);
            for (int lp = 1; lp <= apos - 1; ++lp)
              coeff *= eval_f(value_at(i + 1, lp), value_at(i, bpos), q);
          }
      for (int j = types; j >= 1; --j)
        for (int i = 1; i <= j; ++i)
          for (int l = matrix_s.s(j, i - 1) + 1; l <= matrix_s.s(j, i); ++l)
            word.push_back(Letter<S>{i, j + 1, value_at(j, l)});
      for (int j = 1; j <= types; ++j)
        for (int l = matrix_s.s(j, j) + 1; l <= n[j - 1]; ++l)
          word.push_back(Letter<S>{j + 1, j + 1, value_at(j, l)});
    }
    sum.terms.emplace_back(std::move(coeff), std::move(word));
  };

  auto for_all_sigma = [&](auto&& body) {
    for (int k = 0; k < types; ++k) {
      std::sort(perm[k].begin(), perm[k].end());
    }
    for (;;) {
      body();
      int k = 0;
      while (k < types && !std::next_permutation(perm[k].begin(), perm[k].end())) ++k;
      if (k == types) break;
    }
  };

  auto value_at = [&](int k, int pos) -> const S& { return t.sets[k - 1][perm[k - 1][pos - 1]]; };

  if (variant == PreBVKind::B) {
    for (const UpperPermissible& m : enumerate_upper(N, n)) {
      LowerPermissible dummy(N, {});
      for_all_sigma([&] { visit(value_at, m, dummy, true); });
    }
  } else {
    for (const LowerPermissible& s : enumerate_lower(N, n)) {
      UpperPermissible dummy(N, {});
      for_all_sigma([&] { visit(value_at, dummy, s, false); });
    }
  }
  return PreBV<S>{variant == PreBVKind::B ? PreBVKind::OracleB : PreBVKind::OracleBhat,
                  canonicalize(std::move(sum))};
}

/// Off-shell Bethe vector: the pre-BV applied to |0>.
template <class S>
StateVector<S> bv_right(const ChainModel<S>& model, PreBVKind variant, const BetheParams<S>& t) {
  if (variant != PreBVKind::B && variant != PreBVKind::Bhat)
    throw Error("bv_right takes the B or Bhat variant");
  PreBV<S> pre = (variant == PreBVKind::B) ? prebv_B(model.N, t, model.q)
                                           : prebv_Bhat(model.N, t, model.q);
  return evaluate_word_right(model, pre.sum);
}

/// Dual off-shell Bethe vector: <0| times the lowering pre-BV.
template <class S>
StateVector<S> bv_left(const ChainModel<S>& model, PreBVKind variant, const BetheParams<S>& t) {
  if (variant != PreBVKind::C && variant != PreBVKind::Chat)
    throw Error("bv_left takes the C or Chat variant");
  PreBV<S> pre = (variant == PreBVKind::C) ? prebv_C(model.N, t, model.q)
                                           : prebv_Chat(model.N, t, model.q);
  return evaluate_word_left(model, pre.sum);
}

enum class Gl3Side { right1, right2, left1, left2 };

/// The rank-3 two-set specialization, written directly as the printed two-fold
/// partition sums over ubar = ubar_I u ubar_II, vbar = vbar_I u vbar_II with
/// vacuum eigenvalues substituted via lambda_fn.
template <class S>
StateVector<S> gl3_explicit(const ChainModel<S>& model, const std::vector<S>& us,
                            const std::vector<S>& vs, Gl3Side side) {
  if (model.N != 3) throw RankMismatch("gl3_explicit requires N = 3");
  const S& q = model.q;
  const int nu = static_cast<int>(us.size()), nv = static_cast<int>(vs.size());
  StateVector<S> total(static_cast<std::size_t>(model.dim()), scalar_traits<S>::zero());
  for (int r = 0; r <= std::min(nu, nv); ++r) {
    // all r-subsets of us and vs, order preserved
    std::vector<int> usel(r), vsel(r);
    std::iota(usel.begin(), usel.end(), 0);
    for (;;) {
      std::iota(vsel.begin(), vsel.end(), 0);
      for (;;) {
        std::vector<S> uI, uII, vI, vII;
        for (int i = 0, s = 0; i < nu; ++i) {
          if (s < r && usel[s] == i) {
            uI.push_back(us[i]);
            ++s;
          } else {
            uII.push_back(us[i]);
          }
        }
        for (int i = 0, s = 0; i < nv; ++i) {
          if (s < r && vsel[s] == i) {
            vI.push_back(vs[i]);
            ++s;
          } else {
            vII.push_back(vs[i]);
          }
        }

        S weight = set_f(uI, uII, q) * set_f(vII, vI, q);
        auto lambda2 = [&](const std::vector<S>& xs) -> S {
          S acc = scalar_traits<S>::one();
          for (const S& x : xs) acc *= lambda_fn(model, 2, x);
          return acc;
        };
        StateVector<S> vec;
        switch (side) {
          case Gl3Side::right1: {
            weight *= izergin(vI, uI, q, IzKind::left) * lambda2(vI);
            StateVector<S> v = vacuum(model);
            for (auto it = vII.rbegin(); it != vII.rend(); ++it)
              v = apply_monodromy_right(model, 2, 3, *it, v);
            for (auto it = uII.rbegin(); it != uII.rend(); ++it)
              v = apply_monodromy_right(model, 1, 2, *it, v);
            for (auto it = uI.rbegin(); it != uI.rend(); ++it)
              v = apply_monodromy_right(model, 1, 3, *it, v);
            vec = std::move(v);
            break;
          }
          case Gl3Side::right2: {
            weight *= izergin(vI, uI, q, IzKind::right) * lambda2(uI);
            StateVector<S> v = vacuum(model);
            for (auto it = uII.rbegin(); it != uII.rend(); ++it)
              v = apply_monodromy_right(model, 1, 2, *it, v);
            for (auto it = vII.rbegin(); it != vII.rend(); ++it)
              v = apply_monodromy_right(model, 2, 3, *it, v);
            for (auto it = vI.rbegin(); it != vI.rend(); ++it)
              v = apply_monodromy_right(model, 1, 3, *it, v);
            vec = std::move(v);
            break;
          }
          case Gl3Side::left1: {
            weight *= izergin(vI, uI, q, IzKind::right) * lambda2(vI);
            StateVector<S> w = dual_vacuum(model);
            for (const S& z : vII) w = apply_monodromy_left(model, 3, 2, z, w);
            for (const S& z : uII) w = apply_monodromy_left(model, 2, 1, z, w);
            for (const S& z : uI) w = apply_monodromy_left(model, 3, 1, z, w);
            vec = std::move(w);
            break;
          }
          case Gl3Side::left2: {
            weight *= izergin(vI, uI, q, IzKind::left) * lambda2(uI);
            StateVector<S> w = dual_vacuum(model);
            for (const S& z : uII) w = apply_monodromy_left(model, 2, 1, z, w);
            for (const S& z : vII) w = apply_monodromy_left(model, 3, 2, z, w);
            for (const S& z : vI) w = apply_monodromy_left(model, 3, 1, z, w);
            vec = std::move(w);
            break;
          }
        }
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += weight * vec[i];

        if (r == 0) break;
        int pos = r - 1;
        while (pos >= 0 && vsel[pos] == nv - r + pos) --pos;
        if (pos < 0) break;
        ++vsel[pos];
        for (int z = pos + 1; z < r; ++z) vsel[z] = vsel[z - 1] + 1;
      }
      if (r == 0) break;
      int pos = r - 1;
      while (pos >= 0 && usel[pos] == nu - r + pos) --pos;
      if (pos < 0) break;
      ++usel[pos];
      for (int z = pos + 1; z < r; ++z) usel[z] = usel[z - 1] + 1;
    }
  }
  return total;
}

/// Pole-free normalization of the rank-3 vector: divide by
/// f(vbar, ubar) lambda_2(ubar) lambda_2(vbar).
template <class S>
StateVector<S> normalized_bv_gl3(const ChainModel<S>& model, const std::vector<S>& us,
                                 const std::vector<S>& vs) {
  if (model.N != 3) throw RankMismatch("normalized_bv_gl3 requires N = 3");
  S norm = set_f(vs, us, model.q);
  for (const S& u : us) norm *= lambda_fn(model, 2, u);
  for (const S& v : vs) norm *= lambda_fn(model, 2, v);
  if (is_zero(norm)) throw DivisionByZero("vanishing normalization factor");
  StateVector<S> vec = gl3_explicit(model, us, vs, Gl3Side::right2);
  for (S& x : vec) x = x / norm;
  return vec;
}

/// Type reversal: tbar'^k = tbar^{N-k}, cardinalities reversed accordingly.
template <class S>
BetheParams<S> omega_reverse(const BetheParams<S>& t) {
  BetheParams<S> out = t;
  std::reverse(out.sets.begin(), out.sets.end());
  return out;
}

/// Elementwise inverse of every parameter, type order kept.
template <class S>
BetheParams<S> invert_params(const BetheParams<S>& t) {
  BetheParams<S> out = t;
  for (auto& list : out.sets)
    for (S& x : list) x = inverse(x);
  return out;
}

}  // namespace bethelab

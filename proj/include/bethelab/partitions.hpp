#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "bethelab/errors.hpp"

namespace bethelab {

/// Per-type parameter counts (n_1, ..., n_{N-1}).
using Cardinalities = std::vector<int>;

/// Subset label: the pair (i, j) with 1 <= i <= j <= N-1.  A parameter of
/// type k may carry label (i, j) exactly when i <= k <= j.
using PairLabel = std::pair<int, int>;

/// Row-major order on labels: (i,j) before (i',j') when i < i', ties by j.
inline bool precedes(const PairLabel& a, const PairLabel& b) {
  if (a.first != b.first) return a.first < b.first;
  return a.second < b.second;
}

/// Column-major order: (i,j) before (i',j') when j < j', ties by i.
inline bool precedes_t(const PairLabel& a, const PairLabel& b) {
  if (a.second != b.second) return a.second < b.second;
  return a.first < b.first;
}

/// All labels valid for some type, ordered lexicographically.
inline std::vector<PairLabel> valid_pairs(int N) {
  std::vector<PairLabel> out;
  for (int i = 1; i <= N - 1; ++i)
    for (int j = i; j <= N - 1; ++j) out.emplace_back(i, j);
  return out;
}

/// Labels valid at type k: i <= k <= j.
inline std::vector<PairLabel> level_pairs(int N, int k) {
  std::vector<PairLabel> out;
  for (int i = 1; i <= k; ++i)
    for (int j = k; j <= N - 1; ++j) out.emplace_back(i, j);
  return out;
}

/// Upper-triangular permissible matrix: entries m^i_j for 1 <= i <= j <= N-1
/// with nonincreasing rows and column sums equal to the cardinalities.
/// m^i_N = 0 implicitly.
class UpperPermissible {
 public:
  UpperPermissible(int N, std::vector<std::vector<int>> rows)
      : N_(N), rows_(std::move(rows)) {}

  int rank() const { return N_; }

  /// m^i_j; zero outside the triangle (in particular j = N).
  int m(int i, int j) const {
    if (j >= N_ || j < i) return 0;
    return rows_[i - 1][j - i];
  }

  /// Subset cardinality for label (i,j): m^i_j - m^i_{j+1}.
  int subset_size(int i, int j) const { return m(i, j) - m(i, j + 1); }

 private:
  int N_;
  std::vector<std::vector<int>> rows_;  // rows_[i-1][j-i] = m^i_j
};

/// Lower-triangular permissible matrix: entries s^j_i for 1 <= i <= j <= N-1
/// with nondecreasing rows and column tail-sums equal to the cardinalities.
/// s^j_0 = 0 implicitly.
class LowerPermissible {
 public:
  LowerPermissible(int N, std::vector<std::vector<int>> rows)
      : N_(N), rows_(std::move(rows)) {}

  int rank() const { return N_; }

  /// s^j_i; zero for i = 0.
  int s(int j, int i) const {
    if (i <= 0 || i > j) return 0;
    return rows_[j - 1][i - 1];
  }

  /// Subset cardinality for label (i,j): s^j_i - s^j_{i-1}.
  int subset_size(int i, int j) const { return s(j, i) - s(j, i - 1); }

 private:
  int N_;
  std::vector<std::vector<int>> rows_;  // rows_[j-1][i-1] = s^j_i
};

namespace detail {

inline void enumerate_upper_columns(int N, const Cardinalities& n, int col,
                                    std::vector<std::vector<int>>& rows,
                                    std::vector<UpperPermissible>& out) {
  if (col == N) {
    out.emplace_back(N, rows);
    return;
  }
  // Column `col` holds m^i_col for i = 1..col; sum must be n_col and each
  // entry is bounded by its left neighbour in the same row.
  std::vector<int> entry(col, 0);
  auto rec = [&](auto&& self, int i, int remaining) -> void {
    if (i == col) {
      if (remaining != 0) return;
      for (int r = 1; r <= col; ++r) rows[r - 1].push_back(entry[r - 1]);
      enumerate_upper_columns(N, n, col + 1, rows, out);
      for (int r = 1; r <= col; ++r) rows[r - 1].pop_back();
      return;
    }
    int cap = (i + 1 < col) ? rows[i].back() : remaining;  // row i+1 starts at col
    cap = std::min(cap, remaining);
    for (int v = 0; v <= cap; ++v) {
      entry[i] = v;
      self(self, i + 1, remaining - v);
    }
  };
  rec(rec, 0, n[col - 1]);
}

inline void enumerate_lower_rows(int N, const Cardinalities& n, int row,
                                 std::vector<int> colsum,
                                 std::vector<std::vector<int>>& rows,
                                 std::vector<LowerPermissible>& out) {
  if (row == N) {
    for (int i = 1; i <= N - 1; ++i)
      if (colsum[i - 1] != n[i - 1]) return;
    out.emplace_back(N, rows);
    return;
  }
  // Row `row` holds s^row_i for i = 1..row, nondecreasing, with each column
  // sum capped by its target cardinality.
  std::vector<int> entry(row, 0);
  auto rec = [&](auto&& self, int i, int prev) -> void {
    if (i == row) {
      rows.push_back(entry);
      for (int c = 1; c <= row; ++c) colsum[c - 1] += entry[c - 1];
      enumerate_lower_rows(N, n, row + 1, colsum, rows, out);
      for (int c = 1; c <= row; ++c) colsum[c - 1] -= entry[c - 1];
      rows.pop_back();
      return;
    }
    int cap = n[i] - colsum[i];  // column i+1 budget
    for (int v = prev; v <= cap; ++v) {
      entry[i] = v;
      self(self, i + 1, v);
    }
  };
  rec(rec, 0, 0);
}

}  // namespace detail

/// Every upper permissible matrix for the given cardinalities, exactly once,
/// in lexicographic column order.
inline std::vector<UpperPermissible> enumerate_upper(int N, const Cardinalities& n) {
  if (static_cast<int>(n.size()) != N - 1) throw CardinalityMismatch("cardinalities must have N-1 entries");
  for (int v : n)
    if (v < 0) throw CardinalityMismatch("negative cardinality");
  std::vector<std::vector<int>> rows(N - 1);
  std::vector<UpperPermissible> out;
  detail::enumerate_upper_columns(N, n, 1, rows, out);
  return out;
}

inline std::vector<LowerPermissible> enumerate_lower(int N, const Cardinalities& n) {
  if (static_cast<int>(n.size()) != N - 1) throw CardinalityMismatch("cardinalities must have N-1 entries");
  for (int v : n)
    if (v < 0) throw CardinalityMismatch("negative cardinality");
  std::vector<std::vector<int>> rows;
  std::vector<LowerPermissible> out;
  detail::enumerate_lower_rows(N, n, 1, std::vector<int>(N - 1, 0), rows, out);
  return out;
}

/// Partial row sums mbar^j = row_1 + ... + row_j, entries padded with zeros
/// outside the triangle.  mbar^{N-1} recovers the cardinalities.
inline std::vector<std::vector<int>> cumulative_vectors(const UpperPermissible& m) {
  int N = m.rank();
  std::vector<std::vector<int>> out;
  std::vector<int> acc(N - 1, 0);
  for (int i = 1; i <= N - 1; ++i) {
    for (int j = 1; j <= N - 1; ++j) acc[j - 1] += m.m(i, j);
    out.push_back(acc);
  }
  return out;
}

/// Tail row sums sbar^j = row_j + ... + row_{N-1}; sbar^1 recovers the
/// cardinalities.
inline std::vector<std::vector<int>> cumulative_vectors(const LowerPermissible& s) {
  int N = s.rank();
  std::vector<std::vector<int>> out(N - 1);
  std::vector<int> acc(N - 1, 0);
  for (int j = N - 1; j >= 1; --j) {
    for (int i = 1; i <= N - 1; ++i) acc[i - 1] += s.s(j, i);
    out[j - 1] = acc;
  }
  return out;
}

template <class M>
std::map<PairLabel, int> subset_cardinalities(const M& matrix) {
  std::map<PairLabel, int> out;
  for (const PairLabel& p : valid_pairs(matrix.rank()))
    out[p] = matrix.subset_size(p.first, p.second);
  return out;
}

/// One way of splitting the typed parameter lists into labelled subsets.
/// subsets(k, pair) lists the values of type k assigned to that pair, in the
/// original input order.
template <class S>
struct PartitionAssignment {
  // by_type[k-1] maps labels valid at type k to the assigned sublists.
  std::vector<std::map<PairLabel, std::vector<S>>> by_type;

  const std::vector<S>& at(int k, const PairLabel& p) const {
    static const std::vector<S> empty;
    auto it = by_type[k - 1].find(p);
    return it == by_type[k - 1].end() ? empty : it->second;
  }
};

/// All ways of splitting each type-k list into labelled subsets of the sizes
/// prescribed by a permissible matrix.  Lexicographic and deterministic.
template <class S>
std::vector<PartitionAssignment<S>> enumerate_assignments(
    const std::vector<std::vector<S>>& sets, const std::map<PairLabel, int>& sizes, int N) {
  const int types = N - 1;
  if (static_cast<int>(sets.size()) != types)
    throw CardinalityMismatch("parameter lists must have N-1 types");

  // Per type: the label of every element position, as a sorted multiset.
  std::vector<std::vector<PairLabel>> base_labels(types);
  for (int k = 1; k <= types; ++k) {
    int total = 0;
    for (const PairLabel& p : level_pairs(N, k)) {
      int size = sizes.count(p) ? sizes.at(p) : 0;
      for (int c = 0; c < size; ++c) base_labels[k - 1].push_back(p);
      total += size;
    }
    if (total != static_cast<int>(sets[k - 1].size()))
      throw CardinalityMismatch("subset sizes do not match type cardinality");
    std::sort(base_labels[k - 1].begin(), base_labels[k - 1].end());
  }

  // Distinct label sequences per type, in lexicographic order.
  std::vector<std::vector<std::vector<PairLabel>>> choices(types);
  for (int k = 0; k < types; ++k) {
    std::vector<PairLabel> labels = base_labels[k];
    do {
      choices[k].push_back(labels);
    } while (std::next_permutation(labels.begin(), labels.end()));
  }

  std::vector<PartitionAssignment<S>> out;
  std::vector<std::size_t> pick(types, 0);
  for (;;) {
    PartitionAssignment<S> a;
    a.by_type.resize(types);
    for (int k = 0; k < types; ++k) {
      const auto& labels = choices[k][pick[k]];
      for (std::size_t pos = 0; pos < labels.size(); ++pos)
        a.by_type[k][labels[pos]].push_back(sets[k][pos]);
    }
    out.push_back(std::move(a));
    int k = types - 1;
    while (k >= 0 && ++pick[k] == choices[k].size()) pick[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

/// Number of assignments a matrix induces: the product over types of the
/// multinomial coefficients n_k! / prod sizes!.
inline unsigned long long count_assignments(int N, const Cardinalities& n,
                                            const std::map<PairLabel, int>& sizes) {
  auto binomial = [](int a, int b) -> unsigned long long {
    unsigned long long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  unsigned long long total = 1;
  for (int k = 1; k <= N - 1; ++k) {
    int remaining = n[k - 1];
    for (const PairLabel& p : level_pairs(N, k)) {
      int size = sizes.count(p) ? sizes.at(p) : 0;
      total *= binomial(remaining, size);
      remaining -= size;
    }
  }
  return total;
}

}  // namespace bethelab

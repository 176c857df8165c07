#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "bethelab/errors.hpp"
#include "bethelab/scalar.hpp"

namespace bethelab {

/// One monodromy-entry symbol T_{row,col}(z).
template <class S>
struct Letter {
  int row = 0;
  int col = 0;
  S z{};
};

template <class S>
bool letter_equal(const Letter<S>& a, const Letter<S>& b) {
  return a.row == b.row && a.col == b.col && scalar_traits<S>::equal(a.z, b.z, 0.0);
}

template <class S>
bool letter_less(const Letter<S>& a, const Letter<S>& b) {
  if (a.row != b.row) return a.row < b.row;
  if (a.col != b.col) return a.col < b.col;
  return scalar_traits<S>::less(a.z, b.z);
}

/// Ordered product of letters.  Letters with distinct matrix indices do not
/// commute; letters with equal indices do.
template <class S>
using Word = std::vector<Letter<S>>;

template <class S>
bool word_equal(const Word<S>& a, const Word<S>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!letter_equal(a[i], b[i])) return false;
  return true;
}

template <class S>
bool word_less(const Word<S>& a, const Word<S>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (letter_less(a[i], b[i])) return true;
    if (letter_less(b[i], a[i])) return false;
  }
  return false;
}

/// Formal sum of scalar-weighted words.  The rank tag records N, the q tag
/// records which deformation the symbols T_{ij} belong to.
template <class S>
struct WeightedWordSum {
  int rank = 0;
  S q{};
  std::vector<std::pair<S, Word<S>>> terms;
};

/// Canonical form: within each word, every maximal run of letters sharing
/// (row, col) is sorted by parameter; equal words are merged by adding
/// coefficients; zero terms are dropped; terms are sorted.
template <class S>
WeightedWordSum<S> canonicalize(WeightedWordSum<S> sum) {
  for (auto& [coeff, word] : sum.terms) {
    std::size_t i = 0;
    while (i < word.size()) {
      std::size_t j = i + 1;
      while (j < word.size() && word[j].row == word[i].row && word[j].col == word[i].col) ++j;
      std::sort(word.begin() + i, word.begin() + j,
                [](const Letter<S>& a, const Letter<S>& b) {
                  return scalar_traits<S>::less(a.z, b.z);
                });
      i = j;
    }
  }
  std::sort(sum.terms.begin(), sum.terms.end(),
            [](const auto& a, const auto& b) { return word_less(a.second, b.second); });
  std::vector<std::pair<S, Word<S>>> merged;
  for (auto& term : sum.terms) {
    if (!merged.empty() && word_equal(merged.back().second, term.second))
      merged.back().first += term.first;
    else
      merged.push_back(std::move(term));
  }
  std::erase_if(merged, [](const auto& t) { return is_zero(t.first); });
  sum.terms = std::move(merged);
  return sum;
}

/// Image under the isomorphism into the inverse-deformation algebra:
/// T_{ij}(z) -> T~_{N+1-j, N+1-i}(z), word order kept.  Scalar coefficients
/// are untouched; the q tag flips.
template <class S>
WeightedWordSum<S> apply_phi(const WeightedWordSum<S>& sum) {
  WeightedWordSum<S> out;
  out.rank = sum.rank;
  out.q = inverse(sum.q);
  out.terms.reserve(sum.terms.size());
  const int N = sum.rank;
  for (const auto& [coeff, word] : sum.terms) {
    Word<S> mapped;
    mapped.reserve(word.size());
    for (const Letter<S>& l : word)
      mapped.push_back(Letter<S>{N + 1 - l.col, N + 1 - l.row, l.z});
    out.terms.emplace_back(coeff, std::move(mapped));
  }
  return canonicalize(std::move(out));
}

/// Image under the anti-isomorphism: T_{ij}(z) -> T~_{ji}(z^{-1}) with every
/// word reversed.  Scalar coefficients pass through; the q tag flips.
template <class S>
WeightedWordSum<S> apply_psi(const WeightedWordSum<S>& sum) {
  WeightedWordSum<S> out;
  out.rank = sum.rank;
  out.q = inverse(sum.q);
  out.terms.reserve(sum.terms.size());
  for (const auto& [coeff, word] : sum.terms) {
    Word<S> mapped;
    mapped.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      if (is_zero(it->z)) throw ZeroParameter("psi needs nonzero letter parameters");
      mapped.push_back(Letter<S>{it->col, it->row, inverse(it->z)});
    }
    out.terms.emplace_back(coeff, std::move(mapped));
  }
  return canonicalize(std::move(out));
}

template <class S>
WeightedWordSum<S> sum_add(const WeightedWordSum<S>& a, const WeightedWordSum<S>& b) {
  if (a.rank != b.rank) throw RankMismatch("sum_add: rank tags differ");
  WeightedWordSum<S> out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return canonicalize(std::move(out));
}

template <class S>
WeightedWordSum<S> sum_scale(const S& c, const WeightedWordSum<S>& a) {
  WeightedWordSum<S> out = a;
  for (auto& [coeff, word] : out.terms) coeff = c * coeff;
  return canonicalize(std::move(out));
}

/// Concatenation product: all pairwise word concatenations with coefficient
/// products.
template <class S>
WeightedWordSum<S> sum_product(const WeightedWordSum<S>& a, const WeightedWordSum<S>& b) {
  if (a.rank != b.rank) throw RankMismatch("sum_product: rank tags differ");
  WeightedWordSum<S> out;
  out.rank = a.rank;
  out.q = a.q;
  for (const auto& [ca, wa] : a.terms)
    for (const auto& [cb, wb] : b.terms) {
      Word<S> w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.terms.emplace_back(ca * cb, std::move(w));
    }
  return canonicalize(std::move(out));
}

/// Syntactic equality of canonical forms, coefficientwise.
template <class S>
bool sums_match(const WeightedWordSum<S>& a, const WeightedWordSum<S>& b,
                double tol = scalar_traits<S>::is_exact ? 0.0 : 1e-12) {
  if (a.rank != b.rank) return false;
  WeightedWordSum<S> ca = canonicalize(a), cb = canonicalize(b);
  if (ca.terms.size() != cb.terms.size()) return false;
  for (std::size_t i = 0; i < ca.terms.size(); ++i) {
    if (!word_equal(ca.terms[i].second, cb.terms[i].second)) return false;
    if (!scalar_traits<S>::equal(ca.terms[i].first, cb.terms[i].first, tol)) return false;
  }
  return true;
}

}  // namespace bethelab

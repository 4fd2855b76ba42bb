#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "tropical/core.hpp"

// Tropical determinants, singularity, signs and linear forms.
namespace tropical {

inline constexpr std::size_t kDefaultSignCap = 8;

class TropicalMatrix {
 public:
  TropicalMatrix() = default;
  TropicalMatrix(std::size_t rows, std::size_t cols, ExtendedRational fill = ExtendedRational(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
  }
  TropicalMatrix(std::initializer_list<std::initializer_list<ExtendedRational>> rows) {
    std::vector<std::vector<ExtendedRational>> r;
    for (const auto& row : rows) r.emplace_back(row);
    *this = from_rows(r);
  }

  static TropicalMatrix from_rows(const std::vector<std::vector<ExtendedRational>>& rows) {
    if (rows.empty() || rows.front().empty()) throw DimensionError("matrix dimensions must be positive");
    TropicalMatrix m(rows.size(), rows.front().size());
    for (Index i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DimensionError("ragged matrix rows");
      for (Index j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  // Points of a configuration as rows.
  static TropicalMatrix from_points(std::span<const TropicalPoint> points) {
    if (points.empty()) throw DimensionError("matrix dimensions must be positive");
    TropicalMatrix m(points.size(), points.front().dim());
    for (Index i = 0; i < points.size(); ++i) {
      if (points[i].dim() != m.cols_) throw DimensionError("points of different dimension");
      for (Index j = 0; j < m.cols_; ++j) m(i, j) = points[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  ExtendedRational& operator()(Index i, Index j) { return data_[i * cols_ + j]; }
  const ExtendedRational& operator()(Index i, Index j) const { return data_[i * cols_ + j]; }

  TropicalMatrix columns(std::span<const Index> cols) const {
    TropicalMatrix m(rows_, cols.size());
    for (Index i = 0; i < rows_; ++i)
      for (Index j = 0; j < cols.size(); ++j) m(i, j) = (*this)(i, cols[j]);
    return m;
  }

  friend bool operator==(const TropicalMatrix&, const TropicalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ExtendedRational> data_;
};

struct TropicalDetResult {
  ExtendedRational value;
  // realizer[i] = sigma(i); absent when value is infinite.
  std::optional<std::vector<Index>> realizer;
  // Absent when value is infinite (singularity undefined).
  std::optional<bool> regular;
};

namespace detail {

struct Assignment {
  ExtendedRational value = ExtendedRational::infinity();
  std::optional<std::vector<Index>> realizer;
};

// Min-cost perfect matching with row/column potentials (Hungarian method),
// O(d^3) exact operations. Infinite entries are absent edges.
inline Assignment solve_assignment(const TropicalMatrix& m) {
  if (!m.is_square()) throw DimensionError("assignment problem needs a square matrix");
  const std::size_t n = m.rows();
  std::vector<Rational> u(n + 1, Rational(0)), v(n + 1, Rational(0));
  std::vector<Index> match(n + 1, 0), way(n + 1, 0);  // match[col] = row, 1-based, 0 = free
  for (Index row = 1; row <= n; ++row) {
    match[0] = row;
    Index j0 = 0;
    std::vector<ExtendedRational> minv(n + 1, ExtendedRational::infinity());
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const Index i0 = match[j0];
      ExtendedRational delta = ExtendedRational::infinity();
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const auto& c = m(i0 - 1, j - 1);
        if (c.is_finite()) {
          ExtendedRational cur(Rational(c.value() - u[i0] - v[j]));
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (delta.is_infinite()) return {};
      const Rational& dv = delta.value();
      for (Index j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += dv;
          v[j] -= dv;
        } else if (minv[j].is_finite()) {
          minv[j] = ExtendedRational(Rational(minv[j].value() - dv));
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const Index j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<Index> sigma(n);
  Rational total = 0;
  for (Index j = 1; j <= n; ++j) {
    sigma[match[j] - 1] = j - 1;
    total += m(match[j] - 1, j - 1).value();
  }
  return {ExtendedRational(total), std::move(sigma)};
}

inline bool singular_given(const TropicalMatrix& m, const Assignment& a) {
  const auto& sigma = *a.realizer;
  for (Index i = 0; i < m.rows(); ++i) {
    TropicalMatrix mi = m;
    mi(i, sigma[i]) = mi(i, sigma[i]) + ExtendedRational(1);
    if (solve_assignment(mi).value == a.value) return true;
  }
  return false;
}

inline int permutation_parity(std::span<const Index> p) {
  std::size_t inversions = 0;
  for (Index i = 0; i < p.size(); ++i)
    for (Index j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace detail

// Minimum over permutations of the diagonal sums. regular is decided with d
// further assignment problems, each with one realizer entry raised by 1.
inline TropicalDetResult trop_det(const TropicalMatrix& m) {
  auto a = detail::solve_assignment(m);
  TropicalDetResult r{a.value, a.realizer, std::nullopt};
  if (a.realizer) r.regular = !detail::singular_given(m, a);
  return r;
}

inline bool is_singular(const TropicalMatrix& m) {
  const auto a = detail::solve_assignment(m);
  if (!a.realizer) throw PreconditionError("singularity is undefined for infinite tropical determinant");
  return detail::singular_given(m, a);
}

// +1 / -1 if all realizers are even / odd, 0 if both parities occur.
// Enumerates all d! permutations.
inline int trop_sign(const TropicalMatrix& m, std::size_t cap = kDefaultSignCap) {
  if (!m.is_square()) throw DimensionError("tropical sign needs a square matrix");
  if (m.rows() > cap) throw PreconditionError("tropical sign: dimension exceeds the configured cap");
  std::vector<Index> p(m.rows());
  std::iota(p.begin(), p.end(), 0);
  ExtendedRational best = ExtendedRational::infinity();
  bool even = false, odd = false;
  do {
    ExtendedRational s(0);
    for (Index i = 0; i < p.size(); ++i) s = s + m(i, p[i]);
    if (s.is_infinite()) continue;
    const bool is_even = detail::permutation_parity(p) > 0;
    if (s < best) {
      best = s;
      even = is_even;
      odd = !is_even;
    } else if (s == best) {
      (is_even ? even : odd) = true;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  if (best.is_infinite()) throw PreconditionError("tropical sign is undefined for infinite determinant");
  if (even && odd) return 0;
  return even ? 1 : -1;
}

struct LinearFormValue {
  ExtendedRational value;
  bool vanishes = false;  // minimum attained at least twice
};

inline LinearFormValue eval_linear_form(std::span<const ExtendedRational> a, const TropicalPoint& x) {
  if (a.size() != x.dim()) throw DimensionError("linear form and point differ in dimension");
  ExtendedRational best = ExtendedRational::infinity();
  std::size_t count = 0;
  for (Index k = 0; k < a.size(); ++k) {
    const ExtendedRational term = a[k] + ExtendedRational(x[k]);
    if (term.is_infinite()) continue;
    if (term < best) {
      best = term;
      count = 1;
    } else if (term == best) {
      ++count;
    }
  }
  if (best.is_infinite()) throw PreconditionError("linear form has only infinite terms");
  return {best, count >= 2};
}

// x -> tsgn(x, v_2, ..., v_d)
inline int tau(const TropicalPoint& x, std::span<const TropicalPoint> fixed, std::size_t cap = kDefaultSignCap) {
  if (fixed.size() + 1 != x.dim()) throw DimensionError("tau needs d-1 fixed points in dimension d");
  std::vector<TropicalPoint> rows{x};
  rows.insert(rows.end(), fixed.begin(), fixed.end());
  return trop_sign(TropicalMatrix::from_points(rows), cap);
}

class TropicalHyperplane {
 public:
  explicit TropicalHyperplane(std::vector<ExtendedRational> coefficients) : a_(std::move(coefficients)) {
    if (std::count_if(a_.begin(), a_.end(), [](const auto& c) { return c.is_finite(); }) < 2)
      throw PreconditionError("tropical hyperplane needs two finite coefficients");
  }

  // Hyperplane with the given apex, i.e. coefficients -apex.
  static TropicalHyperplane with_apex(const TropicalPoint& apex) {
    std::vector<ExtendedRational> a;
    for (const auto& c : apex) a.emplace_back(Rational(-c));
    return TropicalHyperplane(std::move(a));
  }

  std::span<const ExtendedRational> coefficients() const noexcept { return a_; }

  ExtendedTropicalPoint apex() const {
    std::vector<ExtendedRational> out;
    for (const auto& c : a_) out.push_back(c.is_finite() ? ExtendedRational(Rational(-c.value())) : c);
    return ExtendedTropicalPoint(std::move(out));
  }

  bool contains(const TropicalPoint& x) const { return eval_linear_form(a_, x).vanishes; }

 private:
  std::vector<ExtendedRational> a_;
};

}  // namespace tropical

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tropical/errors.hpp"
#include "tropical/rational.hpp"

// Min-plus scalars, points of the tropical torus and point configurations.
namespace tropical {

using Index = std::size_t;
// Zero-based index sets; printing converts to one-based.
using IndexSet = std::set<Index>;

inline ExtendedRational trop_add(const ExtendedRational& a, const ExtendedRational& b) {
  return std::min(a, b);
}

inline ExtendedRational trop_mul(const ExtendedRational& a, const ExtendedRational& b) { return a + b; }

class TropicalPoint;
TropicalPoint normalize(const TropicalPoint& x);

// A point of R^d modulo the all-ones direction. Coordinates are kept as
// given; comparison and hashing use the canonical representative.
class TropicalPoint {
 public:
  TropicalPoint() = default;
  explicit TropicalPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  TropicalPoint(std::initializer_list<Rational> coords) : coords_(coords) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  const Rational& operator[](Index k) const { return coords_[k]; }
  std::span<const Rational> coords() const noexcept { return coords_; }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  // Componentwise sum, i.e. tropical multiplication by a vector.
  TropicalPoint operator+(const TropicalPoint& other) const {
    require_same_dim(other);
    std::vector<Rational> out(dim());
    for (Index k = 0; k < dim(); ++k) out[k] = coords_[k] + other.coords_[k];
    return TropicalPoint(std::move(out));
  }

  TropicalPoint operator-(const TropicalPoint& other) const {
    require_same_dim(other);
    std::vector<Rational> out(dim());
    for (Index k = 0; k < dim(); ++k) out[k] = coords_[k] - other.coords_[k];
    return TropicalPoint(std::move(out));
  }

  // Tropical scalar multiplication: add t to every coordinate.
  TropicalPoint shifted(const Rational& t) const {
    std::vector<Rational> out(coords_);
    for (auto& c : out) c += t;
    return TropicalPoint(std::move(out));
  }

  friend bool operator==(const TropicalPoint& a, const TropicalPoint& b) {
    if (a.dim() != b.dim()) return false;
    return normalize(a).coords_ == normalize(b).coords_;
  }

  friend std::strong_ordering operator<=>(const TropicalPoint& a, const TropicalPoint& b) {
    if (a.dim() != b.dim()) return a.dim() <=> b.dim();
    const TropicalPoint na = normalize(a), nb = normalize(b);
    for (Index k = 0; k < a.dim(); ++k) {
      const auto c = compare(na.coords_[k], nb.coords_[k]);
      if (c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    std::string s = "(";
    for (Index k = 0; k < dim(); ++k) {
      if (k) s += ",";
      s += coords_[k].get_str();
    }
    return s + ")";
  }

 private:
  void require_same_dim(const TropicalPoint& other) const {
    if (other.dim() != dim()) throw DimensionError("tropical points of different dimension");
  }

  std::vector<Rational> coords_;
};

// x - min(x) * 1: nonnegative with at least one zero.
inline TropicalPoint normalize(const TropicalPoint& x) {
  if (x.dim() == 0) return x;
  const Rational m = *std::min_element(x.begin(), x.end(), [](const Rational& a, const Rational& b) {
    return cmp(a, b) < 0;
  });
  return x.shifted(-m);
}

// (x2 - x1, ..., xd - x1)
inline std::vector<Rational> affine_chart(const TropicalPoint& x) {
  std::vector<Rational> out;
  out.reserve(x.dim() ? x.dim() - 1 : 0);
  for (Index k = 1; k < x.dim(); ++k) out.emplace_back(x[k] - x[0]);
  return out;
}

// Inverse of affine_chart with first coordinate zero.
inline TropicalPoint from_affine_chart(std::span<const Rational> chart) {
  std::vector<Rational> coords;
  coords.reserve(chart.size() + 1);
  coords.emplace_back(0);
  coords.insert(coords.end(), chart.begin(), chart.end());
  return TropicalPoint(std::move(coords));
}

// Closed sectors of the hyperplane with the given apex containing v:
// argmin_k (v_k - apex_k).
inline IndexSet sector_set(const TropicalPoint& v, const TropicalPoint& apex) {
  if (v.dim() != apex.dim()) throw DimensionError("sector_set: dimension mismatch");
  if (v.dim() == 0) throw DimensionError("sector_set: empty point");
  std::vector<Rational> diff(v.dim());
  for (Index k = 0; k < v.dim(); ++k) diff[k] = v[k] - apex[k];
  const Rational& m = *std::min_element(diff.begin(), diff.end(), [](const Rational& a, const Rational& b) {
    return cmp(a, b) < 0;
  });
  IndexSet out;
  for (Index k = 0; k < diff.size(); ++k)
    if (diff[k] == m) out.insert(k);
  return out;
}

// Point of the tropical projective space: infinite coordinates allowed, not all.
class ExtendedTropicalPoint {
 public:
  explicit ExtendedTropicalPoint(std::vector<ExtendedRational> coords) : coords_(std::move(coords)) {
    if (std::none_of(coords_.begin(), coords_.end(), [](const auto& c) { return c.is_finite(); }))
      throw PreconditionError("projective tropical point needs a finite coordinate");
  }
  explicit ExtendedTropicalPoint(const TropicalPoint& x) {
    for (const auto& c : x) coords_.emplace_back(c);
  }

  std::size_t dim() const noexcept { return coords_.size(); }
  const ExtendedRational& operator[](Index k) const { return coords_[k]; }
  std::span<const ExtendedRational> coords() const noexcept { return coords_; }
  bool is_finite() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const auto& c) { return c.is_finite(); });
  }

  // Subtracts the minimum finite coordinate.
  ExtendedTropicalPoint normalized() const {
    ExtendedRational m = ExtendedRational::infinity();
    for (const auto& c : coords_) m = std::min(m, c);
    std::vector<ExtendedRational> out;
    for (const auto& c : coords_)
      out.push_back(c.is_finite() ? ExtendedRational(Rational(c.value() - m.value())) : c);
    return ExtendedTropicalPoint(std::move(out));
  }

  friend bool operator==(const ExtendedTropicalPoint& a, const ExtendedTropicalPoint& b) {
    return a.dim() == b.dim() && a.normalized().coords_ == b.normalized().coords_;
  }

 private:
  std::vector<ExtendedRational> coords_;
};

// An ordered sequence of n points in TA^{d-1}; row i of the matrix V is v_i.
class PointConfiguration {
 public:
  PointConfiguration() = default;
  explicit PointConfiguration(std::vector<TropicalPoint> points) : points_(std::move(points)) {
    if (points_.empty()) throw PreconditionError("point configuration needs at least one point");
    dim_ = points_.front().dim();
    if (dim_ < 2) throw DimensionError("points need at least two coordinates");
    for (const auto& p : points_)
      if (p.dim() != dim_) throw DimensionError("points of a configuration must share their dimension");
  }
  PointConfiguration(std::initializer_list<std::initializer_list<Rational>> rows) {
    std::vector<TropicalPoint> pts;
    for (const auto& r : rows) pts.emplace_back(std::vector<Rational>(r));
    *this = PointConfiguration(std::move(pts));
  }

  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const TropicalPoint& operator[](Index i) const { return points_[i]; }
  const Rational& entry(Index i, Index j) const { return points_[i][j]; }
  std::span<const TropicalPoint> points() const noexcept { return points_; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  // Translate every point by c.
  PointConfiguration translated(const TropicalPoint& c) const {
    std::vector<TropicalPoint> out;
    for (const auto& p : points_) out.push_back(p + c);
    return PointConfiguration(std::move(out));
  }

 private:
  std::vector<TropicalPoint> points_;
  std::size_t dim_ = 0;
};

}  // namespace tropical

template <>
struct std::hash<tropical::TropicalPoint> {
  std::size_t operator()(const tropical::TropicalPoint& x) const {
    std::size_t h = 0;
    for (const auto& c : tropical::normalize(x)) h = h * 1000003u ^ std::hash<std::string>{}(c.get_str());
    return h;
  }
};

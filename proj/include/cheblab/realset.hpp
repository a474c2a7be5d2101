#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cheblab/error.hpp"
#include "cheblab/poly.hpp"

namespace cheblab {

/// Bands closer than this are merged when an IntervalUnion is built.
inline constexpr double kMergeTol = 1e-12;

struct Band {
  double lo;
  double hi;
  double length() const noexcept { return hi - lo; }
  friend bool operator==(const Band&, const Band&) = default;
};

/// Open interval between two consecutive bands.
struct Gap {
  double left;
  double right;
};

/// Compact subset of the real line given as sorted, disjoint closed bands.
class IntervalUnion {
 public:
  explicit IntervalUnion(std::vector<Band> bands, double merge_tol = kMergeTol);
  static IntervalUnion interval(double lo, double hi) { return IntervalUnion({{lo, hi}}); }

  const std::vector<Band>& bands() const noexcept { return bands_; }
  size_t size() const noexcept { return bands_.size(); }
  double lower() const noexcept { return bands_.front().lo; }
  double upper() const noexcept { return bands_.back().hi; }
  double total_length() const noexcept;

  /// The image {scale * x + shift : x in E}.
  IntervalUnion affine(double scale, double shift) const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Band> bands_;
};

std::vector<Gap> gaps(const IntervalUnion& e);

/// Hausdorff distance, computed from band endpoints and gap midpoints.
double set_distance(const IntervalUnion& e, const IntervalUnion& f);

/// Euclidean distance from x to the nearest band (0 inside).
double distance_to(const IntervalUnion& e, double x) noexcept;

bool contains(const IntervalUnion& e, double x, double tol = 0.0) noexcept;

/// Parses "[a,b]u[c,d]..." (whitespace ignored; "U" also accepted).
IntervalUnion parse_interval_union(std::string_view text);
std::string to_text(const IntervalUnion& e);

class PreimageError : public Error {
 public:
  enum class Reason { unbounded, empty };
  PreimageError(Reason r, std::string what) : Error(std::move(what)), reason_(r) {}
  Reason reason() const noexcept { return reason_; }
  const char* kind() const noexcept override {
    return reason_ == Reason::unbounded ? "preimage_unbounded" : "preimage_empty";
  }

 private:
  Reason reason_;
};

struct PreimageResult {
  IntervalUnion set;
  /// Tangency points where P touches a level from outside; dropped from `set`.
  std::vector<double> isolated_points;
};

/// {x real : lo <= P(x) <= hi} for P with real coefficients.
PreimageResult preimage_interval_detailed(const Polynomial& p, double lo, double hi);
IntervalUnion preimage_interval(const Polynomial& p, double lo, double hi);

}  // namespace cheblab

#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "skein/diagram.hpp"
#include "skein/laurent.hpp"

namespace skein {

/// Crossingless perfect matching of boundary points 1..2n of the disk.
///
/// Ordered lexicographically by the pair sequence (a1,b1),(a2,b2),... with
/// a_k < b_k and a_1 < a_2 < ...; that order is the basis order everywhere.
class Matching {
 public:
  /// The empty matching (n = 0).
  Matching() = default;
  /// partners[k] is the 0-based partner of 0-based point k. Throws
  /// std::invalid_argument unless it is a fixed-point-free, non-crossing involution.
  explicit Matching(std::vector<int> partners);
  /// From 1-based pairs.
  static Matching from_pairs(const std::vector<std::pair<int, int>>& pairs);

  int n() const { return static_cast<int>(partners_.size()) / 2; }
  int point_count() const { return static_cast<int>(partners_.size()); }
  /// 1-based partner of 1-based point.
  int partner(int point) const { return partners_.at(static_cast<std::size_t>(point - 1)) + 1; }
  const std::vector<int>& partners() const { return partners_; }
  /// 1-based pairs sorted by their smaller point.
  std::vector<std::pair<int, int>> pairs() const;

  /// "{(1,4),(2,3)}"; the empty matching is "{}".
  std::string to_string() const;

  std::strong_ordering operator<=>(const Matching& other) const;
  bool operator==(const Matching& other) const { return partners_ == other.partners_; }

 private:
  std::vector<int> partners_;
};

/// True iff partners is a fixed-point-free involution with no interleaved pairs.
bool is_noncrossing_matching(const std::vector<int>& partners);

/// All crossingless matchings on 2n points in basis order. Catalan(n) of them.
std::vector<Matching> enumerate_basis(int n);

/// Crossingless arcs realizing m as a tangle diagram.
TangleDiagram matching_diagram(const Matching& m);

// ---------------------------------------------------------------------------
// Rectangle view: bottom points 1..n left to right are disk points 1..n, top
// points 1..n left to right are disk points 2n..n+1.

struct RectPoint {
  bool top;
  int position;  ///< 1-based, left to right
  bool operator==(const RectPoint&) const = default;
};
int disk_label(const RectPoint& p, int n);
RectPoint rect_point(int disk_label, int n);

/// Vertical strands: bottom j to top j.
Matching rect_identity(int n);
/// Temperley-Lieb generator e_i: cup and cap at positions i, i+1.
Matching rect_generator(int n, int i);

/// R-linear combination of matchings over a fixed n.
class SkeinVector {
 public:
  explicit SkeinVector(int n = 0) : n_(n) {}
  SkeinVector(const Matching& m, LaurentPoly coeff = LaurentPoly(1));

  int n() const { return n_; }
  const std::map<Matching, LaurentPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  LaurentPoly coeff(const Matching& m) const;
  /// Adds c * m, dropping the entry if it cancels.
  void add_term(const Matching& m, const LaurentPoly& c);

  SkeinVector& operator+=(const SkeinVector& rhs);
  SkeinVector& operator-=(const SkeinVector& rhs);
  SkeinVector& operator*=(const LaurentPoly& c);
  friend SkeinVector operator+(SkeinVector a, const SkeinVector& b) { return a += b; }
  friend SkeinVector operator-(SkeinVector a, const SkeinVector& b) { return a -= b; }
  friend SkeinVector operator*(const LaurentPoly& c, SkeinVector v) { return v *= c; }
  bool operator==(const SkeinVector&) const = default;

  /// "A * {(1,4),(2,3)} + (-A^2 - A^-2) * {(1,2),(3,4)}", basis-ordered; "0" if zero.
  std::string to_string() const;
  /// Inverse of to_string; n is needed only to parse "0".
  static SkeinVector parse(std::string_view text, std::optional<int> n = std::nullopt);

  nlohmann::json to_json() const;
  static SkeinVector from_json(const nlohmann::json& j);

 private:
  int n_;
  std::map<Matching, LaurentPoly> terms_;
};

/// Skein reduction of a planar tangle to the crossingless basis.
SkeinVector reduce(const TangleDiagram& d);

/// Adds the cap (i, i+1) and shifts labels >= i up by 2. 1 <= i <= 2n+1 for m over n.
Matching cap_insert(const Matching& m, int i);
SkeinVector cap_insert(const SkeinVector& v, int i);

/// Joins points i and i+1 by an outside arc: result over n-1 and a loop flag.
std::pair<Matching, bool> contract(const Matching& m, int i);
SkeinVector contract(const SkeinVector& v, int i);

/// Stack y on top of x in rectangle view; loops become delta.
SkeinVector compose_rect(const SkeinVector& x, const SkeinVector& y);
std::pair<Matching, int> compose_rect(const Matching& x, const Matching& y);

}  // namespace skein

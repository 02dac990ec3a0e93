#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace skein {

/// A place where an edge ends: slot 0..3 of a crossing, or a boundary point.
struct Incidence {
  enum class Kind { crossing, boundary };
  Kind kind;
  int index;  ///< crossing index, or 0-based boundary point
  int slot;   ///< 0..3 for crossings, 0 for boundary points
  bool operator==(const Incidence&) const = default;
};

/// Planar tangle diagram in a disk with blackboard framing.
///
/// Crossings are PD quadruples of edge labels listed counterclockwise starting
/// at the incoming under-strand, so slots 0 and 2 are the under-strand and
/// slots 1 and 3 the over-strand. Boundary point k (1-based, counterclockwise
/// on the disk boundary) is attached to edge boundary()[k-1]. Every edge label
/// has exactly two incidences. Crossing-free closed components are only
/// counted, never stored as edges.
///
/// Construction validates the incidence structure and planarity; every
/// TangleDiagram value is a valid planar diagram.
class TangleDiagram {
 public:
  using Crossing = std::array<int, 4>;

  TangleDiagram() = default;
  TangleDiagram(std::vector<Crossing> crossings, std::vector<int> boundary, int closed_loops);

  const std::vector<Crossing>& crossings() const { return crossings_; }
  const std::vector<int>& boundary() const { return boundary_; }
  int closed_loops() const { return closed_loops_; }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int endpoint_count() const { return static_cast<int>(boundary_.size()); }
  /// Number of arc components, i.e. endpoint_count() / 2.
  int arc_count() const { return endpoint_count() / 2; }
  bool is_closed() const { return boundary_.empty(); }

  /// Sorted distinct edge labels.
  std::vector<int> edge_labels() const;
  std::pair<Incidence, Incidence> incidences(int label) const;
  int edge_at(const Incidence& inc) const;
  int max_label() const;

  /// Same diagram with edges renumbered 1, 2, ... in order of first
  /// appearance (boundary points first, then crossings in order).
  TangleDiagram canonical() const;

  /// Text in the diagram language; parse_tangle(serialize()) == *this.
  std::string serialize() const;

  bool operator==(const TangleDiagram&) const = default;

  /// Builds without validation. Only for operations whose output is
  /// planar and well formed by construction.
  static TangleDiagram unchecked(std::vector<Crossing> crossings, std::vector<int> boundary,
                                 int closed_loops);

 private:
  std::vector<Crossing> crossings_;
  std::vector<int> boundary_;
  int closed_loops_ = 0;
};

/// Throws DiagramError unless every label has exactly two incidences, the
/// endpoint count is even and all labels are positive.
void validate_structure(const std::vector<TangleDiagram::Crossing>& crossings,
                        const std::vector<int>& boundary, int closed_loops);

/// True iff the rotation system given by the PD slots, together with the
/// boundary points in counterclockwise order on the outer face, embeds in the
/// sphere. Assumes the structure is already valid.
bool validate_planarity(const std::vector<TangleDiagram::Crossing>& crossings,
                        const std::vector<int>& boundary);
inline bool validate_planarity(const TangleDiagram& d) {
  return validate_planarity(d.crossings(), d.boundary());
}

/// Parses the line-oriented diagram language:
///   endpoints <2n>          number of boundary points (default 0)
///   loops <k>               crossing-free closed components
///   arc <p>-<q>             crossingless arc between boundary points
///   X(<e1>,<e2>,<e3>,<e4>)  crossing
///   edge <id> <end> <end>   incidence declaration; <end> is b<k> or x
/// Statements are separated by newlines or ';'. '#' starts a comment.
/// Throws ParseError (syntax) or DiagramError (structure), both with location.
TangleDiagram parse_tangle(std::string_view text);

/// Mirror image: every crossing switched.
TangleDiagram mirror(const TangleDiagram& d);

/// Split union, side by side. Boundary points of b follow those of a.
TangleDiagram disjoint_union(const TangleDiagram& a, const TangleDiagram& b);

/// Connected sum of two closed diagrams, cutting edge ea of a and edge eb of b.
TangleDiagram connected_sum(const TangleDiagram& a, int ea, const TangleDiagram& b, int eb);

/// Identifies boundary points of two diagrams.
///
/// joins lists (point of a, point of b) pairs (1-based) to connect; outer lists
/// the remaining boundary points, as (side, point) with side 0 = a and 1 = b,
/// in counterclockwise order of the new boundary. Throws DiagramError if the
/// result is not planar.
TangleDiagram glue(const TangleDiagram& a, const TangleDiagram& b,
                   const std::vector<std::pair<int, int>>& joins,
                   const std::vector<std::pair<int, int>>& outer);

/// One side of an edge, traversed from `from` to `to`, as seen along a face.
struct EdgeSide {
  int edge;
  Incidence from;
  Incidence to;
};

/// Faces of the embedding, each listed as the edge sides on its boundary.
/// Closed crossing-free loops are not represented.
std::vector<std::vector<EdgeSide>> faces(const TangleDiagram& d);

// ---------------------------------------------------------------------------
// Framed braid words

struct BraidLetter {
  enum class Kind { crossing, twist };  ///< s_i or t_i
  Kind kind;
  int index;  ///< 1-based
  int power;  ///< +1 or -1
  bool operator==(const BraidLetter&) const = default;
};

/// Word in s_1..s_{m-1} and t_1..t_m on m strands; the empty word is e.
struct FramedBraidWord {
  int strand_count = 0;
  std::vector<BraidLetter> letters;

  FramedBraidWord() = default;
  FramedBraidWord(int strands, std::vector<BraidLetter> word);

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  std::string to_string() const;
  bool operator==(const FramedBraidWord&) const = default;
};

/// Concatenation w1 w2 (w1 acts last).
FramedBraidWord operator*(const FramedBraidWord& w1, const FramedBraidWord& w2);

/// Tokens s<i>, s<i>^-1, t<i>, t<i>^-1 separated by whitespace.
FramedBraidWord parse_braid(std::string_view text, int strand_count);

/// Braid as a tangle on 2m endpoints: bottom strand positions 1..m are boundary
/// points 1..m and top positions 1..m are boundary points 2m..m+1. The first
/// letter sits at the bottom. s_i is the crossing whose A-smoothing is the
/// identity reconnection; t_i is a positive kink on strand i.
TangleDiagram braid_to_tangle(const FramedBraidWord& w);

}  // namespace skein

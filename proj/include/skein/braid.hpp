#pragma once

#include <map>
#include <memory>
#include <vector>

#include "skein/diagram.hpp"
#include "skein/tlskein.hpp"

namespace skein {

enum class Side { left, right };

/// Which picture a word acts in, decided by its strand count against the
/// vector's n: 2n strands act on the disk boundary, n strands on one side of
/// the rectangle.
enum class View { disk, rectangle };

struct BraidAction {
  FramedBraidWord word;
  Side side = Side::left;
};

/// Reversed word with every power negated.
FramedBraidWord invert(const FramedBraidWord& w);
/// Reversed word, powers kept.
FramedBraidWord reverse(const FramedBraidWord& w);

/// Throws std::invalid_argument if w cannot act on vectors over n from `side`.
View action_view(const FramedBraidWord& w, int n, Side side = Side::left);

/// Left action sigma . v. In disk view the braid occupies a collar of the
/// boundary: matching point k meets braid top position k and the result's
/// point k is braid bottom position k. In rectangle view the braid is stacked
/// below v. The first letter of w is outermost, so act(st, v) = act(s, act(t, v)).
SkeinVector act(const FramedBraidWord& w, const SkeinVector& v);

/// Right action v . sigma, rectangle view: the braid is stacked on top of v.
SkeinVector act_right(const SkeinVector& v, const FramedBraidWord& w);

SkeinVector apply(const BraidAction& a, const SkeinVector& v);

/// The disk-view action in the coordinates of a ball glued on the far side of
/// the boundary sphere: the collar runs the other way, so composition order
/// flips. act_far(w, v) = act(reverse(w), v); this is a right action.
SkeinVector act_far(const FramedBraidWord& w, const SkeinVector& v);

/// Reference implementations: glue the whole braid tangle to each basis
/// diagram and reduce. act / act_right must agree with these.
SkeinVector act_diagrammatic(const FramedBraidWord& w, const SkeinVector& v);
SkeinVector act_right_diagrammatic(const SkeinVector& v, const FramedBraidWord& w);

/// Image of every basis matching under one generator.
class GeneratorMatrix {
 public:
  GeneratorMatrix(int n, std::map<Matching, SkeinVector> columns)
      : n_(n), columns_(std::move(columns)) {}
  int n() const { return n_; }
  const SkeinVector& column(const Matching& m) const { return columns_.at(m); }
  SkeinVector apply(const SkeinVector& v) const;
  /// entry[i][j] = coefficient of basis[i] in the image of basis[j].
  std::vector<std::vector<LaurentPoly>> dense(const std::vector<Matching>& basis) const;

 private:
  int n_;
  std::map<Matching, SkeinVector> columns_;
};

/// Cached per (view, side, n, letter); built on first use by diagram gluing.
/// Safe to call from several threads.
std::shared_ptr<const GeneratorMatrix> generator_matrix(View view, Side side, int n, const BraidLetter& letter);

}  // namespace skein

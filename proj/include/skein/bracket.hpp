#pragma once

#include <map>
#include <utility>
#include <vector>

#include "skein/diagram.hpp"
#include "skein/laurent.hpp"

namespace skein {

/// The two ways to smooth a crossing. `zero` carries coefficient A and joins
/// slots (0,1) and (2,3); `infinity` carries A^-1 and joins (0,3) and (1,2).
enum class Smoothing { zero, infinity };

/// Largest diagram the exhaustive oracle accepts.
inline constexpr int kOracleMaxCrossings = 24;

/// Replace crossing c by one smoothing. Loops that close up are counted in
/// closed_loops(); remaining crossings keep their order.
TangleDiagram smooth(const TangleDiagram& d, int c, Smoothing s);

/// (d0, dinf) with <d> = A <d0> + A^-1 <dinf>. Throws std::out_of_range for a bad id.
std::pair<TangleDiagram, TangleDiagram> resolve_crossing(const TangleDiagram& d, int c);

/// Crossingless boundary pairing (partner[k] is the 0-based partner of
/// boundary point k) mapped to its coefficient, with free loops already
/// evaluated to delta. Computed by memoized recursive resolution; kinks are
/// absorbed as -A^3 / -A^-3 factors without branching.
using PairingExpansion = std::map<std::vector<int>, LaurentPoly>;
PairingExpansion expand_crossings(const TangleDiagram& d);

/// Unnormalized Kauffman bracket: <empty> = 1, <unknot> = delta.
/// Throws DiagramError for diagrams with boundary points.
LaurentPoly kauffman_bracket(const TangleDiagram& d);

/// Sum over all 2^c states of A^(#zero - #infinity) delta^(#loops), spread
/// over `jobs` threads. Written separately from kauffman_bracket so the two
/// can check each other. Rejects diagrams with more than max_crossings.
LaurentPoly state_sum_oracle(const TangleDiagram& d, int jobs = 1, int max_crossings = kOracleMaxCrossings);

// ---------------------------------------------------------------------------
// Reidemeister moves

/// Push the edge on side `first` of face `face` over the edge on side
/// `second` (indices into faces(d)[face]), creating a bigon.
struct R2Insertion {
  int face = 0;
  int first = 0;
  int second = 0;
};
/// Push part of a crossing-free loop over itself.
struct R2LoopInsertion {};
/// Two crossings bounding a bigon where one strand is over at both.
struct R2Removal {
  int crossing_a = 0;
  int crossing_b = 0;
};

TangleDiagram apply_r2(const TangleDiagram& d, const R2Insertion& site);
TangleDiagram apply_r2(const TangleDiagram& d, const R2LoopInsertion& site);
TangleDiagram apply_r2(const TangleDiagram& d, const R2Removal& site);
std::vector<R2Removal> r2_removal_sites(const TangleDiagram& d);

/// Index into faces(d) of a triangular face whose three crossings admit a
/// Reidemeister III move.
std::vector<int> r3_sites(const TangleDiagram& d);
TangleDiagram apply_r3(const TangleDiagram& d, int face);

/// Reidemeister I: add a kink on `edge`. positive => bracket gains -A^3.
TangleDiagram add_kink(const TangleDiagram& d, int edge, bool positive);
/// Same, on one of the crossing-free loops.
TangleDiagram add_kink_on_loop(const TangleDiagram& d, bool positive);

}  // namespace skein

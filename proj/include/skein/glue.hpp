#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "skein/braid.hpp"
#include "skein/tlskein.hpp"

namespace skein {

// ---------------------------------------------------------------------------
// Pairing of two balls glued along their boundary sphere

/// Number of closed loops formed by identifying point i of `a` with point i of `b`.
int glued_loop_count(const Matching& a, const Matching& b);

/// Bilinear pairing: each matching pair contributes delta^loops. The second
/// ball is seen from the far side of the sphere, so its point i sits on top
/// of point i of the first; its diagrams are described as seen from behind.
LaurentPoly pair(const SkeinVector& a, const SkeinVector& b);

/// pair(act(sigma, a), act_far(invert(sigma), b)) == pair(a, b): moving the
/// braid through the sphere. The second ball's collar runs the other way, hence act_far.
bool check_braiding_relation(const SkeinVector& a, const SkeinVector& b, const FramedBraidWord& sigma);

/// pair(cap_insert(a, i), b) == pair(a, contract(b, i)); a over n-1, b over n.
bool check_bigon_relation(const SkeinVector& a, const SkeinVector& b, int i);

/// Cuts a closed diagram along a circle into two tangles (x, y) with
/// pair(reduce(x), reduce(y)) == kauffman_bracket(d). x holds about half of
/// the crossings and all free loops; y is described as seen from behind, with
/// boundary point k of y glued to point k of x.
std::pair<TangleDiagram, TangleDiagram> split_diagram(const TangleDiagram& d);

// ---------------------------------------------------------------------------
// Annular closure

/// Element of R[z], z the class of the essential loop of the annulus.
class AnnularElement {
 public:
  AnnularElement() = default;

  const std::map<int, LaurentPoly>& coefficients() const { return coeffs_; }
  LaurentPoly coeff(int degree) const;
  bool is_zero() const { return coeffs_.empty(); }
  void add_term(int degree, const LaurentPoly& c);
  AnnularElement& operator+=(const AnnularElement& rhs);
  bool operator==(const AnnularElement&) const = default;

  /// Substitute z = value.
  LaurentPoly evaluate(const LaurentPoly& value) const;

  /// "z^0: -A^2 - A^-2 ; z^2: 1", ascending degree; "0" if zero.
  std::string to_string() const;
  static AnnularElement parse(std::string_view text);
  nlohmann::json to_json() const;

 private:
  std::map<int, LaurentPoly> coeffs_;
};

/// Closes a rectangle-view vector around the annulus (top j to bottom j).
/// Loops with nonzero winding give z, the others delta.
AnnularElement annular_trace(const SkeinVector& v);
/// (essential loops, inessential loops) for one rectangle matching.
std::pair<int, int> annular_loops(const Matching& m);

/// annular_trace(act(sigma, act_right(a, invert(sigma)))) == annular_trace(a).
bool check_conjugation_relation(const SkeinVector& a, const FramedBraidWord& sigma);

// ---------------------------------------------------------------------------
// Batch relation checks

struct RelationCheck {
  std::string relation;  ///< "braiding", "bigon" or "conjugation"
  int n = 0;
  bool exhaustive = true;
  long cases = 0;
  long failures = 0;
  std::string witness;  ///< first counterexample, empty if none

  bool passed() const { return failures == 0; }
  nlohmann::json to_json() const;
};

/// Settings shared by the batch checks. Levels up to exhaustive_max_n are
/// checked on every basis pair and every word of length <= word_cutoff;
/// larger levels use `samples` random instances drawn from `seed`.
struct CheckOptions {
  int word_cutoff = 4;
  int jobs = 1;
  int exhaustive_max_n = 3;
  int samples = 500;
  /// Longest random word in sampled mode.
  int sample_word_length = 6;
  unsigned long long seed = 20240607ULL;
};

/// Braiding relation at level n (words on 2n strands, twists included).
/// Exhaustive mode carries the matrix of pair(act(w, a), act_far(invert(w), b))
/// along the word tree, one letter at a time.
RelationCheck verify_braiding(int n, const CheckOptions& options = {});
/// Bigon relation for every a over n-1, b over n and position.
RelationCheck verify_bigon(int n);
/// Conjugation relation at level n (rectangle view, words on n strands).
RelationCheck verify_conjugation(int n, const CheckOptions& options = {});

/// Generators s_i^+-1 and t_i^+-1 on the given number of strands.
std::vector<BraidLetter> braid_generators(int strands, bool with_twists = true);

// ---------------------------------------------------------------------------
// Quotient of the paired tensor module by braiding and bigon relations

struct QuotientOptions {
  int n_max = 2;
  /// Longest braid word used to generate braiding relations.
  int word_cutoff = 4;
  int jobs = 1;
  /// Keep the relation rows in the report (for JSON export).
  bool keep_rows = false;
};

struct QuotientColumn {
  int n;
  Matching a;
  Matching b;
};

struct QuotientReport {
  int n_max = 0;
  int word_cutoff = 0;
  std::vector<QuotientColumn> columns;
  long braiding_rows = 0;  ///< nonzero rows generated
  long bigon_rows = 0;
  long words = 0;          ///< braid words enumerated, all levels
  /// Rank of the braiding rows alone at levels 1..n_max.
  std::vector<int> braiding_ranks;
  /// Every relation row pairs to zero.
  bool rows_in_pairing_kernel = true;
  int relation_rank = 0;  ///< over the fraction field, fraction-free elimination
  /// Relation rank after substituting each rational value of A.
  std::vector<std::pair<Rational, int>> evaluated_ranks;
  int rank = 0;  ///< columns.size() - relation_rank
  std::vector<std::map<int, LaurentPoly>> rows;  ///< only with keep_rows

  nlohmann::json to_json() const;
  /// Relation matrix: column labels and sparse rows.
  nlohmann::json matrix_json() const;
};

/// Builds the relations on (+)_{n <= n_max} basis (x) basis and computes the
/// quotient rank. Throws InconsistencyError if an evaluated rank disagrees
/// with the symbolic one.
QuotientReport quotient_report(const QuotientOptions& options);
int quotient_rank(int n_max, int word_cutoff = 4);

/// Rank over Q(A) of the given rows, by fraction-free elimination.
int symbolic_rank(const std::vector<std::vector<LaurentPoly>>& rows);
/// Rank over Q after substituting A = a.
int evaluated_rank(const std::vector<std::vector<LaurentPoly>>& rows, const Rational& a);

}  // namespace skein

#include "skein/braid.hpp"

#include <mutex>
#include <stdexcept>
#include <tuple>

namespace skein {

FramedBraidWord invert(const FramedBraidWord& w) {
  std::vector<BraidLetter> letters(w.letters.rbegin(), w.letters.rend());
  for (auto& l : letters) l.power = -l.power;
  return FramedBraidWord(w.strand_count, std::move(letters));
}

FramedBraidWord reverse(const FramedBraidWord& w) {
  return FramedBraidWord(w.strand_count, std::vector<BraidLetter>(w.letters.rbegin(), w.letters.rend()));
}

View action_view(const FramedBraidWord& w, int n, Side side) {
  if (side == Side::left && w.strand_count == 2 * n) return View::disk;
  if (w.strand_count == n) return View::rectangle;
  throw std::invalid_argument("braid on " + std::to_string(w.strand_count) + " strands cannot act " +
                              (side == Side::left ? "on" : "from the right on") + " vectors with " +
                              std::to_string(2 * n) + " endpoints");
}

namespace {

// Disk view: matching point k meets braid top position k.
SkeinVector glue_disk(const TangleDiagram& braid, int n, const SkeinVector& v) {
  SkeinVector out(n);
  std::vector<std::pair<int, int>> joins, outer;
  for (int k = 1; k <= 2 * n; ++k) {
    joins.emplace_back(4 * n + 1 - k, k);
    outer.emplace_back(0, k);
  }
  for (const auto& [m, c] : v.terms()) out += c * reduce(glue(braid, matching_diagram(m), joins, outer));
  return out;
}

// Rectangle view: `lower` top position k meets `upper` bottom position k.
TangleDiagram stack(const TangleDiagram& lower, const TangleDiagram& upper, int n) {
  std::vector<std::pair<int, int>> joins, outer;
  for (int k = 1; k <= n; ++k) {
    joins.emplace_back(disk_label({true, k}, n), disk_label({false, k}, n));
    outer.emplace_back(0, k);
  }
  for (int k = n + 1; k <= 2 * n; ++k) outer.emplace_back(1, k);
  return glue(lower, upper, joins, outer);
}

SkeinVector glue_rect(const TangleDiagram& braid, int n, const SkeinVector& v, Side side) {
  SkeinVector out(n);
  for (const auto& [m, c] : v.terms()) {
    auto md = matching_diagram(m);
    out += c * reduce(side == Side::left ? stack(braid, md, n) : stack(md, braid, n));
  }
  return out;
}

SkeinVector glue_word(const FramedBraidWord& w, const SkeinVector& v, View view, Side side) {
  if (w.strand_count == 0) return v;
  auto braid = braid_to_tangle(w);
  return view == View::disk ? glue_disk(braid, v.n(), v) : glue_rect(braid, v.n(), v, side);
}

}  // namespace

SkeinVector GeneratorMatrix::apply(const SkeinVector& v) const {
  if (v.n() != n_) throw std::invalid_argument("GeneratorMatrix: size mismatch");
  SkeinVector out(n_);
  for (const auto& [m, c] : v.terms()) out += c * column(m);
  return out;
}

std::vector<std::vector<LaurentPoly>> GeneratorMatrix::dense(const std::vector<Matching>& basis) const {
  std::vector<std::vector<LaurentPoly>> out(basis.size(), std::vector<LaurentPoly>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto& col = column(basis[j]);
    for (std::size_t i = 0; i < basis.size(); ++i) out[i][j] = col.coeff(basis[i]);
  }
  return out;
}

std::shared_ptr<const GeneratorMatrix> generator_matrix(View view, Side side, int n, const BraidLetter& letter) {
  using Key = std::tuple<View, Side, int, BraidLetter::Kind, int, int>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const GeneratorMatrix>> cache;
  if (view == View::disk) side = Side::left;
  Key key{view, side, n, letter.kind, letter.index, letter.power};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const int strands = view == View::disk ? 2 * n : n;
  FramedBraidWord w(strands, {letter});
  std::map<Matching, SkeinVector> columns;
  for (const auto& m : enumerate_basis(n)) columns.emplace(m, glue_word(w, SkeinVector(m), view, side));
  auto built = std::make_shared<const GeneratorMatrix>(n, std::move(columns));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(built)).first->second;
}

SkeinVector act(const FramedBraidWord& w, const SkeinVector& v) {
  View view = action_view(w, v.n(), Side::left);
  SkeinVector out = v;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out = generator_matrix(view, Side::left, v.n(), *it)->apply(out);
  return out;
}

SkeinVector act_right(const SkeinVector& v, const FramedBraidWord& w) {
  action_view(w, v.n(), Side::right);
  SkeinVector out = v;
  for (const auto& l : w.letters) out = generator_matrix(View::rectangle, Side::right, v.n(), l)->apply(out);
  return out;
}

SkeinVector apply(const BraidAction& a, const SkeinVector& v) {
  return a.side == Side::left ? act(a.word, v) : act_right(v, a.word);
}

SkeinVector act_far(const FramedBraidWord& w, const SkeinVector& v) { return act(reverse(w), v); }

SkeinVector act_diagrammatic(const FramedBraidWord& w, const SkeinVector& v) {
  return glue_word(w, v, action_view(w, v.n(), Side::left), Side::left);
}

SkeinVector act_right_diagrammatic(const SkeinVector& v, const FramedBraidWord& w) {
  return glue_word(w, v, action_view(w, v.n(), Side::right), Side::right);
}

}  // namespace skein

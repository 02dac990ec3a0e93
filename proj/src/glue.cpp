#include "skein/glue.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <random>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "skein/error.hpp"

namespace skein {

int glued_loop_count(const Matching& a, const Matching& b) {
  if (a.n() != b.n()) throw std::invalid_argument("pair: matchings of different sizes");
  const auto& pa = a.partners();
  const auto& pb = b.partners();
  std::vector<char> seen(pa.size(), 0);
  int loops = 0;
  for (std::size_t p = 0; p < pa.size(); ++p) {
    if (seen[p]) continue;
    ++loops;
    std::size_t q = p;
    do {
      seen[q] = 1;
      auto r = static_cast<std::size_t>(pa[q]);
      seen[r] = 1;
      q = static_cast<std::size_t>(pb[r]);
    } while (q != p);
  }
  return loops;
}

LaurentPoly pair(const SkeinVector& a, const SkeinVector& b) {
  if (a.n() != b.n()) throw std::invalid_argument("pair: vectors of different sizes");
  LaurentPoly total;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      total += ca * cb * loop_value().pow(static_cast<unsigned>(glued_loop_count(ma, mb)));
  return total;
}

bool check_braiding_relation(const SkeinVector& a, const SkeinVector& b, const FramedBraidWord& sigma) {
  return pair(act(sigma, a), act_far(invert(sigma), b)) == pair(a, b);
}

bool check_bigon_relation(const SkeinVector& a, const SkeinVector& b, int i) {
  if (a.n() + 1 != b.n()) throw std::invalid_argument("bigon relation: a must have one arc fewer than b");
  return pair(cap_insert(a, i), b) == pair(a, contract(b, i));
}

// ---------------------------------------------------------------------------

namespace {

Incidence other_end(const TangleDiagram& d, int c, int s) {
  auto [p, q] = d.incidences(d.crossings()[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)]);
  Incidence here{Incidence::Kind::crossing, c, s};
  return p == here ? q : p;
}

// Walks once around the neighbourhood of the crossings in `inside`, rotating
// counterclockwise at each crossing and crossing over internal edges.
// Returns the cut slots in walk order if they all lie on that one walk.
std::optional<std::vector<Incidence>> boundary_walk(const TangleDiagram& d, const std::vector<char>& inside) {
  std::vector<Incidence> cuts;
  for (int c = 0; c < d.crossing_count(); ++c) {
    if (!inside[static_cast<std::size_t>(c)]) continue;
    for (int s = 0; s < 4; ++s)
      if (!inside[static_cast<std::size_t>(other_end(d, c, s).index)]) cuts.push_back({Incidence::Kind::crossing, c, s});
  }
  if (cuts.empty()) return cuts;
  std::vector<Incidence> walk{cuts[0]};
  int c = cuts[0].index, s = cuts[0].slot;
  const int guard = 8 * d.crossing_count() + 8;
  for (int step = 0; step < guard; ++step) {
    s = (s + 1) % 4;
    Incidence o = other_end(d, c, s);
    if (inside[static_cast<std::size_t>(o.index)]) {
      c = o.index;
      s = o.slot;
      continue;
    }
    Incidence here{Incidence::Kind::crossing, c, s};
    if (here == cuts[0]) break;
    walk.push_back(here);
  }
  if (walk.size() != cuts.size()) return std::nullopt;
  return walk;
}

}  // namespace

std::pair<TangleDiagram, TangleDiagram> split_diagram(const TangleDiagram& d) {
  if (!d.is_closed()) throw DiagramError("split_diagram needs a closed diagram");
  const int count = d.crossing_count();
  if (count == 0) return {TangleDiagram({}, {}, d.closed_loops()), TangleDiagram()};

  std::vector<char> inside(static_cast<std::size_t>(count), 0);
  inside[0] = 1;
  int size = 1;
  auto walk = boundary_walk(d, inside);
  const int target = (count + 1) / 2;
  while (size < target) {
    bool grown = false;
    for (int c = 0; c < count && !grown; ++c) {
      if (inside[static_cast<std::size_t>(c)]) continue;
      bool adjacent = false;
      for (int s = 0; s < 4; ++s) adjacent = adjacent || inside[static_cast<std::size_t>(other_end(d, c, s).index)];
      if (!adjacent) continue;
      inside[static_cast<std::size_t>(c)] = 1;
      if (auto w = boundary_walk(d, inside)) {
        walk = std::move(w);
        ++size;
        grown = true;
      } else {
        inside[static_cast<std::size_t>(c)] = 0;
      }
    }
    if (!grown) break;
  }
  if (!walk) throw InconsistencyError("split_diagram: single crossing has a broken boundary walk");

  std::vector<TangleDiagram::Crossing> xs, ys;
  for (int c = 0; c < count; ++c) {
    const auto& x = d.crossings()[static_cast<std::size_t>(c)];
    if (inside[static_cast<std::size_t>(c)])
      xs.push_back(x);
    else
      ys.push_back({x[1], x[0], x[3], x[2]});  // seen from behind
  }
  std::vector<int> boundary;
  for (const auto& inc : *walk) boundary.push_back(d.edge_at(inc));
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (validate_planarity(xs, boundary)) {
      try {
        return {TangleDiagram(xs, boundary, d.closed_loops()), TangleDiagram(ys, boundary, 0)};
      } catch (const DiagramError& e) {
        throw InconsistencyError(std::string("split_diagram: far side invalid: ") + e.what());
      }
    }
    std::reverse(boundary.begin(), boundary.end());
  }
  throw InconsistencyError("split_diagram: cut is not planar in either orientation");
}

// ---------------------------------------------------------------------------

LaurentPoly AnnularElement::coeff(int degree) const {
  auto it = coeffs_.find(degree);
  return it == coeffs_.end() ? LaurentPoly() : it->second;
}

void AnnularElement::add_term(int degree, const LaurentPoly& c) {
  if (degree < 0) throw std::invalid_argument("negative z-degree");
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(degree, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

AnnularElement& AnnularElement::operator+=(const AnnularElement& rhs) {
  for (const auto& [k, c] : rhs.coeffs_) add_term(k, c);
  return *this;
}

LaurentPoly AnnularElement::evaluate(const LaurentPoly& value) const {
  LaurentPoly total;
  for (const auto& [k, c] : coeffs_) total += c * value.pow(static_cast<unsigned>(k));
  return total;
}

std::string AnnularElement::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : coeffs_) {
    if (!out.empty()) out += " ; ";
    out += "z^" + std::to_string(k) + ": " + c.to_string();
  }
  return out;
}

AnnularElement AnnularElement::parse(std::string_view text) {
  AnnularElement e;
  std::string s(text);
  if (s.find_first_not_of(" \t\n") != std::string::npos && s.substr(s.find_first_not_of(" \t\n"), 1) == "0" &&
      s.find_first_not_of(" \t\n0") == std::string::npos)
    return e;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';')) {
    auto colon = part.find(':');
    auto zpos = part.find("z^");
    if (colon == std::string::npos || zpos == std::string::npos || zpos > colon)
      throw ParseError("annular element: expected 'z^k: coefficient'");
    int k = 0;
    try {
      k = std::stoi(part.substr(zpos + 2, colon - zpos - 2));
    } catch (const std::exception&) {
      throw ParseError("annular element: bad z-degree");
    }
    e.add_term(k, LaurentPoly::parse(part.substr(colon + 1)));
  }
  return e;
}

nlohmann::json AnnularElement::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : coeffs_) terms.push_back({{"z", k}, {"coeff", c.to_json()}});
  return {{"terms", terms}};
}

std::pair<int, int> annular_loops(const Matching& m) {
  const int n = m.n();
  const int size = 2 * n;
  std::vector<char> seen(static_cast<std::size_t>(size), 0);
  int essential = 0, trivial = 0;
  for (int p = 0; p < size; ++p) {
    if (seen[static_cast<std::size_t>(p)]) continue;
    int winding = 0;
    int q = p;
    do {
      seen[static_cast<std::size_t>(q)] = 1;
      int r = m.partners()[static_cast<std::size_t>(q)];
      seen[static_cast<std::size_t>(r)] = 1;
      // Closure strand from r around the annulus; leaving from the top counts +1.
      winding += rect_point(r + 1, n).top ? 1 : -1;
      q = size - 1 - r;
    } while (q != p);
    if (winding != 0)
      ++essential;
    else
      ++trivial;
  }
  return {essential, trivial};
}

AnnularElement annular_trace(const SkeinVector& v) {
  AnnularElement out;
  for (const auto& [m, c] : v.terms()) {
    auto [essential, trivial] = annular_loops(m);
    out.add_term(essential, c * loop_value().pow(static_cast<unsigned>(trivial)));
  }
  return out;
}

bool check_conjugation_relation(const SkeinVector& a, const FramedBraidWord& sigma) {
  return annular_trace(act(sigma, act_right(a, invert(sigma)))) == annular_trace(a);
}

// ---------------------------------------------------------------------------

namespace {

using PolyRow = std::vector<LaurentPoly>;
using RatRow = std::vector<Rational>;

void normalize(PolyRow& row) {
  Integer g = 0;
  int low = 0;
  bool any = false;
  for (const auto& p : row) {
    if (p.is_zero()) continue;
    g = boost::multiprecision::gcd(g, p.content());
    low = any ? std::min(low, p.min_exponent()) : p.min_exponent();
    any = true;
  }
  if (!any) return;
  for (auto& p : row) {
    if (p.is_zero()) continue;
    if (g != 1) p = p.divided_exact(g);
    if (low != 0) p = p.shifted(-low);
  }
}

// Incremental echelon form; rows are reduced against pivots in column order.
class PolyEliminator {
 public:
  bool insert(PolyRow row) {
    for (const auto& [j, p] : pivots_) {
      if (row[j].is_zero()) continue;
      LaurentPoly f = row[j];
      const LaurentPoly& pv = p[j];
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (k < j) continue;
        if (p[k].is_zero()) {
          if (!row[k].is_zero()) row[k] = pv * row[k];
        } else {
          row[k] = pv * row[k] - f * p[k];
        }
      }
      normalize(row);
    }
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_zero()) {
        pivots_.emplace(j, std::move(row));
        return true;
      }
    return false;
  }
  int rank() const { return static_cast<int>(pivots_.size()); }

 private:
  std::map<std::size_t, PolyRow> pivots_;
};

class RatEliminator {
 public:
  bool insert(RatRow row) {
    for (const auto& [j, p] : pivots_) {
      if (row[j] == 0) continue;
      Rational f = row[j] / p[j];
      for (std::size_t k = j; k < row.size(); ++k)
        if (p[k] != 0) row[k] -= f * p[k];
    }
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) {
        pivots_.emplace(j, std::move(row));
        return true;
      }
    return false;
  }
  int rank() const { return static_cast<int>(pivots_.size()); }

 private:
  std::map<std::size_t, RatRow> pivots_;
};

RatRow evaluate_row(const PolyRow& row, const Rational& a) {
  RatRow out(row.size());
  for (std::size_t k = 0; k < row.size(); ++k) out[k] = row[k].eval(a);
  return out;
}

const std::vector<Rational>& sample_points() {
  static const std::vector<Rational> points{Rational(2), Rational(-3, 7)};
  return points;
}

using Dense = std::vector<std::vector<LaurentPoly>>;

Dense multiply(const Dense& g, const Dense& m) {
  const std::size_t k = g.size();
  Dense out(k, std::vector<LaurentPoly>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (g[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < k; ++j)
        if (!m[l][j].is_zero()) out[i][j] += g[i][l] * m[l][j];
    }
  return out;
}

// Shared elimination state. Rows known to pair to zero stop being inserted
// once an eliminator holds columns - 1 of them: the pairing is a nonzero
// functional, so its kernel has exactly that dimension and is then spanned.
class RelationSink {
 public:
  RelationSink(std::size_t columns, std::vector<LaurentPoly> pairing_values, bool keep_rows)
      : columns_(columns), pairing_(std::move(pairing_values)), keep_(keep_rows), numeric_(sample_points().size()) {}

  // Returns false for a zero row.
  bool add(const std::map<int, LaurentPoly>& sparse, long& counter) {
    if (sparse.empty()) return false;
    LaurentPoly phi;
    for (const auto& [k, c] : sparse) phi += c * pairing_[static_cast<std::size_t>(k)];
    const bool in_kernel = phi.is_zero();
    std::lock_guard<std::mutex> lock(mu_);
    ++counter;
    if (keep_) rows_.push_back(sparse);
    if (!in_kernel) kernel_ok_ = false;
    const int bound = static_cast<int>(columns_) - 1;
    const bool skip_ok = kernel_ok_;
    PolyRow dense;
    auto ensure_dense = [&] {
      if (!dense.empty()) return;
      dense.assign(columns_, LaurentPoly());
      for (const auto& [k, c] : sparse) dense[static_cast<std::size_t>(k)] = c;
    };
    if (!(skip_ok && symbolic_.rank() >= bound)) {
      ensure_dense();
      symbolic_.insert(dense);
    }
    for (std::size_t i = 0; i < numeric_.size(); ++i) {
      if (skip_ok && numeric_[i].rank() >= bound) continue;
      ensure_dense();
      numeric_[i].insert(evaluate_row(dense, sample_points()[i]));
    }
    return true;
  }

  int symbolic_rank() const { return symbolic_.rank(); }
  int numeric_rank(std::size_t i) const { return numeric_[i].rank(); }
  bool kernel_ok() const { return kernel_ok_; }
  std::vector<std::map<int, LaurentPoly>> take_rows() { return std::move(rows_); }

 private:
  std::size_t columns_;
  std::vector<LaurentPoly> pairing_;
  bool keep_;
  std::mutex mu_;
  PolyEliminator symbolic_;
  std::vector<RatEliminator> numeric_;
  std::atomic<bool> kernel_ok_{true};
  std::vector<std::map<int, LaurentPoly>> rows_;
};

}  // namespace

// ---------------------------------------------------------------------------

nlohmann::json RelationCheck::to_json() const {
  nlohmann::json j{{"relation", relation}, {"n", n},           {"mode", exhaustive ? "exhaustive" : "sampled"},
                   {"cases", cases},       {"failures", failures}, {"passed", passed()}};
  if (!witness.empty()) j["witness"] = witness;
  return j;
}

std::vector<BraidLetter> braid_generators(int strands, bool with_twists) {
  std::vector<BraidLetter> out;
  for (int i = 1; i < strands; ++i)
    for (int p : {1, -1}) out.push_back({BraidLetter::Kind::crossing, i, p});
  if (with_twists)
    for (int i = 1; i <= strands; ++i)
      for (int p : {1, -1}) out.push_back({BraidLetter::Kind::twist, i, p});
  return out;
}

namespace {

// out = g^T * c
Dense multiply_transposed(const Dense& g, const Dense& c) {
  const std::size_t k = g.size();
  Dense out(k, std::vector<LaurentPoly>(k));
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t i = 0; i < k; ++i) {
      if (g[l][i].is_zero()) continue;
      for (std::size_t j = 0; j < k; ++j)
        if (!c[l][j].is_zero()) out[i][j] += g[l][i] * c[l][j];
    }
  return out;
}

BraidLetter inverse_letter(const BraidLetter& l) { return {l.kind, l.index, -l.power}; }

struct Tally {
  long cases = 0;
  long failures = 0;
  std::string witness;
};

// Runs body(first_letter_index, tally) over all first letters on `jobs`
// threads and merges the tallies in letter order.
template <class Body>
Tally run_by_first_letter(std::size_t letters, int jobs, Body body) {
  std::vector<Tally> parts(letters);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t li = next++; li < letters; li = next++) body(li, parts[li]);
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  Tally total;
  for (auto& p : parts) {
    total.cases += p.cases;
    total.failures += p.failures;
    if (total.witness.empty()) total.witness = p.witness;
  }
  return total;
}

std::vector<BraidLetter> random_word(std::mt19937_64& rng, const std::vector<BraidLetter>& letters, int max_length) {
  std::uniform_int_distribution<int> len(1, std::max(1, max_length));
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::vector<BraidLetter> word;
  for (int k = len(rng); k > 0; --k) word.push_back(letters[pick(rng)]);
  return word;
}

}  // namespace

RelationCheck verify_braiding(int n, const CheckOptions& options) {
  if (n < 1) throw std::invalid_argument("verify_braiding: n must be at least 1");
  RelationCheck result;
  result.relation = "braiding";
  result.n = n;
  const int strands = 2 * n;
  const auto basis = enumerate_basis(n);
  const std::size_t k = basis.size();
  const auto letters = braid_generators(strands);

  if (n > options.exhaustive_max_n) {
    result.exhaustive = false;
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    for (int t = 0; t < options.samples; ++t) {
      FramedBraidWord w(strands, random_word(rng, letters, options.sample_word_length));
      const auto& a = basis[pick(rng)];
      const auto& b = basis[pick(rng)];
      ++result.cases;
      if (!check_braiding_relation(SkeinVector(a), SkeinVector(b), w)) {
        if (result.failures++ == 0)
          result.witness = "word=" + w.to_string() + " a=" + a.to_string() + " b=" + b.to_string();
      }
    }
    return result;
  }

  Dense pairing(k, std::vector<LaurentPoly>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      pairing[i][j] = loop_value().pow(static_cast<unsigned>(glued_loop_count(basis[i], basis[j])));
  std::vector<Dense> mats, inverse_mats;
  for (const auto& l : letters) {
    mats.push_back(generator_matrix(View::disk, Side::left, n, l)->dense(basis));
    inverse_mats.push_back(generator_matrix(View::disk, Side::left, n, inverse_letter(l))->dense(basis));
  }

  auto tally = run_by_first_letter(letters.size(), options.jobs, [&](std::size_t first, Tally& t) {
    std::vector<BraidLetter> word;
    // c[a][b] = pair(act(w, a), act_far(invert(w), b)); appending g maps c to g^T c g^-1.
    std::function<void(const Dense&, std::size_t, int)> dfs = [&](const Dense& c, std::size_t li, int depth) {
      word.push_back(letters[li]);
      Dense next = multiply(multiply_transposed(mats[li], c), inverse_mats[li]);
      t.cases += static_cast<long>(k * k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (next[i][j] != pairing[i][j] && t.failures++ == 0)
            t.witness = "word=" + FramedBraidWord(strands, word).to_string() + " a=" + basis[i].to_string() +
                        " b=" + basis[j].to_string();
      if (depth < options.word_cutoff)
        for (std::size_t lj = 0; lj < letters.size(); ++lj) dfs(next, lj, depth + 1);
      word.pop_back();
    };
    dfs(pairing, first, 1);
  });
  result.cases = tally.cases;
  result.failures = tally.failures;
  result.witness = tally.witness;
  return result;
}

RelationCheck verify_bigon(int n) {
  if (n < 1) throw std::invalid_argument("verify_bigon: n must be at least 1");
  RelationCheck result;
  result.relation = "bigon";
  result.n = n;
  for (const auto& a : enumerate_basis(n - 1))
    for (const auto& b : enumerate_basis(n))
      for (int i = 1; i <= 2 * n - 1; ++i) {
        ++result.cases;
        if (!check_bigon_relation(SkeinVector(a), SkeinVector(b), i) && result.failures++ == 0)
          result.witness = "i=" + std::to_string(i) + " a=" + a.to_string() + " b=" + b.to_string();
      }
  return result;
}

RelationCheck verify_conjugation(int n, const CheckOptions& options) {
  if (n < 1) throw std::invalid_argument("verify_conjugation: n must be at least 1");
  RelationCheck result;
  result.relation = "conjugation";
  result.n = n;
  const auto basis = enumerate_basis(n);
  const std::size_t k = basis.size();
  const auto letters = braid_generators(n);

  if (n > options.exhaustive_max_n) {
    result.exhaustive = false;
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    for (int t = 0; t < options.samples; ++t) {
      FramedBraidWord w(n, random_word(rng, letters, options.sample_word_length));
      const auto& a = basis[pick(rng)];
      ++result.cases;
      if (!check_conjugation_relation(SkeinVector(a), w) && result.failures++ == 0)
        result.witness = "word=" + w.to_string() + " a=" + a.to_string();
    }
    return result;
  }

  std::vector<AnnularElement> traces;
  for (const auto& m : basis) traces.push_back(annular_trace(SkeinVector(m)));
  std::vector<Dense> left, right_inverse;
  for (const auto& l : letters) {
    left.push_back(generator_matrix(View::rectangle, Side::left, n, l)->dense(basis));
    right_inverse.push_back(generator_matrix(View::rectangle, Side::right, n, inverse_letter(l))->dense(basis));
  }

  auto tally = run_by_first_letter(letters.size(), options.jobs, [&](std::size_t first, Tally& t) {
    std::vector<BraidLetter> word;
    // l = matrix of act(w, .), r = matrix of act_right(., invert(w)).
    std::function<void(const Dense&, const Dense&, std::size_t, int)> dfs =
        [&](const Dense& l, const Dense& r, std::size_t li, int depth) {
          word.push_back(letters[li]);
          Dense nl = multiply(l, left[li]);
          Dense nr = multiply(r, right_inverse[li]);
          Dense conj = multiply(nl, nr);
          for (std::size_t a = 0; a < k; ++a) {
            ++t.cases;
            AnnularElement tr;
            for (std::size_t x = 0; x < k; ++x) {
              if (conj[x][a].is_zero()) continue;
              for (const auto& [deg, c] : traces[x].coefficients()) tr.add_term(deg, conj[x][a] * c);
            }
            if (!(tr == traces[a]) && t.failures++ == 0)
              t.witness = "word=" + FramedBraidWord(n, word).to_string() + " a=" + basis[a].to_string();
          }
          if (depth < options.word_cutoff)
            for (std::size_t lj = 0; lj < letters.size(); ++lj) dfs(nl, nr, lj, depth + 1);
          word.pop_back();
        };
    Dense id(k, std::vector<LaurentPoly>(k));
    for (std::size_t i = 0; i < k; ++i) id[i][i] = LaurentPoly(1);
    dfs(id, id, first, 1);
  });
  result.cases = tally.cases;
  result.failures = tally.failures;
  result.witness = tally.witness;
  return result;
}

int symbolic_rank(const std::vector<std::vector<LaurentPoly>>& rows) {
  PolyEliminator e;
  for (const auto& r : rows) e.insert(r);
  return e.rank();
}

int evaluated_rank(const std::vector<std::vector<LaurentPoly>>& rows, const Rational& a) {
  RatEliminator e;
  for (const auto& r : rows) e.insert(evaluate_row(r, a));
  return e.rank();
}

QuotientReport quotient_report(const QuotientOptions& options) {
  if (options.n_max < 0) throw std::invalid_argument("quotient: negative n");
  if (options.word_cutoff < 1) throw std::invalid_argument("quotient: word cutoff must be at least 1");
  const int jobs = std::max(1, options.jobs);
  QuotientReport report;
  report.n_max = options.n_max;
  report.word_cutoff = options.word_cutoff;

  std::vector<std::vector<Matching>> bases;
  std::vector<int> offset;
  for (int n = 0; n <= options.n_max; ++n) {
    bases.push_back(enumerate_basis(n));
    offset.push_back(static_cast<int>(report.columns.size()));
    for (const auto& a : bases.back())
      for (const auto& b : bases.back()) report.columns.push_back({n, a, b});
  }
  auto column = [&](int n, std::size_t ia, std::size_t ib) {
    return offset[static_cast<std::size_t>(n)] + static_cast<int>(ia * bases[static_cast<std::size_t>(n)].size() + ib);
  };
  std::vector<LaurentPoly> pairing_values;
  for (const auto& col : report.columns)
    pairing_values.push_back(loop_value().pow(static_cast<unsigned>(glued_loop_count(col.a, col.b))));
  RelationSink sink(report.columns.size(), std::move(pairing_values), options.keep_rows);

  // Bigon rows first: few, and they carry most of the rank.
  for (int n = 1; n <= options.n_max; ++n) {
    const auto& lower = bases[static_cast<std::size_t>(n - 1)];
    const auto& upper = bases[static_cast<std::size_t>(n)];
    auto index_of = [](const std::vector<Matching>& basis, const Matching& m) {
      return static_cast<std::size_t>(std::lower_bound(basis.begin(), basis.end(), m) - basis.begin());
    };
    for (std::size_t ia = 0; ia < lower.size(); ++ia)
      for (std::size_t ib = 0; ib < upper.size(); ++ib)
        for (int i = 1; i <= 2 * n - 1; ++i) {
          Matching capped = cap_insert(lower[ia], i);
          auto [contracted, loop] = contract(upper[ib], i);
          LaurentPoly w = loop ? loop_value() : LaurentPoly(1);
          // Bigon on either side of the sphere.
          std::map<int, LaurentPoly> r1, r2;
          r1[column(n, index_of(upper, capped), ib)] += LaurentPoly(1);
          r1[column(n - 1, ia, index_of(lower, contracted))] -= w;
          r2[column(n, ib, index_of(upper, capped))] += LaurentPoly(1);
          r2[column(n - 1, index_of(lower, contracted), ia)] -= w;
          sink.add(r1, report.bigon_rows);
          sink.add(r2, report.bigon_rows);
        }
  }

  // Braiding rows for freely reduced words in the s-generators. Twist letters
  // scale the two sides by -A^3p and -A^-3p, so they never change a row.
  std::atomic<long> words{0};
  for (int n = 1; n <= options.n_max; ++n) {
    const auto& basis = bases[static_cast<std::size_t>(n)];
    const std::size_t k = basis.size();
    std::vector<BraidLetter> letters;
    for (int i = 1; i <= 2 * n - 1; ++i)
      for (int p : {1, -1}) letters.push_back({BraidLetter::Kind::crossing, i, p});
    std::vector<Dense> mats, inverse_mats;
    for (const auto& l : letters) {
      mats.push_back(generator_matrix(View::disk, Side::left, n, l)->dense(basis));
      inverse_mats.push_back(
          generator_matrix(View::disk, Side::left, n, {l.kind, l.index, -l.power})->dense(basis));
    }
    auto inverse_index = [](std::size_t li) { return li ^ 1U; };

    // Braiding rows alone, restricted to this level's block.
    PolyEliminator level_rank;
    std::mutex level_mu;
    const int level_bound = static_cast<int>(k * k) - 1;
    auto emit = [&](const Dense& m1, const Dense& m2) {
      for (std::size_t ia = 0; ia < k; ++ia)
        for (std::size_t ib = 0; ib < k; ++ib) {
          std::map<int, LaurentPoly> row;
          row[column(n, ia, ib)] += LaurentPoly(1);
          for (std::size_t xa = 0; xa < k; ++xa) {
            if (m1[xa][ia].is_zero()) continue;
            for (std::size_t xb = 0; xb < k; ++xb) {
              if (m2[xb][ib].is_zero()) continue;
              auto& e = row[column(n, xa, xb)];
              e -= m1[xa][ia] * m2[xb][ib];
            }
          }
          for (auto it = row.begin(); it != row.end();) it = it->second.is_zero() ? row.erase(it) : std::next(it);
          if (!sink.add(row, report.braiding_rows)) continue;
          std::lock_guard<std::mutex> lock(level_mu);
          if (sink.kernel_ok() && level_rank.rank() >= level_bound) continue;
          PolyRow local(k * k);
          for (const auto& [col, c] : row) local[static_cast<std::size_t>(col - column(n, 0, 0))] = c;
          level_rank.insert(std::move(local));
        }
    };
    std::function<void(const Dense&, const Dense&, std::size_t, int)> dfs =
        [&](const Dense& m1, const Dense& m2, std::size_t last, int depth) {
          ++words;
          emit(m1, m2);
          if (depth == options.word_cutoff) return;
          for (std::size_t li = 0; li < letters.size(); ++li) {
            if (li == inverse_index(last)) continue;
            dfs(multiply(mats[li], m1), multiply(inverse_mats[li], m2), li, depth + 1);
          }
        };
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t li = next++; li < letters.size(); li = next++)
        dfs(mats[li], inverse_mats[li], li, 1);
    };
    if (jobs == 1 || options.keep_rows) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    report.braiding_ranks.push_back(level_rank.rank());
  }
  report.words = words;
  report.rows_in_pairing_kernel = sink.kernel_ok();
  report.relation_rank = sink.symbolic_rank();
  for (std::size_t i = 0; i < sample_points().size(); ++i)
    report.evaluated_ranks.emplace_back(sample_points()[i], sink.numeric_rank(i));
  report.rank = static_cast<int>(report.columns.size()) - report.relation_rank;
  report.rows = sink.take_rows();
  for (const auto& [a, r] : report.evaluated_ranks)
    if (r != report.relation_rank)
      throw InconsistencyError("quotient: rank " + std::to_string(r) + " at A = " + a.str() +
                               " disagrees with symbolic rank " + std::to_string(report.relation_rank));
  return report;
}

int quotient_rank(int n_max, int word_cutoff) {
  QuotientOptions o;
  o.n_max = n_max;
  o.word_cutoff = word_cutoff;
  return quotient_report(o).rank;
}

nlohmann::json QuotientReport::to_json() const {
  nlohmann::json evaluated = nlohmann::json::array();
  for (const auto& [a, r] : evaluated_ranks) evaluated.push_back({{"A", a.str()}, {"rank", r}});
  return {{"model", "two-ball"},
          {"n_max", n_max},
          {"word_cutoff", word_cutoff},
          {"columns", columns.size()},
          {"words", words},
          {"braiding_rows", braiding_rows},
          {"bigon_rows", bigon_rows},
          {"braiding_ranks", braiding_ranks},
          {"rows_in_pairing_kernel", rows_in_pairing_kernel},
          {"relation_rank", relation_rank},
          {"evaluated_ranks", evaluated},
          {"rank", rank}};
}

nlohmann::json QuotientReport::matrix_json() const {
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& c : columns) cols.push_back({{"n", c.n}, {"a", c.a.to_string()}, {"b", c.b.to_string()}});
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [k, c] : r) entries.push_back({k, c.to_json()});
    rs.push_back(entries);
  }
  return {{"columns", cols}, {"rows", rs}};
}

}  // namespace skein

#include "skein/bracket.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <thread>

#include "skein/error.hpp"

namespace skein {

namespace {

using Crossing = TangleDiagram::Crossing;

struct Work {
  std::vector<Crossing> xs;
  std::vector<int> boundary;
  int loops = 0;

  explicit Work(const TangleDiagram& d) : xs(d.crossings()), boundary(d.boundary()), loops(d.closed_loops()) {}

  void rename(int from, int to) {
    for (auto& x : xs)
      for (int& l : x)
        if (l == from) l = to;
    for (int& l : boundary)
      if (l == from) l = to;
  }

  // Deletes crossing c and reconnects the listed slot pairs. Slots not listed
  // must belong to an edge whose other end is also unlisted at c (a kink lobe).
  void remove_crossing(int c, std::initializer_list<std::pair<int, int>> pairs) {
    Crossing x = xs[static_cast<std::size_t>(c)];
    xs.erase(xs.begin() + c);
    for (auto [s, t] : pairs) {
      int keep = x[static_cast<std::size_t>(s)], drop = x[static_cast<std::size_t>(t)];
      if (keep == drop) {
        ++loops;
        continue;
      }
      rename(drop, keep);
      for (int& l : x)
        if (l == drop) l = keep;
    }
  }

  TangleDiagram diagram() const { return TangleDiagram::unchecked(xs, boundary, loops); }
};

class UnionFind {
 public:
  int find(int x) {
    auto it = parent_.find(x);
    if (it == parent_.end() || it->second == x) return x;
    int root = find(it->second);
    parent_[x] = root;
    return root;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[b] = a;
  }

 private:
  std::map<int, int> parent_;
};

void check_crossing_id(const TangleDiagram& d, int c) {
  if (c < 0 || c >= d.crossing_count())
    throw std::out_of_range("crossing id " + std::to_string(c) + " not in diagram with " +
                            std::to_string(d.crossing_count()) + " crossings");
}

// Absorbs every kink, returning the accumulated exponent of -A^3 factors.
int absorb_kinks(Work& w) {
  int twist = 0;
  bool found = true;
  while (found) {
    found = false;
    for (int c = 0; c < static_cast<int>(w.xs.size()); ++c) {
      const Crossing& x = w.xs[static_cast<std::size_t>(c)];
      if (x[0] == x[1]) {
        w.remove_crossing(c, {{2, 3}});
        ++twist;
      } else if (x[2] == x[3]) {
        w.remove_crossing(c, {{0, 1}});
        ++twist;
      } else if (x[1] == x[2]) {
        w.remove_crossing(c, {{3, 0}});
        --twist;
      } else if (x[3] == x[0]) {
        w.remove_crossing(c, {{1, 2}});
        --twist;
      } else {
        continue;
      }
      found = true;
      break;
    }
  }
  return twist;
}

std::vector<int> pairing_of(const std::vector<int>& boundary) {
  std::vector<int> partner(boundary.size(), -1);
  std::map<int, int> first;
  for (int k = 0; k < static_cast<int>(boundary.size()); ++k) {
    auto [it, inserted] = first.try_emplace(boundary[static_cast<std::size_t>(k)], k);
    if (!inserted) {
      partner[static_cast<std::size_t>(k)] = it->second;
      partner[static_cast<std::size_t>(it->second)] = k;
    }
  }
  return partner;
}

std::vector<int> canonical_key(const Work& w) {
  std::map<int, int> relabel;
  auto map_label = [&](int l) { return relabel.try_emplace(l, static_cast<int>(relabel.size())).first->second; };
  std::vector<int> key;
  key.reserve(1 + w.boundary.size() + 4 * w.xs.size());
  key.push_back(static_cast<int>(w.boundary.size()));
  for (int l : w.boundary) key.push_back(map_label(l));
  for (const auto& x : w.xs)
    for (int l : x) key.push_back(map_label(l));
  return key;
}

PairingExpansion scaled(const PairingExpansion& e, const LaurentPoly& f) {
  PairingExpansion out;
  if (f.is_zero()) return out;
  for (const auto& [k, v] : e) out.emplace(k, v * f);
  return out;
}

void accumulate(PairingExpansion& into, const PairingExpansion& e, const LaurentPoly& f) {
  for (const auto& [k, v] : e) {
    auto& slot = into[k];
    slot += v * f;
    if (slot.is_zero()) into.erase(k);
  }
}

class Expander {
 public:
  PairingExpansion run(Work w) {
    const int twist = absorb_kinks(w);
    LaurentPoly factor = LaurentPoly::monomial(twist % 2 == 0 ? 1 : -1, 3 * twist);
    if (w.loops > 0) factor *= loop_value().pow(static_cast<unsigned>(w.loops));
    w.loops = 0;
    if (w.xs.empty()) return {{pairing_of(w.boundary), factor}};

    auto key = canonical_key(w);
    auto it = memo_.find(key);
    if (it == memo_.end()) {
      Work zero = w, inf = w;
      zero.remove_crossing(0, {{0, 1}, {2, 3}});
      inf.remove_crossing(0, {{0, 3}, {1, 2}});
      PairingExpansion sum;
      accumulate(sum, run(std::move(zero)), LaurentPoly::var(1));
      accumulate(sum, run(std::move(inf)), LaurentPoly::var(-1));
      it = memo_.emplace(std::move(key), std::move(sum)).first;
    }
    return scaled(it->second, factor);
  }

 private:
  std::map<std::vector<int>, PairingExpansion> memo_;
};

}  // namespace

TangleDiagram smooth(const TangleDiagram& d, int c, Smoothing s) {
  check_crossing_id(d, c);
  Work w(d);
  if (s == Smoothing::zero) {
    w.remove_crossing(c, {{0, 1}, {2, 3}});
  } else {
    w.remove_crossing(c, {{0, 3}, {1, 2}});
  }
  return w.diagram();
}

std::pair<TangleDiagram, TangleDiagram> resolve_crossing(const TangleDiagram& d, int c) {
  return {smooth(d, c, Smoothing::zero), smooth(d, c, Smoothing::infinity)};
}

PairingExpansion expand_crossings(const TangleDiagram& d) { return Expander().run(Work(d)); }

LaurentPoly kauffman_bracket(const TangleDiagram& d) {
  if (!d.is_closed())
    throw DiagramError("kauffman_bracket needs a closed diagram, got " + std::to_string(d.endpoint_count()) +
                       " endpoints");
  auto e = expand_crossings(d);
  return e.empty() ? LaurentPoly() : e.begin()->second;
}

LaurentPoly state_sum_oracle(const TangleDiagram& d, int jobs, int max_crossings) {
  if (!d.is_closed())
    throw DiagramError("state_sum_oracle needs a closed diagram, got " + std::to_string(d.endpoint_count()) +
                       " endpoints");
  const int c = d.crossing_count();
  if (c > max_crossings)
    throw std::length_error("state_sum_oracle: " + std::to_string(c) + " crossings exceeds bound " +
                            std::to_string(max_crossings));

  // Dense edge ids.
  std::vector<int> labels = d.edge_labels();
  auto dense = [&](int l) {
    return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
  };
  std::vector<std::array<int, 4>> xs;
  for (const auto& x : d.crossings()) xs.push_back({dense(x[0]), dense(x[1]), dense(x[2]), dense(x[3])});
  const int edges = static_cast<int>(labels.size());
  const int max_loops = edges + 1;
  const std::uint64_t states = std::uint64_t{1} << c;

  // counts[(zeros - infs + c) * max_loops + loops]
  const std::size_t table = static_cast<std::size_t>(2 * c + 1) * static_cast<std::size_t>(max_loops);
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::min<std::uint64_t>(states, 64))));
  std::vector<std::vector<std::uint64_t>> counts(static_cast<std::size_t>(jobs), std::vector<std::uint64_t>(table, 0));

  auto work = [&](int job) {
    std::vector<int> parent(static_cast<std::size_t>(edges));
    auto find = [&](int v) {
      while (parent[static_cast<std::size_t>(v)] != v) {
        parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
        v = parent[static_cast<std::size_t>(v)];
      }
      return v;
    };
    auto& local = counts[static_cast<std::size_t>(job)];
    const std::uint64_t begin = states * static_cast<std::uint64_t>(job) / static_cast<std::uint64_t>(jobs);
    const std::uint64_t end = states * static_cast<std::uint64_t>(job + 1) / static_cast<std::uint64_t>(jobs);
    for (std::uint64_t state = begin; state < end; ++state) {
      for (int e = 0; e < edges; ++e) parent[static_cast<std::size_t>(e)] = e;
      int components = edges;
      int zeros = 0;
      for (int i = 0; i < c; ++i) {
        const auto& x = xs[static_cast<std::size_t>(i)];
        const bool zero = ((state >> i) & 1U) == 0;
        zeros += zero ? 1 : 0;
        const int pairs[2][2] = {{x[0], zero ? x[1] : x[3]}, {x[2], zero ? x[3] : x[1]}};
        for (const auto& p : pairs) {
          int a = find(p[0]), b = find(p[1]);
          if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            --components;
          }
        }
      }
      const int exponent = zeros - (c - zeros);
      ++local[static_cast<std::size_t>(exponent + c) * static_cast<std::size_t>(max_loops) +
              static_cast<std::size_t>(components)];
    }
  };

  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int j = 0; j < jobs; ++j) threads.emplace_back(work, j);
    for (auto& t : threads) t.join();
  }

  std::vector<LaurentPoly> delta_pow;
  delta_pow.emplace_back(1);
  for (int l = 1; l <= max_loops + d.closed_loops(); ++l) delta_pow.push_back(delta_pow.back() * loop_value());

  LaurentPoly total;
  for (int e = -c; e <= c; ++e) {
    for (int l = 0; l < max_loops; ++l) {
      std::uint64_t n = 0;
      for (const auto& local : counts)
        n += local[static_cast<std::size_t>(e + c) * static_cast<std::size_t>(max_loops) + static_cast<std::size_t>(l)];
      if (n == 0) continue;
      total += LaurentPoly::monomial(Integer(n), e) * delta_pow[static_cast<std::size_t>(l + d.closed_loops())];
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Reidemeister moves

namespace {

void set_label(std::vector<Crossing>& xs, std::vector<int>& boundary, const Incidence& inc, int label) {
  if (inc.kind == Incidence::Kind::boundary) {
    boundary[static_cast<std::size_t>(inc.index)] = label;
  } else {
    xs[static_cast<std::size_t>(inc.index)][static_cast<std::size_t>(inc.slot)] = label;
  }
}

}  // namespace

TangleDiagram apply_r2(const TangleDiagram& d, const R2Insertion& site) {
  auto fs = faces(d);
  if (site.face < 0 || site.face >= static_cast<int>(fs.size())) throw std::out_of_range("R2: face out of range");
  const auto& face = fs[static_cast<std::size_t>(site.face)];
  const int n = static_cast<int>(face.size());
  if (site.first < 0 || site.first >= n || site.second < 0 || site.second >= n || site.first == site.second)
    throw std::out_of_range("R2: face sides out of range or equal");

  // Faces are traced with the face on the right; flip so it is on the left.
  const EdgeSide& s1 = face[static_cast<std::size_t>(site.first)];
  const EdgeSide& s2 = face[static_cast<std::size_t>(site.second)];
  const Incidence p1 = s1.to, q1 = s1.from, p2 = s2.to, q2 = s2.from;

  const int base = d.max_label();
  const int e1a = base + 1, e1b = base + 2, e1c = base + 3, e2a = base + 4, e2b = base + 5, e2c = base + 6;

  UnionFind uf;
  std::vector<std::pair<Incidence, int>> assigned;
  auto assign = [&](const Incidence& inc, int label) {
    for (const auto& [prev, l] : assigned)
      if (prev == inc) uf.unite(l, label);
    assigned.emplace_back(inc, label);
  };
  assign(p1, e1a);
  assign(q1, e1c);
  assign(p2, e2a);
  assign(q2, e2c);

  auto xs = d.crossings();
  auto boundary = d.boundary();
  for (const auto& [inc, l] : assigned) set_label(xs, boundary, inc, l);
  // Edge 1 runs over edge 2 at both new crossings.
  xs.push_back({e2b, e1b, e2c, e1a});
  xs.push_back({e2a, e1b, e2b, e1c});
  for (auto& x : xs)
    for (int& l : x) l = uf.find(l);
  for (int& l : boundary) l = uf.find(l);
  return TangleDiagram(std::move(xs), std::move(boundary), d.closed_loops());
}

TangleDiagram apply_r2(const TangleDiagram& d, const R2LoopInsertion&) {
  if (d.closed_loops() == 0) throw std::invalid_argument("R2: no crossing-free loop to move");
  const int b = d.max_label();
  auto xs = d.crossings();
  xs.push_back({b + 4, b + 2, b + 1, b + 1});
  xs.push_back({b + 3, b + 2, b + 4, b + 3});
  return TangleDiagram(std::move(xs), d.boundary(), d.closed_loops() - 1);
}

std::vector<R2Removal> r2_removal_sites(const TangleDiagram& d) {
  std::vector<R2Removal> sites;
  for (const auto& face : faces(d)) {
    if (face.size() != 2) continue;
    const auto& u = face[0];
    const auto& v = face[1];
    if (u.from.kind != Incidence::Kind::crossing || u.to.kind != Incidence::Kind::crossing ||
        v.from.kind != Incidence::Kind::crossing || v.to.kind != Incidence::Kind::crossing)
      continue;
    if (u.from.index == u.to.index) continue;
    const bool u_over = u.from.slot % 2 == 1 && u.to.slot % 2 == 1;
    const bool u_under = u.from.slot % 2 == 0 && u.to.slot % 2 == 0;
    const bool v_over = v.from.slot % 2 == 1 && v.to.slot % 2 == 1;
    const bool v_under = v.from.slot % 2 == 0 && v.to.slot % 2 == 0;
    if ((u_over && v_under) || (u_under && v_over)) {
      R2Removal r{std::min(u.from.index, u.to.index), std::max(u.from.index, u.to.index)};
      if (std::find_if(sites.begin(), sites.end(), [&](const R2Removal& s) {
            return s.crossing_a == r.crossing_a && s.crossing_b == r.crossing_b;
          }) == sites.end())
        sites.push_back(r);
    }
  }
  return sites;
}

TangleDiagram apply_r2(const TangleDiagram& d, const R2Removal& site) {
  int a = std::min(site.crossing_a, site.crossing_b), b = std::max(site.crossing_a, site.crossing_b);
  auto sites = r2_removal_sites(d);
  if (std::none_of(sites.begin(), sites.end(), [&](const R2Removal& s) { return s.crossing_a == a && s.crossing_b == b; }))
    throw std::invalid_argument("R2: crossings " + std::to_string(a) + "," + std::to_string(b) +
                                " do not bound a removable bigon");
  Work w(d);
  w.remove_crossing(b, {{0, 2}, {1, 3}});
  w.remove_crossing(a, {{0, 2}, {1, 3}});
  return TangleDiagram(w.xs, w.boundary, w.loops);
}

std::vector<int> r3_sites(const TangleDiagram& d) {
  std::vector<int> sites;
  auto fs = faces(d);
  for (int f = 0; f < static_cast<int>(fs.size()); ++f) {
    const auto& face = fs[static_cast<std::size_t>(f)];
    if (face.size() != 3) continue;
    bool ok = true;
    std::vector<int> ids;
    int mixed = 0;
    for (const auto& s : face) {
      if (s.from.kind != Incidence::Kind::crossing || s.to.kind != Incidence::Kind::crossing) ok = false;
      ids.push_back(s.from.index);
      if (s.from.slot % 2 != s.to.slot % 2) ++mixed;
    }
    std::sort(ids.begin(), ids.end());
    if (!ok || std::unique(ids.begin(), ids.end()) != ids.end() || mixed == 3) continue;
    sites.push_back(f);
  }
  return sites;
}

TangleDiagram apply_r3(const TangleDiagram& d, int face_index) {
  auto sites = r3_sites(d);
  if (std::find(sites.begin(), sites.end(), face_index) == sites.end())
    throw std::invalid_argument("R3: face " + std::to_string(face_index) + " is not a movable triangle");
  const auto face = faces(d)[static_cast<std::size_t>(face_index)];
  const auto& old = d.crossings();
  auto xs = old;
  for (const auto& s : face) {
    const auto v = static_cast<std::size_t>(s.from.index), w = static_cast<std::size_t>(s.to.index);
    const auto sv = static_cast<std::size_t>(s.from.slot), sw = static_cast<std::size_t>(s.to.slot);
    const int outer_v = old[v][(sv + 2) % 4];
    const int outer_w = old[w][(sw + 2) % 4];
    // The strand's crossing order along the triangle side reverses.
    xs[v][(sv + 2) % 4] = s.edge;
    xs[v][sv] = outer_w;
    xs[w][(sw + 2) % 4] = s.edge;
    xs[w][sw] = outer_v;
  }
  return TangleDiagram(std::move(xs), d.boundary(), d.closed_loops());
}

TangleDiagram add_kink(const TangleDiagram& d, int edge, bool positive) {
  auto [first, second] = d.incidences(edge);
  const int lobe = d.max_label() + 1, tail = d.max_label() + 2;
  auto xs = d.crossings();
  auto boundary = d.boundary();
  set_label(xs, boundary, second, tail);
  if (positive) {
    xs.push_back({lobe, lobe, tail, edge});
  } else {
    xs.push_back({edge, lobe, lobe, tail});
  }
  return TangleDiagram(std::move(xs), std::move(boundary), d.closed_loops());
}

TangleDiagram add_kink_on_loop(const TangleDiagram& d, bool positive) {
  if (d.closed_loops() == 0) throw std::invalid_argument("add_kink_on_loop: no crossing-free loop");
  const int lobe = d.max_label() + 1, rest = d.max_label() + 2;
  auto xs = d.crossings();
  if (positive) {
    xs.push_back({lobe, lobe, rest, rest});
  } else {
    xs.push_back({rest, lobe, lobe, rest});
  }
  return TangleDiagram(std::move(xs), d.boundary(), d.closed_loops() - 1);
}

}  // namespace skein

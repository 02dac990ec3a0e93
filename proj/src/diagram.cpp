#include "skein/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "skein/error.hpp"

namespace skein {

namespace {

struct LabelUse {
  int count = 0;
};

// Union-find over arbitrary int keys.
class LabelUnion {
 public:
  int find(int x) {
    auto it = parent_.find(x);
    if (it == parent_.end()) return x;
    int root = find(it->second);
    it->second = root;
    return root;
  }
  // Returns false if already joined.
  bool unite(int keep, int drop) {
    keep = find(keep);
    drop = find(drop);
    if (keep == drop) return false;
    parent_[drop] = keep;
    return true;
  }

 private:
  std::map<int, int> parent_;
};

}  // namespace

void validate_structure(const std::vector<TangleDiagram::Crossing>& crossings,
                        const std::vector<int>& boundary, int closed_loops) {
  if (closed_loops < 0) throw DiagramError("negative loop count");
  if (boundary.size() % 2 != 0) throw DiagramError("odd endpoint count " + std::to_string(boundary.size()));
  std::map<int, int> uses;
  for (int label : boundary) ++uses[label];
  for (const auto& x : crossings)
    for (int label : x) ++uses[label];
  for (const auto& [label, count] : uses) {
    if (label <= 0) throw DiagramError("edge label " + std::to_string(label) + " is not positive");
    if (count != 2)
      throw DiagramError("dangling edge " + std::to_string(label) + ": " + std::to_string(count) +
                         " incidences, expected 2");
  }
}

bool validate_planarity(const std::vector<TangleDiagram::Crossing>& crossings,
                        const std::vector<int>& boundary) {
  // Vertices: crossings, plus one vertex standing for the outside of the disk.
  // Boundary points run counterclockwise around the disk, hence clockwise
  // around the outside vertex.
  const int c = static_cast<int>(crossings.size());
  const int m = static_cast<int>(boundary.size());
  const int dart_count = 4 * c + m;
  if (dart_count == 0) return true;

  auto dart_label = [&](int dart) {
    return dart < 4 * c ? crossings[dart / 4][dart % 4] : boundary[dart - 4 * c];
  };
  auto vertex_of = [&](int dart) { return dart < 4 * c ? dart / 4 : c; };
  auto rot_next = [&](int dart) {
    if (dart < 4 * c) return 4 * (dart / 4) + (dart % 4 + 1) % 4;
    int k = dart - 4 * c;
    return 4 * c + (k - 1 + m) % m;
  };

  std::map<int, std::vector<int>> by_label;
  for (int d = 0; d < dart_count; ++d) by_label[dart_label(d)].push_back(d);
  std::vector<int> twin(static_cast<std::size_t>(dart_count), -1);
  for (const auto& [label, ds] : by_label) {
    if (ds.size() != 2) return false;
    twin[static_cast<std::size_t>(ds[0])] = ds[1];
    twin[static_cast<std::size_t>(ds[1])] = ds[0];
  }

  const int vertex_count = c + (m > 0 ? 1 : 0);
  std::vector<int> parent(static_cast<std::size_t>(vertex_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
    return v;
  };
  for (int d = 0; d < dart_count; ++d) {
    int a = find(vertex_of(d)), b = find(vertex_of(twin[static_cast<std::size_t>(d)]));
    if (a != b) parent[static_cast<std::size_t>(a)] = b;
  }
  int components = 0;
  for (int v = 0; v < vertex_count; ++v)
    if (find(v) == v) ++components;

  std::vector<char> seen(static_cast<std::size_t>(dart_count), 0);
  int face_count = 0;
  for (int d = 0; d < dart_count; ++d) {
    if (seen[static_cast<std::size_t>(d)]) continue;
    ++face_count;
    int cur = d;
    while (!seen[static_cast<std::size_t>(cur)]) {
      seen[static_cast<std::size_t>(cur)] = 1;
      cur = rot_next(twin[static_cast<std::size_t>(cur)]);
    }
  }
  const int edge_count = dart_count / 2;
  return vertex_count - edge_count + face_count == 2 * components;
}

TangleDiagram::TangleDiagram(std::vector<Crossing> crossings, std::vector<int> boundary, int closed_loops)
    : crossings_(std::move(crossings)), boundary_(std::move(boundary)), closed_loops_(closed_loops) {
  validate_structure(crossings_, boundary_, closed_loops_);
  if (!validate_planarity(crossings_, boundary_)) throw DiagramError("diagram is not planar");
}

TangleDiagram TangleDiagram::unchecked(std::vector<Crossing> crossings, std::vector<int> boundary,
                                       int closed_loops) {
  TangleDiagram d;
  d.crossings_ = std::move(crossings);
  d.boundary_ = std::move(boundary);
  d.closed_loops_ = closed_loops;
  return d;
}

std::vector<int> TangleDiagram::edge_labels() const {
  std::vector<int> labels(boundary_.begin(), boundary_.end());
  for (const auto& x : crossings_) labels.insert(labels.end(), x.begin(), x.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

std::pair<Incidence, Incidence> TangleDiagram::incidences(int label) const {
  std::vector<Incidence> found;
  for (std::size_t k = 0; k < boundary_.size(); ++k)
    if (boundary_[k] == label) found.push_back({Incidence::Kind::boundary, static_cast<int>(k), 0});
  for (std::size_t c = 0; c < crossings_.size(); ++c)
    for (int s = 0; s < 4; ++s)
      if (crossings_[c][static_cast<std::size_t>(s)] == label)
        found.push_back({Incidence::Kind::crossing, static_cast<int>(c), s});
  if (found.size() != 2) throw DiagramError("edge " + std::to_string(label) + " not present");
  return {found[0], found[1]};
}

int TangleDiagram::edge_at(const Incidence& inc) const {
  if (inc.kind == Incidence::Kind::boundary) return boundary_.at(static_cast<std::size_t>(inc.index));
  return crossings_.at(static_cast<std::size_t>(inc.index)).at(static_cast<std::size_t>(inc.slot));
}

int TangleDiagram::max_label() const {
  int m = 0;
  for (int l : boundary_) m = std::max(m, l);
  for (const auto& x : crossings_)
    for (int l : x) m = std::max(m, l);
  return m;
}

TangleDiagram TangleDiagram::canonical() const {
  std::map<int, int> relabel;
  auto map_label = [&](int l) {
    auto [it, inserted] = relabel.try_emplace(l, static_cast<int>(relabel.size()) + 1);
    return it->second;
  };
  std::vector<int> b;
  b.reserve(boundary_.size());
  for (int l : boundary_) b.push_back(map_label(l));
  std::vector<Crossing> xs = crossings_;
  for (auto& x : xs)
    for (int& l : x) l = map_label(l);
  return unchecked(std::move(xs), std::move(b), closed_loops_);
}

std::string TangleDiagram::serialize() const {
  std::ostringstream os;
  os << "endpoints " << boundary_.size() << "\n";
  if (closed_loops_ > 0) os << "loops " << closed_loops_ << "\n";
  for (const auto& x : crossings_) os << "X(" << x[0] << "," << x[1] << "," << x[2] << "," << x[3] << ")\n";
  std::vector<char> done(boundary_.size(), 0);
  for (std::size_t k = 0; k < boundary_.size(); ++k) {
    if (done[k]) continue;
    done[k] = 1;
    int label = boundary_[k];
    os << "edge " << label << " b" << (k + 1) << " ";
    std::size_t other = k + 1;
    while (other < boundary_.size() && boundary_[other] != label) ++other;
    if (other < boundary_.size()) {
      done[other] = 1;
      os << "b" << (other + 1) << "\n";
    } else {
      os << "x\n";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Location {
  int line = 0;
  int column = 0;
};

class TangleParser {
 public:
  explicit TangleParser(std::string_view text) : text_(text) {}

  TangleDiagram parse() {
    split_statements();
    for (const auto& st : statements_) parse_statement(st);
    return build();
  }

 private:
  struct Statement {
    std::string text;
    Location loc;
  };
  struct EdgeDecl {
    int id;
    std::vector<std::string> ends;
    Location loc;
  };

  void split_statements() {
    int line = 1;
    std::size_t i = 0;
    while (i <= text_.size()) {
      std::size_t eol = text_.find('\n', i);
      if (eol == std::string_view::npos) eol = text_.size();
      std::string_view raw = text_.substr(i, eol - i);
      std::size_t hash = raw.find('#');
      if (hash != std::string_view::npos) raw = raw.substr(0, hash);
      std::size_t start = 0;
      while (start <= raw.size()) {
        std::size_t semi = raw.find(';', start);
        if (semi == std::string_view::npos) semi = raw.size();
        std::string_view piece = raw.substr(start, semi - start);
        std::size_t lead = 0;
        while (lead < piece.size() && std::isspace(static_cast<unsigned char>(piece[lead]))) ++lead;
        std::size_t trail = piece.size();
        while (trail > lead && std::isspace(static_cast<unsigned char>(piece[trail - 1]))) --trail;
        if (trail > lead)
          statements_.push_back({std::string(piece.substr(lead, trail - lead)),
                                 {line, static_cast<int>(start + lead) + 1}});
        start = semi + 1;
      }
      ++line;
      i = eol + 1;
    }
  }

  [[noreturn]] static void fail(const std::string& msg, Location loc) {
    throw ParseError(msg, loc.line, loc.column);
  }
  [[noreturn]] static void invalid(const std::string& msg, Location loc) {
    throw DiagramError(msg, loc.line, loc.column);
  }

  static int to_int(const std::string& s, Location loc, const char* what) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      fail(std::string("expected ") + what + ", got '" + s + "'", loc);
    if (s.size() > 9) fail(std::string(what) + " too large", loc);
    return std::stoi(s);
  }

  static std::vector<std::string> words(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
  }

  void parse_statement(const Statement& st) {
    const std::string& s = st.text;
    if (s[0] == 'X' && s.size() > 1 && (s[1] == '(' || std::isspace(static_cast<unsigned char>(s[1])))) {
      parse_crossing(st);
      return;
    }
    auto w = words(s);
    const std::string& kw = w[0];
    if (kw == "endpoints") {
      if (w.size() != 2) fail("usage: endpoints <2n>", st.loc);
      if (endpoints_) fail("duplicate endpoints statement", st.loc);
      int k = to_int(w[1], st.loc, "endpoint count");
      if (k % 2 != 0) invalid("odd endpoint count " + std::to_string(k), st.loc);
      endpoints_ = k;
      endpoints_loc_ = st.loc;
    } else if (kw == "loops") {
      if (w.size() != 2) fail("usage: loops <k>", st.loc);
      loops_ += to_int(w[1], st.loc, "loop count");
    } else if (kw == "arc") {
      std::string ends;
      for (std::size_t i = 1; i < w.size(); ++i) ends += w[i];
      auto dash = ends.find('-');
      if (dash == std::string::npos) fail("usage: arc <p>-<q>", st.loc);
      int p = to_int(ends.substr(0, dash), st.loc, "boundary point");
      int q = to_int(ends.substr(dash + 1), st.loc, "boundary point");
      arcs_.push_back({p, q, st.loc});
    } else if (kw == "edge") {
      if (w.size() != 4) fail("usage: edge <id> <end> <end>", st.loc);
      int id = to_int(w[1], st.loc, "edge id");
      if (id <= 0) fail("edge id must be positive", st.loc);
      edges_.push_back({id, {w[2], w[3]}, st.loc});
    } else {
      fail("unknown statement '" + kw + "'", st.loc);
    }
  }

  void parse_crossing(const Statement& st) {
    std::string s;
    for (char ch : st.text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.size() < 3 || s[1] != '(' || s.back() != ')') fail("malformed crossing, expected X(e1,e2,e3,e4)", st.loc);
    std::string body = s.substr(2, s.size() - 3);
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      auto comma = body.find(',', start);
      parts.push_back(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (parts.size() != 4) fail("crossing needs exactly 4 edge labels", st.loc);
    TangleDiagram::Crossing x{};
    for (std::size_t i = 0; i < 4; ++i) {
      x[i] = to_int(parts[i], st.loc, "edge label");
      if (x[i] <= 0) fail("edge labels must be positive", st.loc);
      first_seen_.try_emplace(x[i], st.loc);
    }
    crossings_.push_back(x);
  }

  TangleDiagram build() {
    const int m = endpoints_.value_or(0);
    std::vector<int> boundary(static_cast<std::size_t>(m), 0);
    std::vector<Location> boundary_loc(static_cast<std::size_t>(m));

    auto attach = [&](int point, int label, Location loc) {
      if (point < 1 || point > m)
        invalid("boundary point " + std::to_string(point) + " out of range 1.." + std::to_string(m), loc);
      auto& slot = boundary[static_cast<std::size_t>(point - 1)];
      if (slot != 0) invalid("boundary point " + std::to_string(point) + " attached twice", loc);
      slot = label;
      boundary_loc[static_cast<std::size_t>(point - 1)] = loc;
      first_seen_.try_emplace(label, loc);
    };

    std::map<int, int> crossing_slots;
    for (const auto& x : crossings_)
      for (int l : x) ++crossing_slots[l];

    for (const auto& e : edges_) {
      int x_ends = 0;
      for (const auto& end : e.ends) {
        if (end == "x") {
          ++x_ends;
        } else if (end.size() > 1 && end[0] == 'b') {
          attach(to_int(end.substr(1), e.loc, "boundary point"), e.id, e.loc);
        } else {
          fail("edge end must be b<k> or x, got '" + end + "'", e.loc);
        }
      }
      if (x_ends != crossing_slots[e.id])
        invalid("dangling edge " + std::to_string(e.id) + ": declared with " + std::to_string(x_ends) +
                    " crossing ends but used in " + std::to_string(crossing_slots[e.id]) + " crossing slots",
                e.loc);
    }

    int next_label = 1;
    for (const auto& [l, loc] : first_seen_) next_label = std::max(next_label, l + 1);
    for (const auto& e : edges_) next_label = std::max(next_label, e.id + 1);
    for (const auto& a : arcs_) {
      if (a.p == a.q) invalid("arc endpoints must differ", a.loc);
      int label = next_label++;
      attach(a.p, label, a.loc);
      attach(a.q, label, a.loc);
    }

    for (int k = 0; k < m; ++k)
      if (boundary[static_cast<std::size_t>(k)] == 0)
        invalid("boundary point " + std::to_string(k + 1) + " is not attached to any edge", endpoints_loc_);

    std::map<int, int> uses;
    for (int l : boundary) ++uses[l];
    for (const auto& [l, n] : crossing_slots) uses[l] += n;
    for (const auto& [l, n] : uses)
      if (n != 2)
        invalid("dangling edge " + std::to_string(l) + ": " + std::to_string(n) + " incidences, expected 2",
                first_seen_.count(l) ? first_seen_[l] : Location{});

    if (!validate_planarity(crossings_, boundary))
      invalid("diagram is not planar with the boundary points in the given order",
              statements_.empty() ? Location{} : statements_.front().loc);
    return TangleDiagram::unchecked(std::move(crossings_), std::move(boundary), loops_);
  }

  struct Arc {
    int p, q;
    Location loc;
  };

  std::string_view text_;
  std::vector<Statement> statements_;
  std::optional<int> endpoints_;
  Location endpoints_loc_;
  int loops_ = 0;
  std::vector<Arc> arcs_;
  std::vector<EdgeDecl> edges_;
  std::vector<TangleDiagram::Crossing> crossings_;
  std::map<int, Location> first_seen_;
};

}  // namespace

TangleDiagram parse_tangle(std::string_view text) { return TangleParser(text).parse(); }

// ---------------------------------------------------------------------------
// Diagram operations

TangleDiagram mirror(const TangleDiagram& d) {
  auto xs = d.crossings();
  for (auto& x : xs) x = {x[1], x[2], x[3], x[0]};
  return TangleDiagram::unchecked(std::move(xs), d.boundary(), d.closed_loops());
}

namespace {

TangleDiagram offset_labels(const TangleDiagram& d, int offset) {
  auto xs = d.crossings();
  for (auto& x : xs)
    for (int& l : x) l += offset;
  auto b = d.boundary();
  for (int& l : b) l += offset;
  return TangleDiagram::unchecked(std::move(xs), std::move(b), d.closed_loops());
}

}  // namespace

TangleDiagram disjoint_union(const TangleDiagram& a, const TangleDiagram& b) {
  TangleDiagram shifted = offset_labels(b, a.max_label());
  auto xs = a.crossings();
  xs.insert(xs.end(), shifted.crossings().begin(), shifted.crossings().end());
  auto bd = a.boundary();
  bd.insert(bd.end(), shifted.boundary().begin(), shifted.boundary().end());
  return TangleDiagram(std::move(xs), std::move(bd), a.closed_loops() + b.closed_loops());
}

TangleDiagram connected_sum(const TangleDiagram& a, int ea, const TangleDiagram& b, int eb) {
  if (!a.is_closed() || !b.is_closed()) throw DiagramError("connected_sum needs closed diagrams");
  const int offset = a.max_label();
  TangleDiagram bs = offset_labels(b, offset);
  const int eb_shift = eb + offset;
  auto [i1, j1] = a.incidences(ea);
  auto [i2, j2] = bs.incidences(eb_shift);
  if (i1.kind != Incidence::Kind::crossing || i2.kind != Incidence::Kind::crossing)
    throw DiagramError("connected_sum edge must join crossings");

  for (int attempt = 0; attempt < 2; ++attempt) {
    auto xs = a.crossings();
    auto ys = bs.crossings();
    // a's end j1 now continues into b's edge; b's far end continues into ea.
    xs[static_cast<std::size_t>(j1.index)][static_cast<std::size_t>(j1.slot)] = eb_shift;
    const Incidence& far = attempt == 0 ? j2 : i2;
    ys[static_cast<std::size_t>(far.index)][static_cast<std::size_t>(far.slot)] = ea;
    xs.insert(xs.end(), ys.begin(), ys.end());
    if (validate_planarity(xs, {}))
      return TangleDiagram(std::move(xs), {}, a.closed_loops() + b.closed_loops());
  }
  throw DiagramError("connected_sum produced no planar diagram");
}

TangleDiagram glue(const TangleDiagram& a, const TangleDiagram& b,
                   const std::vector<std::pair<int, int>>& joins,
                   const std::vector<std::pair<int, int>>& outer) {
  const int offset = a.max_label();
  TangleDiagram bs = offset_labels(b, offset);
  auto point_label = [&](int side, int point) {
    const auto& bd = side == 0 ? a.boundary() : bs.boundary();
    if (point < 1 || point > static_cast<int>(bd.size())) throw DiagramError("glue: boundary point out of range");
    return bd[static_cast<std::size_t>(point - 1)];
  };
  std::vector<int> used_a(a.boundary().size(), 0), used_b(b.boundary().size(), 0);
  auto mark = [&](int side, int point) {
    auto& used = side == 0 ? used_a : used_b;
    if (point < 1 || point > static_cast<int>(used.size()) || used[static_cast<std::size_t>(point - 1)]++)
      throw DiagramError("glue: boundary point used twice or out of range");
  };

  LabelUnion uf;
  int loops = a.closed_loops() + b.closed_loops();
  for (auto [pa, pb] : joins) {
    mark(0, pa);
    mark(1, pb);
    if (!uf.unite(point_label(0, pa), point_label(1, pb))) ++loops;
  }
  std::vector<int> boundary;
  for (auto [side, point] : outer) {
    mark(side, point);
    boundary.push_back(uf.find(point_label(side, point)));
  }
  if (std::count(used_a.begin(), used_a.end(), 0) + std::count(used_b.begin(), used_b.end(), 0) != 0)
    throw DiagramError("glue: every boundary point must be joined or listed as outer");

  // Pairs joining two a-points (or two b-points) through the other side are
  // resolved by the union-find above; plain joins need no extra handling.
  std::vector<TangleDiagram::Crossing> xs = a.crossings();
  xs.insert(xs.end(), bs.crossings().begin(), bs.crossings().end());
  for (auto& x : xs)
    for (int& l : x) l = uf.find(l);
  return TangleDiagram(std::move(xs), std::move(boundary), loops);
}

std::vector<std::vector<EdgeSide>> faces(const TangleDiagram& d) {
  const int c = d.crossing_count();
  const int m = d.endpoint_count();
  const int dart_count = 4 * c + m;
  auto incidence_of = [&](int dart) {
    return dart < 4 * c ? Incidence{Incidence::Kind::crossing, dart / 4, dart % 4}
                        : Incidence{Incidence::Kind::boundary, dart - 4 * c, 0};
  };
  auto rot_next = [&](int dart) {
    if (dart < 4 * c) return 4 * (dart / 4) + (dart % 4 + 1) % 4;
    int k = dart - 4 * c;
    return 4 * c + (k - 1 + m) % m;
  };
  std::map<int, std::vector<int>> by_label;
  for (int dart = 0; dart < dart_count; ++dart) by_label[d.edge_at(incidence_of(dart))].push_back(dart);
  std::vector<int> twin(static_cast<std::size_t>(dart_count));
  for (const auto& [label, ds] : by_label) {
    twin[static_cast<std::size_t>(ds[0])] = ds[1];
    twin[static_cast<std::size_t>(ds[1])] = ds[0];
  }
  std::vector<std::vector<EdgeSide>> out;
  std::vector<char> seen(static_cast<std::size_t>(dart_count), 0);
  for (int start = 0; start < dart_count; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<EdgeSide> face;
    int cur = start;
    while (!seen[static_cast<std::size_t>(cur)]) {
      seen[static_cast<std::size_t>(cur)] = 1;
      int t = twin[static_cast<std::size_t>(cur)];
      face.push_back({d.edge_at(incidence_of(cur)), incidence_of(cur), incidence_of(t)});
      cur = rot_next(t);
    }
    out.push_back(std::move(face));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Braid words

FramedBraidWord::FramedBraidWord(int strands, std::vector<BraidLetter> word)
    : strand_count(strands), letters(std::move(word)) {
  if (strand_count < 0) throw InputError("negative strand count");
  for (const auto& l : letters) {
    if (l.power != 1 && l.power != -1) throw InputError("braid letter power must be +1 or -1");
    int hi = l.kind == BraidLetter::Kind::crossing ? strand_count - 1 : strand_count;
    if (l.index < 1 || l.index > hi)
      throw InputError(std::string(l.kind == BraidLetter::Kind::crossing ? "s" : "t") + std::to_string(l.index) +
                       " out of range for " + std::to_string(strand_count) + " strands");
  }
}

std::string FramedBraidWord::to_string() const {
  if (letters.empty()) return "e";
  std::string out;
  for (const auto& l : letters) {
    if (!out.empty()) out += ' ';
    out += l.kind == BraidLetter::Kind::crossing ? 's' : 't';
    out += std::to_string(l.index);
    if (l.power < 0) out += "^-1";
  }
  return out;
}

FramedBraidWord operator*(const FramedBraidWord& w1, const FramedBraidWord& w2) {
  if (w1.strand_count != w2.strand_count) throw InputError("braid strand counts differ");
  FramedBraidWord out = w1;
  out.letters.insert(out.letters.end(), w2.letters.begin(), w2.letters.end());
  return out;
}

FramedBraidWord parse_braid(std::string_view text, int strand_count) {
  std::vector<BraidLetter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const int column = static_cast<int>(i) + 1;
    std::size_t end = i;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string tok(text.substr(i, end - i));
    i = end;
    if (tok == "e") continue;
    if (tok.size() < 2 || (tok[0] != 's' && tok[0] != 't'))
      throw ParseError("unknown braid token '" + tok + "'", 1, column);
    std::size_t pos = 1;
    while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos == 1 || pos - 1 > 6) throw ParseError("unknown braid token '" + tok + "'", 1, column);
    int index = std::stoi(tok.substr(1, pos - 1));
    int power = 1;
    std::string rest = tok.substr(pos);
    if (rest == "^-1") {
      power = -1;
    } else if (!rest.empty() && rest != "^1") {
      throw ParseError("unknown braid token '" + tok + "'", 1, column);
    }
    auto kind = tok[0] == 's' ? BraidLetter::Kind::crossing : BraidLetter::Kind::twist;
    int hi = kind == BraidLetter::Kind::crossing ? strand_count - 1 : strand_count;
    if (index < 1 || index > hi)
      throw ParseError("generator " + tok + " index out of range for " + std::to_string(strand_count) + " strands",
                       1, column);
    letters.push_back({kind, index, power});
  }
  return FramedBraidWord(strand_count, std::move(letters));
}

TangleDiagram braid_to_tangle(const FramedBraidWord& w) {
  const int m = w.strand_count;
  int next = 1;
  std::vector<int> current(static_cast<std::size_t>(m));
  std::vector<int> boundary(static_cast<std::size_t>(2 * m));
  for (int j = 0; j < m; ++j) {
    current[static_cast<std::size_t>(j)] = next++;
    boundary[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j)];
  }
  std::vector<TangleDiagram::Crossing> xs;
  for (const auto& l : w.letters) {
    if (l.kind == BraidLetter::Kind::crossing) {
      auto& left = current[static_cast<std::size_t>(l.index - 1)];
      auto& right = current[static_cast<std::size_t>(l.index)];
      const int p = left, q = right, r = next++, s = next++;
      // Slots counterclockwise; A-smoothing pairs slots (0,1),(2,3).
      if (l.power > 0) {
        xs.push_back({r, p, q, s});
      } else {
        xs.push_back({p, q, s, r});
      }
      left = r;
      right = s;
    } else {
      auto& strand = current[static_cast<std::size_t>(l.index - 1)];
      const int below = strand, above = next++, loop = next++;
      if (l.power > 0) {
        xs.push_back({loop, loop, above, below});
      } else {
        xs.push_back({below, loop, loop, above});
      }
      strand = above;
    }
  }
  for (int j = 0; j < m; ++j) boundary[static_cast<std::size_t>(2 * m - 1 - j)] = current[static_cast<std::size_t>(j)];
  return TangleDiagram(std::move(xs), std::move(boundary), 0);
}

}  // namespace skein

#include "skein/tlskein.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>

#include "skein/bracket.hpp"
#include "skein/error.hpp"

namespace skein {

bool is_noncrossing_matching(const std::vector<int>& partners) {
  const int size = static_cast<int>(partners.size());
  if (size % 2 != 0) return false;
  std::vector<int> stack;
  for (int k = 0; k < size; ++k) {
    int p = partners[static_cast<std::size_t>(k)];
    if (p < 0 || p >= size || p == k || partners[static_cast<std::size_t>(p)] != k) return false;
    if (p > k) {
      stack.push_back(k);
    } else {
      if (stack.empty() || stack.back() != p) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

Matching::Matching(std::vector<int> partners) : partners_(std::move(partners)) {
  if (!is_noncrossing_matching(partners_)) throw std::invalid_argument("not a crossingless matching");
}

Matching Matching::from_pairs(const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> partners(2 * pairs.size(), -1);
  const int size = static_cast<int>(partners.size());
  for (auto [a, b] : pairs) {
    if (a < 1 || b < 1 || a > size || b > size || a == b)
      throw std::invalid_argument("matching point out of range");
    auto& pa = partners[static_cast<std::size_t>(a - 1)];
    auto& pb = partners[static_cast<std::size_t>(b - 1)];
    if (pa != -1 || pb != -1) throw std::invalid_argument("matching point used twice");
    pa = b - 1;
    pb = a - 1;
  }
  return Matching(std::move(partners));
}

std::vector<std::pair<int, int>> Matching::pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(partners_.size() / 2);
  for (int k = 0; k < point_count(); ++k)
    if (partners_[static_cast<std::size_t>(k)] > k) out.emplace_back(k + 1, partners_[static_cast<std::size_t>(k)] + 1);
  return out;
}

std::string Matching::to_string() const {
  std::string s = "{";
  bool first = true;
  for (auto [a, b] : pairs()) {
    if (!first) s += ",";
    first = false;
    s += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  return s + "}";
}

std::strong_ordering Matching::operator<=>(const Matching& other) const {
  // Walk both pair sequences in step without materializing them.
  std::size_t i = 0, j = 0;
  const auto& x = partners_;
  const auto& y = other.partners_;
  while (true) {
    while (i < x.size() && x[i] < static_cast<int>(i)) ++i;
    while (j < y.size() && y[j] < static_cast<int>(j)) ++j;
    const bool ex = i == x.size(), ey = j == y.size();
    if (ex || ey) {
      if (ex && ey) return std::strong_ordering::equal;
      return ex ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (auto c = i <=> j; c != 0) return c;
    if (auto c = x[i] <=> y[j]; c != 0) return c;
    ++i;
    ++j;
  }
}

std::vector<Matching> enumerate_basis(int n) {
  if (n < 0) throw std::invalid_argument("enumerate_basis: negative n");
  std::vector<Matching> out;
  std::vector<int> partners(static_cast<std::size_t>(2 * n), -1);
  // Point k pairs with the first free point and the gap between them
  // must itself be matchable, i.e. have even length.
  std::function<void(int)> rec = [&](int k) {
    while (k < 2 * n && partners[static_cast<std::size_t>(k)] != -1) ++k;
    if (k == 2 * n) {
      out.emplace_back(partners);
      return;
    }
    for (int p = k + 1; p < 2 * n; p += 2) {
      if (partners[static_cast<std::size_t>(p)] != -1) break;
      partners[static_cast<std::size_t>(k)] = p;
      partners[static_cast<std::size_t>(p)] = k;
      rec(k + 1);
      partners[static_cast<std::size_t>(k)] = -1;
      partners[static_cast<std::size_t>(p)] = -1;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

TangleDiagram matching_diagram(const Matching& m) {
  std::vector<int> boundary(static_cast<std::size_t>(m.point_count()));
  int label = 0;
  for (auto [a, b] : m.pairs()) {
    ++label;
    boundary[static_cast<std::size_t>(a - 1)] = label;
    boundary[static_cast<std::size_t>(b - 1)] = label;
  }
  return TangleDiagram::unchecked({}, std::move(boundary), 0);
}

int disk_label(const RectPoint& p, int n) {
  if (p.position < 1 || p.position > n) throw std::out_of_range("rectangle position out of range");
  return p.top ? 2 * n + 1 - p.position : p.position;
}

RectPoint rect_point(int label, int n) {
  if (label < 1 || label > 2 * n) throw std::out_of_range("disk label out of range");
  if (label <= n) return {false, label};
  return {true, 2 * n + 1 - label};
}

Matching rect_identity(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int j = 1; j <= n; ++j) pairs.emplace_back(disk_label({false, j}, n), disk_label({true, j}, n));
  return Matching::from_pairs(pairs);
}

Matching rect_generator(int n, int i) {
  if (i < 1 || i >= n) throw std::out_of_range("rect_generator index out of range");
  std::vector<std::pair<int, int>> pairs;
  for (int j = 1; j <= n; ++j) {
    if (j == i || j == i + 1) continue;
    pairs.emplace_back(disk_label({false, j}, n), disk_label({true, j}, n));
  }
  pairs.emplace_back(disk_label({false, i}, n), disk_label({false, i + 1}, n));
  pairs.emplace_back(disk_label({true, i}, n), disk_label({true, i + 1}, n));
  return Matching::from_pairs(pairs);
}

// ---------------------------------------------------------------------------

SkeinVector::SkeinVector(const Matching& m, LaurentPoly coeff) : n_(m.n()) {
  if (!coeff.is_zero()) terms_.emplace(m, std::move(coeff));
}

LaurentPoly SkeinVector::coeff(const Matching& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? LaurentPoly() : it->second;
}

void SkeinVector::add_term(const Matching& m, const LaurentPoly& c) {
  if (m.n() != n_) throw std::invalid_argument("SkeinVector: matching has wrong size");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SkeinVector& SkeinVector::operator+=(const SkeinVector& rhs) {
  if (rhs.n_ != n_) throw std::invalid_argument("SkeinVector: size mismatch");
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

SkeinVector& SkeinVector::operator-=(const SkeinVector& rhs) {
  if (rhs.n_ != n_) throw std::invalid_argument("SkeinVector: size mismatch");
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

SkeinVector& SkeinVector::operator*=(const LaurentPoly& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

std::string SkeinVector::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    if (c.terms().size() > 1)
      out += "(" + c.to_string() + ")";
    else
      out += c.to_string();
    out += " * " + m.to_string();
  }
  return out;
}

namespace {

class VectorParser {
 public:
  explicit VectorParser(std::string_view s) : s_(s) {}

  SkeinVector parse(std::optional<int> n) {
    skip_ws();
    if (at_end()) fail("empty skein vector");
    if (peek() == '0') {
      std::size_t save = pos_;
      ++pos_;
      skip_ws();
      if (at_end()) return SkeinVector(n.value_or(0));
      pos_ = save;
    }
    std::vector<std::pair<Matching, LaurentPoly>> terms;
    while (true) {
      skip_ws();
      LaurentPoly c(1);
      if (!at_end() && peek() != '{') {
        c = parse_coeff();
        skip_ws();
        expect('*');
      }
      skip_ws();
      terms.emplace_back(parse_matching(), c);
      skip_ws();
      if (at_end()) break;
      expect('+');
    }
    int size = n.value_or(terms.front().first.n());
    SkeinVector v(size);
    for (const auto& [m, cf] : terms) {
      if (m.n() != size) fail("matchings of different sizes");
      v.add_term(m, cf);
    }
    return v;
  }

 private:
  LaurentPoly parse_coeff() {
    std::size_t start = pos_;
    if (peek() == '(') {
      int depth = 0;
      for (; !at_end(); ++pos_) {
        if (peek() == '(') ++depth;
        if (peek() == ')' && --depth == 0) break;
      }
      if (at_end()) fail("unbalanced parenthesis");
      ++pos_;
      return poly(s_.substr(start + 1, pos_ - start - 2), start + 1);
    }
    while (!at_end() && peek() != '*') ++pos_;
    return poly(s_.substr(start, pos_ - start), start);
  }

  LaurentPoly poly(std::string_view text, std::size_t offset) {
    try {
      return LaurentPoly::parse(text);
    } catch (const ParseError& e) {
      throw ParseError("skein vector: bad coefficient '" + std::string(text) + "'", 1,
                       static_cast<int>(offset) + e.column());
    }
  }

  Matching parse_matching() {
    std::size_t start = pos_;
    expect('{');
    std::vector<std::pair<int, int>> pairs;
    skip_ws();
    while (!at_end() && peek() != '}') {
      expect('(');
      int a = parse_int();
      expect(',');
      int b = parse_int();
      expect(')');
      pairs.emplace_back(a, b);
      skip_ws();
      if (!at_end() && peek() == ',') {
        ++pos_;
        skip_ws();
      }
    }
    expect('}');
    try {
      return Matching::from_pairs(pairs);
    } catch (const std::invalid_argument& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  int parse_int() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_ || pos_ - start > 6) fail("expected point label");
    int v = std::stoi(std::string(s_.substr(start, pos_ - start)));
    skip_ws();
    return v;
  }

  void expect(char c) {
    skip_ws();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("skein vector: " + msg, 1, static_cast<int>(pos_) + 1);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

SkeinVector SkeinVector::parse(std::string_view text, std::optional<int> n) {
  return VectorParser(text).parse(n);
}

nlohmann::json SkeinVector::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : terms_) {
    nlohmann::json pairs = nlohmann::json::array();
    for (auto [a, b] : m.pairs()) pairs.push_back({a, b});
    terms.push_back({{"matching", pairs}, {"coeff", c.to_json()}});
  }
  return {{"n", n_}, {"terms", terms}};
}

SkeinVector SkeinVector::from_json(const nlohmann::json& j) {
  try {
    SkeinVector v(j.at("n").get<int>());
    for (const auto& t : j.at("terms")) {
      std::vector<std::pair<int, int>> pairs;
      for (const auto& p : t.at("matching")) pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
      v.add_term(Matching::from_pairs(pairs), LaurentPoly::from_json(t.at("coeff")));
    }
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("skein vector JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("skein vector JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

SkeinVector reduce(const TangleDiagram& d) {
  SkeinVector v(d.arc_count());
  for (auto& [partners, c] : expand_crossings(d)) {
    if (!is_noncrossing_matching(partners)) throw InconsistencyError("reduce produced a crossing matching");
    v.add_term(Matching(partners), c);
  }
  return v;
}

Matching cap_insert(const Matching& m, int i) {
  const int size = m.point_count();
  if (i < 1 || i > size + 1) throw std::out_of_range("cap_insert index out of range");
  auto shift = [&](int p) { return p >= i - 1 ? p + 2 : p; };  // 0-based
  std::vector<int> partners(static_cast<std::size_t>(size + 2));
  for (int k = 0; k < size; ++k) partners[static_cast<std::size_t>(shift(k))] = shift(m.partners()[static_cast<std::size_t>(k)]);
  partners[static_cast<std::size_t>(i - 1)] = i;
  partners[static_cast<std::size_t>(i)] = i - 1;
  return Matching(std::move(partners));
}

SkeinVector cap_insert(const SkeinVector& v, int i) {
  SkeinVector out(v.n() + 1);
  if (i < 1 || i > 2 * v.n() + 1) throw std::out_of_range("cap_insert index out of range");
  for (const auto& [m, c] : v.terms()) out.add_term(cap_insert(m, i), c);
  return out;
}

std::pair<Matching, bool> contract(const Matching& m, int i) {
  const int size = m.point_count();
  if (i < 1 || i >= size) throw std::out_of_range("contract index out of range");
  const int a = i - 1, b = i;  // 0-based points being joined
  auto pa = m.partners()[static_cast<std::size_t>(a)];
  auto pb = m.partners()[static_cast<std::size_t>(b)];
  std::vector<int> partners = m.partners();
  bool loop = pa == b;
  if (!loop) {
    partners[static_cast<std::size_t>(pa)] = pb;
    partners[static_cast<std::size_t>(pb)] = pa;
  }
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size - 2));
  auto shift = [&](int p) { return p > b ? p - 2 : p; };
  for (int k = 0; k < size; ++k)
    if (k != a && k != b) out.push_back(shift(partners[static_cast<std::size_t>(k)]));
  return {Matching(std::move(out)), loop};
}

SkeinVector contract(const SkeinVector& v, int i) {
  if (v.n() < 1 || i < 1 || i >= 2 * v.n()) throw std::out_of_range("contract index out of range");
  SkeinVector out(v.n() - 1);
  for (const auto& [m, c] : v.terms()) {
    auto [r, loop] = contract(m, i);
    out.add_term(r, loop ? c * loop_value() : c);
  }
  return out;
}

std::pair<Matching, int> compose_rect(const Matching& x, const Matching& y) {
  if (x.n() != y.n()) throw std::invalid_argument("compose_rect: size mismatch");
  const int n = x.n();
  const int size = 2 * n;
  // Nodes 0..size-1 are x's points, size..2*size-1 are y's points.
  // x top j is glued to y bottom j.
  auto glued = [&](int node) {
    if (node < size) {
      RectPoint p = rect_point(node + 1, n);
      if (!p.top) return -1;
      return size + disk_label({false, p.position}, n) - 1;
    }
    RectPoint p = rect_point(node - size + 1, n);
    if (p.top) return -1;
    return disk_label({true, p.position}, n) - 1;
  };
  auto matched = [&](int node) {
    return node < size ? x.partners()[static_cast<std::size_t>(node)]
                       : size + y.partners()[static_cast<std::size_t>(node - size)];
  };
  auto outer_label = [&](int node) {  // result label of an unglued node
    if (node < size) return node + 1;
    return disk_label({true, rect_point(node - size + 1, n).position}, n);
  };

  std::vector<char> seen(static_cast<std::size_t>(2 * size), 0);
  std::vector<int> partners(static_cast<std::size_t>(size), -1);
  for (int start = 0; start < 2 * size; ++start) {
    if (seen[static_cast<std::size_t>(start)] || glued(start) != -1) continue;
    int node = start;
    while (true) {
      seen[static_cast<std::size_t>(node)] = 1;
      int other = matched(node);
      seen[static_cast<std::size_t>(other)] = 1;
      int next = glued(other);
      if (next == -1) {
        partners[static_cast<std::size_t>(outer_label(start) - 1)] = outer_label(other) - 1;
        partners[static_cast<std::size_t>(outer_label(other) - 1)] = outer_label(start) - 1;
        break;
      }
      node = next;
    }
  }
  int loops = 0;
  for (int start = 0; start < 2 * size; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    ++loops;
    int node = start;
    while (!seen[static_cast<std::size_t>(node)]) {
      seen[static_cast<std::size_t>(node)] = 1;
      int other = matched(node);
      seen[static_cast<std::size_t>(other)] = 1;
      node = glued(other);
    }
  }
  return {Matching(std::move(partners)), loops};
}

SkeinVector compose_rect(const SkeinVector& x, const SkeinVector& y) {
  if (x.n() != y.n()) throw std::invalid_argument("compose_rect: size mismatch");
  SkeinVector out(x.n());
  for (const auto& [mx, cx] : x.terms())
    for (const auto& [my, cy] : y.terms()) {
      auto [m, loops] = compose_rect(mx, my);
      out.add_term(m, cx * cy * loop_value().pow(static_cast<unsigned>(loops)));
    }
  return out;
}

}  // namespace skein

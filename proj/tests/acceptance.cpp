// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "skein/bracket.hpp"
#include "skein/glue.hpp"
#include "support/testkit.hpp"

using namespace skein;

namespace {

const LaurentPoly A = LaurentPoly::var(1);
const LaurentPoly Ai = LaurentPoly::var(-1);

int jobs() { return std::max(1, static_cast<int>(std::thread::hardware_concurrency())); }

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) note << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

bool run_criterion(int id, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.note << "exception: " << e.what() << "; ";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    o.ok = false;
    o.note << "over time budget " << budget_s << " s; ";
  }
  char t[32];
  std::snprintf(t, sizeof t, "%.2fs", secs);
  std::cout << (o.ok ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << t << ") " << o.note.str() << "\n"
            << std::flush;
  return o.ok;
}

// Every perfect matching of 2n points, keeping the non-crossing ones.
long rejection_count(int n, std::set<std::vector<int>>* keep) {
  std::vector<int> partner(static_cast<std::size_t>(2 * n), -1);
  long count = 0;
  std::function<void()> rec = [&] {
    int first = -1;
    for (int k = 0; k < 2 * n; ++k)
      if (partner[static_cast<std::size_t>(k)] < 0) {
        first = k;
        break;
      }
    if (first < 0) {
      for (int a = 0; a < 2 * n; ++a)
        for (int c = 0; c < 2 * n; ++c) {
          int b = partner[static_cast<std::size_t>(a)], d = partner[static_cast<std::size_t>(c)];
          if (a < c && c < b && b < d) return;
        }
      ++count;
      if (keep) keep->insert(partner);
      return;
    }
    for (int j = first + 1; j < 2 * n; ++j) {
      if (partner[static_cast<std::size_t>(j)] >= 0) continue;
      partner[static_cast<std::size_t>(first)] = j;
      partner[static_cast<std::size_t>(j)] = first;
      rec();
      partner[static_cast<std::size_t>(first)] = partner[static_cast<std::size_t>(j)] = -1;
    }
  };
  rec();
  return count;
}

FramedBraidWord letter_word(int strands, std::initializer_list<BraidLetter> ls) { return FramedBraidWord(strands, ls); }
BraidLetter s(int i, int p = 1) { return {BraidLetter::Kind::crossing, i, p}; }
BraidLetter t(int i, int p = 1) { return {BraidLetter::Kind::twist, i, p}; }

}  // namespace

int main() {
  bool all = true;
  const auto& corpus = testkit::corpus();

  all &= run_criterion(1, "bracket equals state-sum oracle: 20 corpus + 200 random diagrams <= 10 crossings", 60, [&](Outcome& o) {
    o.expect(corpus.size() == 20, "corpus has 20 diagrams");
    for (const auto& e : corpus) {
      auto b = kauffman_bracket(e.diagram);
      o.expect(b == state_sum_oracle(e.diagram, jobs()), e.name);
      o.expect(b == e.expected, e.name + " tabulated value");
    }
    std::mt19937_64 rng(20240607);
    int max_seen = 0, total = 0;
    for (int k = 0; k < 200; ++k) {
      auto d = testkit::random_diagram(rng, 10);
      max_seen = std::max(max_seen, d.crossing_count());
      total += d.crossing_count();
      o.expect(d.crossing_count() <= 10, "crossing bound");
      o.expect(kauffman_bracket(d) == state_sum_oracle(d), d.serialize());
    }
    o.note << "random diagrams: " << total << " crossings in all, largest " << max_seen << "; ";
  });

  all &= run_criterion(2, "skein identity at every corpus crossing, kink factors, 100 R2/R3 instances", 0, [&](Outcome& o) {
    long identities = 0, kinks = 0;
    for (const auto& e : corpus) {
      const auto& d = e.diagram;
      for (int c = 0; c < d.crossing_count(); ++c) {
        auto [d0, dinf] = resolve_crossing(d, c);
        o.expect(e.expected == A * kauffman_bracket(d0) + Ai * kauffman_bracket(dinf), e.name);
        ++identities;
      }
      if (d.crossing_count() > 0) {
        for (int label : d.edge_labels()) {
          o.expect(kauffman_bracket(add_kink(d, label, true)) == positive_kink_value() * e.expected, e.name + " +kink");
          o.expect(kauffman_bracket(add_kink(d, label, false)) == negative_kink_value() * e.expected, e.name + " -kink");
          kinks += 2;
        }
      } else if (d.closed_loops() > 0) {
        o.expect(kauffman_bracket(add_kink_on_loop(d, true)) == positive_kink_value() * e.expected, e.name);
        o.expect(kauffman_bracket(add_kink_on_loop(d, false)) == negative_kink_value() * e.expected, e.name);
        kinks += 2;
      }
    }
    std::mt19937_64 rng(7);
    int r2 = 0, r3 = 0;
    while (r2 + r3 < 100) {
      auto d = testkit::random_diagram(rng, 8);
      auto before = kauffman_bracket(d);
      if ((r2 + r3) % 2 == 0) {
        if (d.crossing_count() == 0 && d.closed_loops() == 0) continue;
        auto grown = testkit::random_r2(rng, d);
        o.expect(kauffman_bracket(grown) == before, "R2 insertion " + d.serialize());
        auto sites = r2_removal_sites(grown);
        o.expect(!sites.empty(), "R2 removal site");
        for (const auto& site : sites) o.expect(kauffman_bracket(apply_r2(grown, site)) == before, "R2 removal");
        ++r2;
      } else {
        auto sites = r3_sites(d);
        if (sites.empty()) continue;
        auto moved = apply_r3(d, sites[static_cast<std::size_t>(testkit::uniform(rng, 0, static_cast<int>(sites.size()) - 1))]);
        o.expect(moved.crossing_count() == d.crossing_count(), "R3 keeps crossings");
        o.expect(kauffman_bracket(moved) == before, "R3 " + d.serialize());
        ++r3;
      }
    }
    o.note << identities << " skein identities, " << kinks << " kinks, " << r2 << " R2 + " << r3 << " R3; ";
  });

  all &= run_criterion(3, "basis counts 1,1,2,5,14,42,132,429,1430 against rejection enumeration", 10, [&](Outcome& o) {
    const long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
    for (int n = 0; n <= 8; ++n) {
      auto basis = enumerate_basis(n);
      std::set<std::vector<int>> kept;
      long rejected = rejection_count(n, n <= 6 ? &kept : nullptr);
      o.expect(static_cast<long>(basis.size()) == catalan[n], "Catalan n=" + std::to_string(n));
      o.expect(rejected == catalan[n], "rejection n=" + std::to_string(n));
      if (n <= 6) {
        std::set<std::vector<int>> ours;
        for (const auto& m : basis) ours.insert(m.partners());
        o.expect(ours == kept, "same matchings n=" + std::to_string(n));
      }
    }
  });

  all &= run_criterion(4, "Temperley-Lieb relations via compose_rect, n <= 5", 0, [&](Outcome& o) {
    for (int n = 1; n <= 5; ++n) {
      auto e = [n](int i) { return SkeinVector(rect_generator(n, i)); };
      SkeinVector id(rect_identity(n));
      for (int i = 1; i < n; ++i) {
        o.expect(compose_rect(e(i), e(i)) == loop_value() * e(i), "e_i^2");
        o.expect(compose_rect(id, e(i)) == e(i) && compose_rect(e(i), id) == e(i), "identity");
        for (int j = 1; j < n; ++j) {
          if (std::abs(i - j) == 1) o.expect(compose_rect(compose_rect(e(i), e(j)), e(i)) == e(i), "e_i e_j e_i");
          if (std::abs(i - j) >= 2) o.expect(compose_rect(e(i), e(j)) == compose_rect(e(j), e(i)), "far commute");
        }
      }
    }
  });

  all &= run_criterion(5, "group action laws on 500 random instances (words <= 8, n <= 4) and braid relations", 0, [&](Outcome& o) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 500; ++k) {
      int n = testkit::uniform(rng, 1, 4);
      int strands = k % 2 == 0 ? 2 * n : n;
      auto sg = testkit::random_word(rng, strands, 8), tau = testkit::random_word(rng, strands, 8);
      auto v = testkit::random_vector(rng, n, 2);
      o.expect(act(sg * tau, v) == act(sg, act(tau, v)), "(st).v = s.(t.v)");
      o.expect(act(FramedBraidWord(strands, {}), v) == v, "e.v = v");
      o.expect(act(invert(sg), act(sg, v)) == v, "inverse");
      if (k % 10 == 0) o.expect(act(sg, v) == act_diagrammatic(sg, v), "matrix vs diagram");
    }
    for (int n = 1; n <= 4; ++n) {
      const int m = 2 * n;
      for (const auto& b : enumerate_basis(n)) {
        SkeinVector v(b);
        for (int i = 1; i < m; ++i) {
          o.expect(act(letter_word(m, {s(i), s(i, -1)}), v) == v, "s s^-1");
          if (i + 1 < m)
            o.expect(act(letter_word(m, {s(i), s(i + 1), s(i)}), v) == act(letter_word(m, {s(i + 1), s(i), s(i + 1)}), v),
                     "braid relation");
          for (int j = i + 2; j < m; ++j)
            o.expect(act(letter_word(m, {s(i), s(j)}), v) == act(letter_word(m, {s(j), s(i)}), v), "far commutation");
          for (int k = 1; k <= m; ++k)
            if (k != i && k != i + 1)
              o.expect(act(letter_word(m, {t(k), s(i)}), v) == act(letter_word(m, {s(i), t(k)}), v), "twist commutation");
        }
      }
    }
  });

  all &= run_criterion(6, "braiding relation: exhaustive n <= 3 (words <= 4), 500 sampled at n = 4", 300, [&](Outcome& o) {
    CheckOptions opt;
    opt.jobs = jobs();
    opt.word_cutoff = 4;
    opt.exhaustive_max_n = 3;
    opt.samples = 500;
    for (int n = 1; n <= 4; ++n) {
      auto r = verify_braiding(n, opt);
      o.expect(r.passed(), "n=" + std::to_string(n) + " " + r.witness);
      o.expect(r.exhaustive == (n <= 3), "mode");
      o.expect(n <= 3 || r.cases == 500, "sample count");
      o.note << "n=" << n << ":" << r.cases << " ";
    }
    // The exhaustive run carries matrices along the word tree; spot-check it
    // against the plain single-instance check.
    std::mt19937_64 rng(6);
    for (int k = 0; k < 200; ++k) {
      int n = testkit::uniform(rng, 1, 3);
      auto basis = enumerate_basis(n);
      auto pick = [&] { return SkeinVector(basis[static_cast<std::size_t>(testkit::uniform(rng, 0, static_cast<int>(basis.size()) - 1))]); };
      o.expect(check_braiding_relation(pick(), pick(), testkit::random_word(rng, 2 * n, 4)), "direct check");
    }
    o.note << "cases; ";
  });

  all &= run_criterion(7, "bigon relation exhaustive for n <= 4, all positions", 0, [&](Outcome& o) {
    for (int n = 1; n <= 4; ++n) {
      auto r = verify_bigon(n);
      o.expect(r.passed() && r.exhaustive, "n=" + std::to_string(n) + " " + r.witness);
      o.note << "n=" << n << ":" << r.cases << " ";
    }
    o.note << "cases; ";
  });

  all &= run_criterion(8, "split witness: pair(reduce(x), reduce(y)) equals the bracket on the corpus", 0, [&](Outcome& o) {
    for (const auto& e : corpus) {
      auto [x, y] = split_diagram(e.diagram);
      o.expect(x.crossing_count() + y.crossing_count() == e.diagram.crossing_count(), e.name + " crossings");
      o.expect(pair(reduce(x), reduce(y)) == e.expected, e.name);
    }
  });

  all &= run_criterion(9, "conjugation relation exhaustive n <= 3 (words <= 4); trace cyclicity n <= 4", 0, [&](Outcome& o) {
    CheckOptions opt;
    opt.jobs = jobs();
    opt.word_cutoff = 4;
    opt.exhaustive_max_n = 3;
    for (int n = 1; n <= 3; ++n) {
      auto r = verify_conjugation(n, opt);
      o.expect(r.passed() && r.exhaustive, "n=" + std::to_string(n) + " " + r.witness);
      o.note << "n=" << n << ":" << r.cases << " ";
    }
    long pairs = 0;
    for (int n = 1; n <= 4; ++n) {
      auto basis = enumerate_basis(n);
      for (const auto& x : basis)
        for (const auto& y : basis) {
          SkeinVector vx(x), vy(y);
          o.expect(annular_trace(compose_rect(vx, vy)) == annular_trace(compose_rect(vy, vx)), x.to_string() + y.to_string());
          ++pairs;
        }
    }
    o.note << "cases; " << pairs << " cyclicity pairs; ";
  });

  all &= run_criterion(10, "quotient rank 1 for N = 0, 1, 2 at word cutoffs 4 and 6, evaluated ranks agree", 300, [&](Outcome& o) {
    for (int cutoff : {4, 6}) {
      for (int N = 0; N <= 2; ++N) {
        QuotientOptions q;
        q.n_max = N;
        q.word_cutoff = cutoff;
        q.jobs = jobs();
        auto r = quotient_report(q);
        std::string tag = "N=" + std::to_string(N) + " cutoff=" + std::to_string(cutoff);
        o.expect(r.rank == 1, tag + " rank " + std::to_string(r.rank));
        o.expect(r.evaluated_ranks.size() == 2, tag + " two evaluation points");
        for (const auto& [a, k] : r.evaluated_ranks) o.expect(k == r.relation_rank, tag + " at A=" + a.str());
        o.expect(r.rows_in_pairing_kernel, tag + " rows pair to zero");
        o.note << tag << ":" << r.rank << " ";
      }
    }
  });

  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << "\n";
  return all ? 0 : 1;
}

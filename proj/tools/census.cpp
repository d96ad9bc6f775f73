// Enumerates virtual knots by classical crossing number and writes a knot
// table, a slice list and slicing movies.
//
// Diagrams with n chords are grouped by r3 moves and the symmetry group.
// Groups containing an r1/r2-reducible diagram are dropped. Groups are then
// merged when a stabilization (one r1+ or r2+, r3 moves, then r1-/r2- back
// down to n chords) connects them; groups that reach a smaller diagram this
// way are dropped too. Every theta = 0 class is then offered a one-saddle
// slicing search.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "vkslice/cobordism.hpp"
#include "vkslice/graded.hpp"
#include "vkslice/invariants.hpp"

using namespace vkslice;

namespace {

std::vector<std::string> all_codes(int n) {
  std::set<std::string> out;
  std::vector<int> match(static_cast<std::size_t>(2 * n), -1);
  std::function<void()> place = [&] {
    int i = 0;
    while (i < 2 * n && match[static_cast<std::size_t>(i)] >= 0) ++i;
    if (i == 2 * n) {
      std::vector<std::pair<int, int>> pairs;
      for (int a = 0; a < 2 * n; ++a)
        if (match[static_cast<std::size_t>(a)] > a) pairs.emplace_back(a, match[static_cast<std::size_t>(a)]);
      for (int dir = 0; dir < (1 << n); ++dir) {
        for (int sg = 0; sg < (1 << n); ++sg) {
          std::vector<Endpoint> w(static_cast<std::size_t>(2 * n));
          std::vector<Chord> chords;
          for (int k = 0; k < n; ++k) {
            const bool flip = (dir >> k) & 1;
            w[static_cast<std::size_t>(pairs[static_cast<std::size_t>(k)].first)] = {k + 1, flip ? End::head : End::tail};
            w[static_cast<std::size_t>(pairs[static_cast<std::size_t>(k)].second)] = {k + 1, flip ? End::tail : End::head};
            chords.push_back({k + 1, ((sg >> k) & 1) ? -1 : 1});
          }
          out.insert(emit_canonical_code(GaussDiagram({w}, chords)));
        }
      }
      return;
    }
    for (int j = i + 1; j < 2 * n; ++j) {
      if (match[static_cast<std::size_t>(j)] >= 0) continue;
      match[static_cast<std::size_t>(i)] = j;
      match[static_cast<std::size_t>(j)] = i;
      place();
      match[static_cast<std::size_t>(i)] = match[static_cast<std::size_t>(j)] = -1;
    }
  };
  place();
  return {out.begin(), out.end()};
}

struct Group {
  std::vector<std::string> members;
  bool reducible = false;
};

struct Census {
  std::vector<Group> groups;
  std::unordered_map<std::string, int> group_of;
};

Census r3_groups(int n) {
  Census c;
  for (const auto& code : all_codes(n)) {
    if (c.group_of.contains(code)) continue;
    const int id = static_cast<int>(c.groups.size());
    Group g;
    std::queue<std::string> todo;
    todo.push(code);
    c.group_of[code] = id;
    while (!todo.empty()) {
      const auto cur = todo.front();
      todo.pop();
      g.members.push_back(cur);
      const auto d = parse_gauss_code(cur);
      if (simplify(d).chord_count() < n) g.reducible = true;
      std::vector<GaussDiagram> next;
      for (const auto& t : r3_candidates(d)) next.push_back(apply_move(d, {MoveKind::r3, t, {}}));
      for (auto s : Symmetry::all()) next.push_back(apply_symmetry(d, s));
      for (const auto& e : next) {
        auto key = emit_canonical_code(e);
        if (c.group_of.emplace(key, id).second) todo.push(std::move(key));
      }
    }
    std::sort(g.members.begin(), g.members.end());
    c.groups.push_back(std::move(g));
  }
  return c;
}

void descend(const GaussDiagram& d, int target, std::set<std::string>& out) {
  if (d.chord_count() <= target) {
    out.insert(emit_canonical_code(d));
    return;
  }
  for (const auto& x : d.chords()) {
    if (r1_removable(d, x.id)) descend(apply_move(d, {MoveKind::r1_minus, {x.id}, {}}), target, out);
    for (const auto& y : d.chords()) {
      if (x.id < y.id && r2_removable(d, x.id, y.id)) {
        descend(apply_move(d, {MoveKind::r2_minus, {x.id, y.id}, {}}), target, out);
      }
    }
  }
}

std::vector<GaussDiagram> stabilizations(const GaussDiagram& d) {
  std::vector<GaussDiagram> out;
  const int len = static_cast<int>(d.circle(0).size());
  for (int i = 0; i <= len; ++i) {
    for (int sign : {1, -1}) {
      for (bool tail_first : {true, false}) {
        MoveSpec kink{MoveKind::r1_plus, {}, {{0, i}}, sign, tail_first, false};
        out.push_back(apply_move(d, kink));
        for (int j = 0; j <= len; ++j) {
          for (bool anti : {false, true}) {
            MoveSpec pair{MoveKind::r2_plus, {}, {{0, i}, {0, j}}, sign, tail_first, anti};
            out.push_back(apply_move(d, pair));
          }
        }
      }
    }
  }
  return out;
}

struct Knot {
  std::string code;
  std::vector<std::string> members;
  int theta = 0;
  std::optional<Movie> slicing;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<Knot> classify(int n, int depth) {
  Census c = r3_groups(n);
  UnionFind uf(c.groups.size());
  std::vector<bool> dead(c.groups.size(), false);
  for (std::size_t g = 0; g < c.groups.size(); ++g) {
    if (c.groups[g].reducible) continue;
    for (const auto& m : c.groups[g].members) {
      for (const auto& start : stabilizations(parse_gauss_code(m))) {
        std::set<std::string> seen{emit_canonical_code(start)};
        std::vector<std::string> frontier(seen.begin(), seen.end());
        for (int k = 0; k < depth && !frontier.empty(); ++k) {
          std::vector<std::string> next;
          for (const auto& f : frontier) {
            const auto fd = parse_gauss_code(f);
            for (const auto& t : r3_candidates(fd)) {
              auto key = emit_canonical_code(apply_move(fd, {MoveKind::r3, t, {}}));
              if (seen.insert(key).second) next.push_back(std::move(key));
            }
          }
          frontier = std::move(next);
        }
        for (const auto& s : seen) {
          std::set<std::string> low;
          descend(parse_gauss_code(s), n, low);
          for (const auto& l : low) {
            if (parse_gauss_code(l).chord_count() < n) {
              dead[g] = true;
            } else {
              uf.unite(static_cast<std::size_t>(c.group_of.at(l)), g);
            }
          }
        }
      }
    }
  }
  std::map<std::size_t, Knot> by_root;
  std::set<std::size_t> dead_roots;
  for (std::size_t g = 0; g < c.groups.size(); ++g) {
    const auto root = uf.find(g);
    if (c.groups[g].reducible || dead[g]) dead_roots.insert(root);
    auto& k = by_root[root];
    k.members.insert(k.members.end(), c.groups[g].members.begin(), c.groups[g].members.end());
  }
  std::vector<Knot> knots;
  for (auto& [root, k] : by_root) {
    if (dead_roots.contains(root)) continue;
    std::sort(k.members.begin(), k.members.end());
    k.theta = graded_genus(parse_gauss_code(k.members.front()));
    knots.push_back(std::move(k));
  }
  return knots;
}

// Orders codes by chord label sequence, then over/under pattern, then signs
// with '-' first.
std::string order_key(const std::string& code) {
  std::string labels, passes, signs;
  for (std::size_t i = 0; i < code.size(); ++i) {
    const char ch = code[i];
    if (ch == 'O' || ch == 'U') {
      passes += ch;
    } else if (ch == '+' || ch == '-') {
      signs += ch == '-' ? '0' : '1';
    } else {
      labels += ch;
    }
  }
  return labels + "|" + passes + "|" + signs;
}

std::string representative(const std::vector<std::string>& members) {
  std::string best, best_key;
  for (const auto& m : members) {
    if (m.front() != 'O') continue;
    auto key = order_key(m);
    if (best.empty() || key < best_key) {
      best = m;
      best_key = std::move(key);
    }
  }
  return best.empty() ? members.front() : best;
}

// Breadth-first search for a sequence of r1-, r2- and r3 moves that removes
// every chord.
std::optional<std::vector<MovieEvent>> trivialize(const GaussDiagram& start, std::size_t max_nodes) {
  struct Node {
    GaussDiagram d;
    int parent;
    MoveSpec move;
  };
  std::vector<Node> nodes{{start, -1, {}}};
  std::unordered_set<std::string> seen{emit_code(start)};
  for (std::size_t at = 0; at < nodes.size() && nodes.size() < max_nodes; ++at) {
    if (nodes[at].d.chord_count() == 0) {
      std::vector<MovieEvent> path;
      for (int k = static_cast<int>(at); nodes[static_cast<std::size_t>(k)].parent >= 0;
           k = nodes[static_cast<std::size_t>(k)].parent) {
        path.push_back(MoveEvent{nodes[static_cast<std::size_t>(k)].move});
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    const GaussDiagram d = nodes[at].d;
    std::vector<MoveSpec> moves;
    for (const auto& x : d.chords()) {
      if (r1_removable(d, x.id)) moves.push_back({MoveKind::r1_minus, {x.id}, {}});
      for (const auto& y : d.chords())
        if (x.id < y.id && r2_removable(d, x.id, y.id)) moves.push_back({MoveKind::r2_minus, {x.id, y.id}, {}});
    }
    for (const auto& t : r3_candidates(d)) moves.push_back({MoveKind::r3, t, {}});
    for (const auto& m : moves) {
      auto e = apply_move(d, m);
      if (seen.insert(emit_code(e)).second) nodes.push_back({std::move(e), static_cast<int>(at), m});
    }
  }
  return std::nullopt;
}

std::optional<Movie> find_slicing(const Knot& k, std::size_t max_nodes) {
  for (const auto& code : k.members) {
    const auto d = parse_gauss_code(code);
    const int len = static_cast<int>(d.circle(0).size());
    for (int i = 0; i < len; ++i) {
      for (int j = i + 1; j < len; ++j) {
        const auto link = saddle(d, {0, i}, {0, j});
        auto path = trivialize(link, max_nodes);
        if (!path) continue;
        Movie m{code, {SaddleEvent{{0, i}, {0, j}}}};
        m.events.insert(m.events.end(), path->begin(), path->end());
        m.events.push_back(DeathEvent{1});
        if (verify_movie(m).slice()) return m;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate virtual knots and search for slicings"};
  int max_n = 4;
  int depth = 8;
  std::size_t max_nodes = 4000;
  std::string out_dir = "data/census";
  app.add_option("-n,--max-crossings", max_n, "largest chord count")->check(CLI::Range(2, 5));
  app.add_option("--depth", depth, "r3 steps after each stabilization");
  app.add_option("--max-nodes", max_nodes, "search budget per saddle");
  app.add_option("-o,--out", out_dir, "output directory");
  CLI11_PARSE(app, argc, argv);

  namespace fs = std::filesystem;
  fs::create_directories(fs::path(out_dir) / "movies");
  std::ofstream table(fs::path(out_dir) / "knots.txt");
  std::ofstream slices(fs::path(out_dir) / "slice_list.txt");
  table << "# name code\n";
  slices << "# knots sliced by the movie of the same name\n";

  for (int n = 2; n <= max_n; ++n) {
    auto knots = classify(n, depth);
    for (auto& k : knots) {
      if (k.theta == 0 && !classical_diagram(parse_gauss_code(k.members.front()))) k.slicing = find_slicing(k, max_nodes);
      k.code = k.slicing ? k.slicing->code : representative(k.members);
    }
    std::sort(knots.begin(), knots.end(),
              [](const Knot& a, const Knot& b) { return order_key(a.code) < order_key(b.code); });
    int sliced = 0;
    int theta_zero = 0;
    for (std::size_t i = 0; i < knots.size(); ++i) {
      const auto& k = knots[i];
      const std::string name = "c" + std::to_string(n) + "." + std::to_string(i + 1);
      table << name << '\t' << k.code << '\n';
      theta_zero += k.theta == 0;
      if (!k.slicing) continue;
      ++sliced;
      slices << name << '\t' << k.code << '\n';
      std::ofstream movie(fs::path(out_dir) / "movies" / (name + ".movie"));
      movie << format_movie(*k.slicing);
    }
    std::cerr << n << " crossings: " << knots.size() << " knots, " << theta_zero << " with theta = 0, " << sliced
              << " sliced by one saddle\n";
  }
}

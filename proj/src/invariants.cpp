#include "vkslice/invariants.hpp"

#include <array>
#include <numeric>
#include <string>
#include <vector>

#include "vkslice/graded.hpp"

namespace vkslice {

namespace {

void require_knot(const GaussDiagram& d, const char* what) {
  if (!d.is_knot()) throw DiagramError(std::string(what) + " needs a single-circle diagram");
}

int mod(int a, int n) { return ((a % n) + n) % n; }

// Strictly inside the counterclockwise arc from `from` to `to`.
bool inside(int p, int from, int to, int len) {
  const int off = mod(p - from, len);
  return off > 0 && off < mod(to - from, len);
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[static_cast<std::size_t>(a)] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

struct ChordPositions {
  int tail;
  int head;
  int sign;
};

std::vector<ChordPositions> positions(const GaussDiagram& d) {
  std::map<int, ChordPositions> by_id;
  const auto& word = d.circle(0);
  for (int i = 0; i < static_cast<int>(word.size()); ++i) {
    auto& cp = by_id[word[static_cast<std::size_t>(i)].chord];
    (word[static_cast<std::size_t>(i)].end == End::tail ? cp.tail : cp.head) = i;
  }
  std::vector<ChordPositions> out;
  for (auto& [id, cp] : by_id) {
    cp.sign = d.sign(id);
    out.push_back(cp);
  }
  return out;
}

// Segment i runs from position i to position i+1. Node 2i is its start,
// node 2i+1 its finish. `oriented[k]` selects the smoothing at chord k.
int count_loops(const std::vector<ChordPositions>& chords, int len, const std::vector<bool>& oriented) {
  if (len == 0) return 1;
  UnionFind uf(2 * len);
  int components = 2 * len;
  auto join = [&](int a, int b) {
    if (uf.unite(a, b)) --components;
  };
  for (int i = 0; i < len; ++i) join(2 * i, 2 * i + 1);
  for (std::size_t k = 0; k < chords.size(); ++k) {
    const int p = chords[k].tail;
    const int q = chords[k].head;
    const int in_p = 2 * mod(p - 1, len) + 1, out_p = 2 * p;
    const int in_q = 2 * mod(q - 1, len) + 1, out_q = 2 * q;
    if (oriented[k]) {
      join(in_p, out_q);
      join(in_q, out_p);
    } else {
      join(in_p, in_q);
      join(out_p, out_q);
    }
  }
  return components;
}

}  // namespace

int index(const GaussDiagram& d, int chord) {
  require_knot(d, "index");
  const auto& word = d.circle(0);
  const int len = static_cast<int>(word.size());
  const int a = d.locate(chord, End::tail).index;
  const int b = d.locate(chord, End::head).index;
  std::map<int, std::array<int, 2>> ends;
  for (int i = 0; i < len; ++i) {
    ends[word[static_cast<std::size_t>(i)].chord][word[static_cast<std::size_t>(i)].end == End::tail ? 0 : 1] = i;
  }
  int ind = 0;
  for (const auto& [id, pos] : ends) {
    if (id == chord) continue;
    const bool tail_left = inside(pos[0], a, b, len);
    const bool head_left = inside(pos[1], a, b, len);
    if (tail_left == head_left) continue;
    // left-to-right counts toward r, right-to-left toward l
    ind += (tail_left ? 1 : -1) * d.sign(id);
  }
  return ind;
}

std::map<int, int> indices(const GaussDiagram& d) {
  std::map<int, int> out;
  for (const auto& ch : d.chords()) out[ch.id] = index(d, ch.id);
  return out;
}

int odd_writhe(const GaussDiagram& d) {
  int j = 0;
  for (const auto& [id, ind] : indices(d)) {
    if (ind % 2 != 0) j += d.sign(id);
  }
  return j;
}

LaurentPoly writhe_polynomial(const GaussDiagram& d) {
  LaurentPoly w;
  for (const auto& [id, ind] : indices(d)) {
    if (ind != 0) w.add_term(ind, d.sign(id));
  }
  return w;
}

LaurentPoly henrich_turaev(const GaussDiagram& d) {
  LaurentPoly p;
  for (const auto& [id, ind] : indices(d)) {
    if (ind != 0) p.add_term(ind < 0 ? -ind : ind, d.sign(id));
  }
  return p;
}

int writhe(const GaussDiagram& d) {
  int w = 0;
  for (const auto& ch : d.chords()) w += ch.sign;
  return w;
}

LaurentPoly kauffman_bracket(const GaussDiagram& d) {
  require_knot(d, "kauffman_bracket");
  const auto chords = positions(d);
  const int n = static_cast<int>(chords.size());
  const int len = static_cast<int>(d.circle(0).size());
  if (n > 30) throw DiagramError("kauffman_bracket: too many chords for a state sum");

  // loops -> sum of A^(#A - #B); the loop factor is applied afterwards.
  std::map<int, LaurentPoly> by_loops;
  std::vector<bool> oriented(static_cast<std::size_t>(n));
  for (std::uint64_t state = 0; state < (std::uint64_t{1} << n); ++state) {
    int a_minus_b = 0;
    for (int k = 0; k < n; ++k) {
      const bool a_smoothing = ((state >> k) & 1U) != 0;
      a_minus_b += a_smoothing ? 1 : -1;
      // A-smoothing is the oriented one at a positive crossing.
      oriented[static_cast<std::size_t>(k)] = a_smoothing == (chords[static_cast<std::size_t>(k)].sign > 0);
    }
    by_loops[count_loops(chords, len, oriented)].add_term(a_minus_b, 1);
  }

  const LaurentPoly loop = LaurentPoly::monomial(2, -1) + LaurentPoly::monomial(-2, -1);
  LaurentPoly bracket;
  for (const auto& [loops, sum] : by_loops) {
    LaurentPoly term = sum;
    for (int i = 1; i < loops; ++i) term *= loop;
    bracket += term;
  }
  return bracket;
}

LaurentPoly f_polynomial(const GaussDiagram& d) {
  const int w = writhe(d);
  // (-A^3)^(-w) = (-1)^w A^(-3w)
  const LaurentPoly norm = LaurentPoly::monomial(-3 * w, (w % 2 == 0) ? 1 : -1);
  return norm * kauffman_bracket(d);
}

int seifert_circles(const GaussDiagram& d) {
  require_knot(d, "seifert_circles");
  const auto chords = positions(d);
  return count_loops(chords, static_cast<int>(d.circle(0).size()), std::vector<bool>(chords.size(), true));
}

int dkk_slice_genus(const GaussDiagram& d) {
  require_knot(d, "dkk_slice_genus");
  if (!d.one_signed()) throw DiagramError("dkk_slice_genus: chords of mixed sign");
  const int v = d.chord_count() - seifert_circles(d) + 1;
  if (v % 2 != 0 || v < 0) throw std::logic_error("dkk_slice_genus: non-integral genus " + std::to_string(v) + "/2");
  return v / 2;
}

bool is_flat_planar(const GaussDiagram& d) {
  require_knot(d, "is_flat_planar");
  return graded_matrix(d).beta.is_zero();
}

}  // namespace vkslice

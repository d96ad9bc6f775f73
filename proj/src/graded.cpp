#include "vkslice/graded.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace vkslice {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

bool inside(int p, int from, int to, int len) {
  const int off = mod(p - from, len);
  return off > 0 && off < mod(to - from, len);
}

}  // namespace

GradedMatrix graded_matrix(const GaussDiagram& d) {
  if (!d.is_knot()) throw DiagramError("graded_matrix needs a single-circle diagram");
  const auto order = d.chords_in_code_order();
  const int n = static_cast<int>(order.size());
  const int len = static_cast<int>(d.circle(0).size());

  std::map<int, int> row_of;
  for (int i = 0; i < n; ++i) row_of[order[static_cast<std::size_t>(i)]] = i;
  // flat tail / head positions per chord, negative arrows reversed
  std::vector<int> ft(static_cast<std::size_t>(n)), fh(static_cast<std::size_t>(n));
  for (int p = 0; p < len; ++p) {
    const auto& e = d.circle(0)[static_cast<std::size_t>(p)];
    const auto k = static_cast<std::size_t>(row_of.at(e.chord));
    const bool flat_tail = (e.end == End::tail) == (d.sign(e.chord) > 0);
    (flat_tail ? ft[k] : fh[k]) = p;
  }

  GradedMatrix t;
  t.beta = IntMatrix(n + 1);
  t.signs.assign(static_cast<std::size_t>(n) + 1, 0);
  t.labels.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) {
    t.labels[static_cast<std::size_t>(i) + 1] = order[static_cast<std::size_t>(i)];
    t.signs[static_cast<std::size_t>(i) + 1] = d.sign(order[static_cast<std::size_t>(i)]);
  }

  for (int x = 0; x < n; ++x) {
    const int a = ft[static_cast<std::size_t>(x)], b = fh[static_cast<std::size_t>(x)];
    int ind = 0;
    for (int z = 0; z < n; ++z) {
      const bool tail_in = inside(ft[static_cast<std::size_t>(z)], a, b, len);
      const bool head_in = inside(fh[static_cast<std::size_t>(z)], a, b, len);
      if (z == x || tail_in == head_in) continue;
      ind += tail_in ? 1 : -1;
    }
    t.beta(x + 1, 0) = ind;
    t.beta(0, x + 1) = -ind;

    for (int y = 0; y < n; ++y) {
      if (y == x) continue;
      const int c = ft[static_cast<std::size_t>(y)], e = fh[static_cast<std::size_t>(y)];
      int value = 0;
      for (int z = 0; z < n; ++z) {
        const int zt = ft[static_cast<std::size_t>(z)], zh = fh[static_cast<std::size_t>(z)];
        if (inside(zt, a, b, len) && inside(zh, c, e, len)) ++value;
        if (inside(zt, c, e, len) && inside(zh, a, b, len)) --value;
      }
      const bool c_in = inside(c, a, b, len);
      const bool e_in = inside(e, a, b, len);
      if (c_in && !e_in) value += 1;
      if (e_in && !c_in) value -= 1;
      t.beta(x + 1, y + 1) = value;
    }
  }
  return t;
}

namespace {

GradedMatrix drop(const GradedMatrix& t, std::vector<int> rows) {
  std::sort(rows.begin(), rows.end());
  GradedMatrix out;
  out.beta = t.beta.without(rows);
  for (int i = 0; i < t.size(); ++i) {
    if (std::binary_search(rows.begin(), rows.end(), i)) continue;
    out.signs.push_back(t.signs[static_cast<std::size_t>(i)]);
    out.labels.push_back(t.labels[static_cast<std::size_t>(i)]);
  }
  return out;
}

bool row_matches(const IntMatrix& m, int i, const std::function<IntMatrix::Entry(int)>& target) {
  for (int j = 0; j < m.size(); ++j)
    if (m(i, j) != target(j)) return false;
  return true;
}

}  // namespace

GradedMatrix primitive_reduce(const GradedMatrix& t) {
  GradedMatrix cur = t;
  for (;;) {
    const IntMatrix& m = cur.beta;
    const int size = m.size();
    std::vector<int> doomed;
    for (int i = 1; i < size && doomed.empty(); ++i) {
      if (row_matches(m, i, [](int) { return 0; })) doomed = {i};  // M1
    }
    for (int i = 1; i < size && doomed.empty(); ++i) {
      if (row_matches(m, i, [&](int j) { return m(0, j); })) doomed = {i};  // M2
    }
    for (int i = 1; i < size && doomed.empty(); ++i) {
      for (int j = i + 1; j < size; ++j) {
        if (cur.signs[static_cast<std::size_t>(i)] != -cur.signs[static_cast<std::size_t>(j)]) continue;
        if (row_matches(m, i, [&](int z) { return m(0, z) - m(j, z); })) {  // M3
          doomed = {i, j};
          break;
        }
      }
    }
    if (doomed.empty()) return cur;
    cur = drop(cur, doomed);
  }
}

GradedMatrix negate(const GradedMatrix& t) {
  GradedMatrix out = t;
  for (auto& s : out.signs) s = -s;
  for (int i = 0; i < out.size(); ++i)
    for (int j = 0; j < out.size(); ++j) out.beta(i, j) = -t.beta(i, j);
  return out;
}

void enumerate_simple_fillings(const GradedMatrix& t, const std::function<bool(const Filling&)>& visit) {
  std::vector<int> pos, neg;
  for (int i = 1; i < t.size(); ++i) (t.signs[static_cast<std::size_t>(i)] > 0 ? pos : neg).push_back(i);

  const std::size_t max_pairs = std::min(pos.size(), neg.size());
  std::vector<int> partner(static_cast<std::size_t>(t.size()), 0);  // positive row -> negative row
  std::vector<bool> neg_used(static_cast<std::size_t>(t.size()), false);
  bool keep_going = true;

  auto emit = [&]() {
    Filling f;
    f.generators.push_back({0});
    for (int p : pos) {
      const int q = partner[static_cast<std::size_t>(p)];
      f.generators.push_back(q == 0 ? std::vector<int>{p} : std::vector<int>{p, q});
    }
    for (int q : neg) {
      if (!neg_used[static_cast<std::size_t>(q)]) f.generators.push_back({q});
    }
    keep_going = visit(f);
  };

  // Chooses a partner (or none) for each positive crossing in turn, with
  // exactly `remaining` pairs still to place.
  std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t k, std::size_t remaining) {
    if (!keep_going) return;
    if (pos.size() - k < remaining) return;
    if (k == pos.size()) {
      if (remaining == 0) emit();
      return;
    }
    const int p = pos[k];
    recurse(k + 1, remaining);
    if (remaining == 0) return;
    for (int q : neg) {
      if (!keep_going) return;
      if (neg_used[static_cast<std::size_t>(q)]) continue;
      neg_used[static_cast<std::size_t>(q)] = true;
      partner[static_cast<std::size_t>(p)] = q;
      recurse(k + 1, remaining - 1);
      partner[static_cast<std::size_t>(p)] = 0;
      neg_used[static_cast<std::size_t>(q)] = false;
    }
  };
  for (std::size_t pairs = 0; pairs <= max_pairs && keep_going; ++pairs) recurse(0, pairs);
}

std::vector<Filling> simple_fillings(const GradedMatrix& t) {
  std::vector<Filling> out;
  enumerate_simple_fillings(t, [&](const Filling& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

IntMatrix filling_matrix(const GradedMatrix& t, const Filling& f) {
  const int m = static_cast<int>(f.generators.size());
  IntMatrix b(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      IntMatrix::Entry v = 0;
      for (int x : f.generators[static_cast<std::size_t>(i)])
        for (int y : f.generators[static_cast<std::size_t>(j)]) v += t.beta(x, y);
      b(i, j) = v;
    }
  return b;
}

int filling_rank(const GradedMatrix& t, const Filling& f) {
  std::vector<int> uses(static_cast<std::size_t>(t.size()), 0);
  for (const auto& g : f.generators) {
    if (g.empty() || g.size() > 2) throw DiagramError("filling generator must have one or two elements");
    for (int x : g) {
      if (x < 0 || x >= t.size()) throw DiagramError("filling refers to a missing row");
      ++uses[static_cast<std::size_t>(x)];
    }
    if (g.size() == 2) {
      if (g[0] == 0 || g[1] == 0) throw DiagramError("s cannot be paired");
      if (t.signs[static_cast<std::size_t>(g[0])] != -t.signs[static_cast<std::size_t>(g[1])]) {
        throw DiagramError("paired crossings must have opposite signs");
      }
    }
  }
  if (std::any_of(uses.begin(), uses.end(), [](int u) { return u != 1; })) {
    throw DiagramError("every element must be used exactly once");
  }
  return exact_rank(filling_matrix(t, f));
}

int graded_genus(const GradedMatrix& t) {
  const GradedMatrix reduced = primitive_reduce(t);
  int best = reduced.size();
  enumerate_simple_fillings(reduced, [&](const Filling& f) {
    best = std::min(best, exact_rank(filling_matrix(reduced, f)));
    return best > 0;
  });
  return best / 2;
}

int graded_genus(const GaussDiagram& d) { return graded_genus(graded_matrix(d)); }

namespace {

using Vector = std::vector<IntMatrix::Entry>;

IntMatrix::Entry form(const IntMatrix& beta, const Vector& u, const Vector& v) {
  IntMatrix::Entry total = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] != 0) total += u[i] * beta(static_cast<int>(i), static_cast<int>(j)) * v[j];
    }
  }
  return total;
}

int rank_of(const IntMatrix& beta, const std::vector<Vector>& gens) {
  const int m = static_cast<int>(gens.size());
  IntMatrix b(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      b(i, j) = form(beta, gens[static_cast<std::size_t>(i)], gens[static_cast<std::size_t>(j)]);
      b(j, i) = -b(i, j);
    }
  return exact_rank(b);
}

}  // namespace

int concordance_obstruction_bound(const GradedMatrix& t1, const GradedMatrix& t2, int coeff_bound, long leaf_budget) {
  if (coeff_bound < 0) throw std::invalid_argument("coeff_bound must be nonnegative");
  const GradedMatrix minus2 = negate(t2);
  const int n1 = t1.size(), n2 = minus2.size();
  const int total = n1 + n2;
  const int s1 = 0, s2 = n1;

  IntMatrix beta(total);
  std::vector<int> signs(static_cast<std::size_t>(total), 0);
  for (int i = 0; i < n1; ++i) {
    signs[static_cast<std::size_t>(i)] = t1.signs[static_cast<std::size_t>(i)];
    for (int j = 0; j < n1; ++j) beta(i, j) = t1.beta(i, j);
  }
  for (int i = 0; i < n2; ++i) {
    signs[static_cast<std::size_t>(n1 + i)] = minus2.signs[static_cast<std::size_t>(i)];
    for (int j = 0; j < n2; ++j) beta(n1 + i, n1 + j) = minus2.beta(i, j);
  }
  std::vector<int> pos, neg;
  for (int i = 0; i < total; ++i) {
    if (signs[static_cast<std::size_t>(i)] > 0) pos.push_back(i);
    if (signs[static_cast<std::size_t>(i)] < 0) neg.push_back(i);
  }

  auto unit = [&](std::initializer_list<int> idx) {
    Vector v(static_cast<std::size_t>(total), 0);
    for (int i : idx) v[static_cast<std::size_t>(i)] += 1;
    return v;
  };

  // All matchings, each as its list of generators (s1+s2 first).
  std::vector<std::vector<Vector>> matchings;
  {
    std::vector<int> partner(static_cast<std::size_t>(total), -1);
    std::vector<bool> used(static_cast<std::size_t>(total), false);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == pos.size()) {
        std::vector<Vector> gens{unit({s1, s2})};
        for (int p : pos) {
          const int q = partner[static_cast<std::size_t>(p)];
          gens.push_back(q < 0 ? unit({p}) : unit({p, q}));
        }
        for (int q : neg)
          if (!used[static_cast<std::size_t>(q)]) gens.push_back(unit({q}));
        matchings.push_back(std::move(gens));
        return;
      }
      const int p = pos[k];
      rec(k + 1);
      for (int q : neg) {
        if (used[static_cast<std::size_t>(q)]) continue;
        used[static_cast<std::size_t>(q)] = true;
        partner[static_cast<std::size_t>(p)] = q;
        rec(k + 1);
        partner[static_cast<std::size_t>(p)] = -1;
        used[static_cast<std::size_t>(q)] = false;
      }
    };
    rec(0);
  }

  int best = total;
  std::vector<std::pair<int, std::size_t>> by_rank;
  for (std::size_t k = 0; k < matchings.size(); ++k) {
    const int r = rank_of(beta, matchings[k]);
    best = std::min(best, r);
    if (best == 0) return 0;
    by_rank.emplace_back(r, k);
  }
  if (coeff_bound == 0) return best / 2;

  // Shifted search, most promising matchings first.
  std::sort(by_rank.begin(), by_rank.end());
  long leaves = 0;
  for (const auto& [unused, k] : by_rank) {
    std::vector<Vector> gens = matchings[k];
    std::function<void(std::size_t)> shift = [&](std::size_t g) {
      if (best == 0 || leaves >= leaf_budget) return;
      if (g == gens.size()) {
        ++leaves;
        best = std::min(best, rank_of(beta, gens));
        return;
      }
      for (int k1 = -coeff_bound; k1 <= coeff_bound; ++k1)
        for (int k2 = -coeff_bound; k2 <= coeff_bound; ++k2) {
          gens[g][static_cast<std::size_t>(s1)] += k1;
          gens[g][static_cast<std::size_t>(s2)] += k2;
          shift(g + 1);
          gens[g][static_cast<std::size_t>(s1)] -= k1;
          gens[g][static_cast<std::size_t>(s2)] -= k2;
        }
    };
    shift(1);
    if (best == 0 || leaves >= leaf_budget) break;
  }
  return best / 2;
}

}  // namespace vkslice

#include "vkslice/gauss_diagram.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>

#include "r3_configurations.hpp"

namespace vkslice {

namespace {

bool sign_valid(int s) { return s == 1 || s == -1; }

int mod(int a, int n) { return ((a % n) + n) % n; }

// Removes the listed chords from the diagram, keeping every circle.
GaussDiagram without_chords(const GaussDiagram& d, const std::vector<int>& ids) {
  auto doomed = [&](int id) { return std::find(ids.begin(), ids.end(), id) != ids.end(); };
  std::vector<std::vector<Endpoint>> circles;
  circles.reserve(d.circles().size());
  for (const auto& c : d.circles()) {
    std::vector<Endpoint> kept;
    kept.reserve(c.size());
    for (const auto& e : c) {
      if (!doomed(e.chord)) kept.push_back(e);
    }
    circles.push_back(std::move(kept));
  }
  std::vector<Chord> chords;
  for (const auto& ch : d.chords()) {
    if (!doomed(ch.id)) chords.push_back(ch);
  }
  return GaussDiagram(std::move(circles), std::move(chords));
}

bool adjacent(const GaussDiagram& d, Location p, Location q) {
  if (p.circle != q.circle) return false;
  const int len = static_cast<int>(d.circle(p.circle).size());
  return mod(p.index + 1, len) == q.index || mod(q.index + 1, len) == p.index;
}

// Validates a gap against the diagram; index == size is accepted as the end.
void check_gap(const GaussDiagram& d, Gap g) {
  if (g.circle < 0 || g.circle >= d.circle_count()) {
    throw IllegalMove("gap refers to missing circle " + std::to_string(g.circle));
  }
  const int len = static_cast<int>(d.circle(g.circle).size());
  if (g.index < 0 || g.index > len) {
    throw IllegalMove("gap index " + std::to_string(g.index) + " out of range on circle " +
                      std::to_string(g.circle));
  }
}

// Inserts runs of endpoints at gaps. Insertions are applied from the back so
// that each gap keeps referring to the original diagram.
GaussDiagram insert_at_gaps(const GaussDiagram& d, std::vector<std::pair<Gap, std::vector<Endpoint>>> runs,
                            const std::vector<Chord>& new_chords) {
  std::stable_sort(runs.begin(), runs.end(), [](const auto& a, const auto& b) {
    if (a.first.circle != b.first.circle) return a.first.circle < b.first.circle;
    return a.first.index > b.first.index;
  });
  auto circles = d.circles();
  for (const auto& [gap, eps] : runs) {
    auto& c = circles[static_cast<std::size_t>(gap.circle)];
    c.insert(c.begin() + gap.index, eps.begin(), eps.end());
  }
  auto chords = d.chords();
  chords.insert(chords.end(), new_chords.begin(), new_chords.end());
  return GaussDiagram(std::move(circles), std::move(chords));
}

}  // namespace

GaussDiagram::GaussDiagram() : circles_(1) {}

GaussDiagram::GaussDiagram(std::vector<std::vector<Endpoint>> circles, std::vector<Chord> chords)
    : circles_(std::move(circles)), chords_(std::move(chords)) {
  if (circles_.empty()) throw DiagramError("a diagram needs at least one circle");
  std::sort(chords_.begin(), chords_.end(), [](const Chord& a, const Chord& b) { return a.id < b.id; });
  std::map<int, std::array<int, 2>> seen;
  for (std::size_t i = 0; i < chords_.size(); ++i) {
    if (i > 0 && chords_[i].id == chords_[i - 1].id) {
      throw DiagramError("duplicate chord id " + std::to_string(chords_[i].id));
    }
    if (!sign_valid(chords_[i].sign)) {
      throw DiagramError("chord " + std::to_string(chords_[i].id) + " has sign other than +1/-1");
    }
    seen[chords_[i].id] = {0, 0};
  }
  for (const auto& c : circles_) {
    for (const auto& e : c) {
      auto it = seen.find(e.chord);
      if (it == seen.end()) throw DiagramError("endpoint of unknown chord " + std::to_string(e.chord));
      ++it->second[e.end == End::tail ? 0 : 1];
    }
  }
  for (const auto& [id, counts] : seen) {
    if (counts[0] != 1 || counts[1] != 1) {
      throw DiagramError("chord " + std::to_string(id) + " must have exactly one tail and one head");
    }
  }
}

bool GaussDiagram::has_chord(int id) const {
  return std::binary_search(chords_.begin(), chords_.end(), Chord{id, 1},
                            [](const Chord& a, const Chord& b) { return a.id < b.id; });
}

int GaussDiagram::sign(int id) const {
  auto it = std::lower_bound(chords_.begin(), chords_.end(), id,
                             [](const Chord& a, int v) { return a.id < v; });
  if (it == chords_.end() || it->id != id) throw DiagramError("unknown chord " + std::to_string(id));
  return it->sign;
}

Location GaussDiagram::locate(int id, End end) const {
  for (std::size_t c = 0; c < circles_.size(); ++c) {
    const auto& circ = circles_[c];
    for (std::size_t i = 0; i < circ.size(); ++i) {
      if (circ[i].chord == id && circ[i].end == end) return {static_cast<int>(c), static_cast<int>(i)};
    }
  }
  throw DiagramError("unknown chord " + std::to_string(id));
}

std::vector<int> GaussDiagram::chords_in_code_order() const {
  std::vector<int> order;
  order.reserve(chords_.size());
  std::set<int> seen;
  for (const auto& c : circles_) {
    for (const auto& e : c) {
      if (seen.insert(e.chord).second) order.push_back(e.chord);
    }
  }
  return order;
}

int GaussDiagram::next_chord_id() const { return chords_.empty() ? 1 : chords_.back().id + 1; }

bool GaussDiagram::one_signed() const {
  return std::all_of(chords_.begin(), chords_.end(), [&](const Chord& c) { return c.sign == chords_.front().sign; });
}

GaussDiagram parse_gauss_code(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  struct Pass {
    bool seen = false;
    int sign = 0;
  };
  std::map<int, std::array<Pass, 2>> passes;
  std::vector<std::vector<Endpoint>> circles(1);

  std::size_t i = 0;
  while (i < text.size()) {
    const char kind = text[i];
    if (kind == '|') {
      circles.emplace_back();
      ++i;
      continue;
    }
    if (kind != 'O' && kind != 'U') {
      throw DiagramError("malformed token at offset " + std::to_string(i) + ": expected O or U");
    }
    std::size_t j = i + 1;
    long label = 0;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      label = label * 10 + (text[j] - '0');
      if (label > 1'000'000) throw DiagramError("chord label too large at offset " + std::to_string(i));
      ++j;
    }
    if (j == i + 1) throw DiagramError("malformed token at offset " + std::to_string(i) + ": missing label");
    if (j >= text.size() || (text[j] != '+' && text[j] != '-')) {
      throw DiagramError("malformed token at offset " + std::to_string(i) + ": missing sign");
    }
    const int sign = text[j] == '+' ? 1 : -1;
    const End end = kind == 'O' ? End::tail : End::head;
    auto& pass = passes[static_cast<int>(label)][end == End::tail ? 0 : 1];
    if (pass.seen) {
      throw DiagramError("label " + std::to_string(label) + " has two " + (kind == 'O' ? "O" : "U") + " passes");
    }
    pass = {true, sign};
    circles.back().push_back({static_cast<int>(label), end});
    i = j + 1;
  }

  std::vector<Chord> chords;
  for (const auto& [label, p] : passes) {
    if (!p[0].seen || !p[1].seen) {
      throw DiagramError("label " + std::to_string(label) + " must appear once with O and once with U");
    }
    if (p[0].sign != p[1].sign) {
      throw DiagramError("label " + std::to_string(label) + " carries inconsistent signs");
    }
    chords.push_back({label, p[0].sign});
  }
  return GaussDiagram(std::move(circles), std::move(chords));
}

namespace {

void append_token(std::string& out, End end, int label, int sign) {
  out += end == End::tail ? 'O' : 'U';
  out += std::to_string(label);
  out += sign > 0 ? '+' : '-';
}

std::string code_from(const GaussDiagram& d, int shift) {
  std::map<int, int> labels;
  std::string out;
  bool first_circle = true;
  for (std::size_t c = 0; c < d.circles().size(); ++c) {
    if (!first_circle) out += '|';
    first_circle = false;
    const auto& circ = d.circles()[c];
    const int len = static_cast<int>(circ.size());
    for (int k = 0; k < len; ++k) {
      const auto& e = circ[static_cast<std::size_t>(c == 0 ? mod(k + shift, len) : k)];
      auto [it, fresh] = labels.try_emplace(e.chord, static_cast<int>(labels.size()) + 1);
      append_token(out, e.end, it->second, d.sign(e.chord));
    }
  }
  return out;
}

}  // namespace

std::string emit_code(const GaussDiagram& d) { return code_from(d, 0); }

std::string emit_canonical_code(const GaussDiagram& d) {
  if (!d.is_knot()) throw DiagramError("canonical codes are defined for single-circle diagrams only");
  const int len = static_cast<int>(d.circle(0).size());
  std::string best = code_from(d, 0);
  for (int r = 1; r < len; ++r) {
    std::string candidate = code_from(d, r);
    if (candidate < best) best = std::move(candidate);
  }
  return best;
}

GaussDiagram rotate_basepoint(const GaussDiagram& d, int shift) {
  auto circles = d.circles();
  auto& c0 = circles[0];
  if (!c0.empty()) std::rotate(c0.begin(), c0.begin() + mod(shift, static_cast<int>(c0.size())), c0.end());
  return GaussDiagram(std::move(circles), d.chords());
}

std::vector<Symmetry> Symmetry::all() {
  std::vector<Symmetry> out;
  for (int bits = 0; bits < 8; ++bits) out.push_back({(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0});
  return out;
}

std::string Symmetry::name() const {
  std::string out;
  auto add = [&](const char* s) {
    if (!out.empty()) out += '+';
    out += s;
  };
  if (rev) add("rev");
  if (mir) add("mir");
  if (ou) add("ou");
  return out.empty() ? "id" : out;
}

GaussDiagram apply_symmetry(const GaussDiagram& d, Symmetry g) {
  const bool flip_direction = g.mir != g.ou;
  auto circles = d.circles();
  for (auto& c : circles) {
    if (g.rev) std::reverse(c.begin(), c.end());
    if (flip_direction) {
      for (auto& e : c) e.end = opposite(e.end);
    }
  }
  auto chords = d.chords();
  if (g.mir) {
    for (auto& ch : chords) ch.sign = -ch.sign;
  }
  return GaussDiagram(std::move(circles), std::move(chords));
}

std::vector<std::string> orbit_codes(const GaussDiagram& d, bool use_symmetry) {
  std::vector<std::string> out;
  if (!use_symmetry) {
    out.push_back(emit_canonical_code(d));
    return out;
  }
  for (const auto& g : Symmetry::all()) out.push_back(emit_canonical_code(apply_symmetry(d, g)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool r1_removable(const GaussDiagram& d, int x) {
  return adjacent(d, d.locate(x, End::tail), d.locate(x, End::head));
}

bool r2_removable(const GaussDiagram& d, int x, int y) {
  if (x == y || d.sign(x) != -d.sign(y)) return false;
  return adjacent(d, d.locate(x, End::tail), d.locate(y, End::tail)) &&
         adjacent(d, d.locate(x, End::head), d.locate(y, End::head));
}

GaussDiagram simplify(const GaussDiagram& d) {
  GaussDiagram cur = d;
  for (;;) {
    bool changed = false;
    for (const auto& ch : cur.chords()) {
      if (r1_removable(cur, ch.id)) {
        cur = without_chords(cur, {ch.id});
        changed = true;
        break;
      }
    }
    if (changed) continue;
    const auto& chords = cur.chords();
    for (std::size_t i = 0; i < chords.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < chords.size(); ++j) {
        if (r2_removable(cur, chords[i].id, chords[j].id)) {
          cur = without_chords(cur, {chords[i].id, chords[j].id});
          changed = true;
          break;
        }
      }
    }
    if (!changed) return cur;
  }
}

namespace {

// Finds the r3 role assignment for three chords: alpha runs top->middle,
// beta top->bottom, gamma middle->bottom.
std::optional<detail::R3Configuration> r3_configuration(const GaussDiagram& d, const std::array<int, 3>& ids,
                                                        std::array<std::pair<Location, Location>, 3>* strands) {
  std::array<int, 3> perm = ids;
  std::sort(perm.begin(), perm.end());
  auto ordered = [&](Location first, Location second) {
    const int len = static_cast<int>(d.circle(first.circle).size());
    return mod(first.index + 1, len) == second.index;
  };
  auto long_enough = [&](Location p) { return d.circle(p.circle).size() >= 3; };
  do {
    const int a = perm[0], b = perm[1], g = perm[2];
    const Location at = d.locate(a, End::tail), ah = d.locate(a, End::head);
    const Location bt = d.locate(b, End::tail), bh = d.locate(b, End::head);
    const Location gt = d.locate(g, End::tail), gh = d.locate(g, End::head);
    if (!long_enough(at) || !long_enough(ah) || !long_enough(bh)) continue;
    if (!adjacent(d, at, bt) || !adjacent(d, ah, gt) || !adjacent(d, bh, gh)) continue;
    detail::R3Configuration cfg{ordered(at, bt), ordered(ah, gt), ordered(bh, gh), d.sign(a), d.sign(b), d.sign(g)};
    if (!detail::r3_realizable(cfg)) continue;
    if (strands != nullptr) *strands = {{{at, bt}, {ah, gt}, {bh, gh}}};
    return cfg;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace

std::vector<std::vector<int>> r3_candidates(const GaussDiagram& d) {
  std::vector<std::vector<int>> out;
  const auto& ch = d.chords();
  for (std::size_t i = 0; i < ch.size(); ++i)
    for (std::size_t j = i + 1; j < ch.size(); ++j)
      for (std::size_t k = j + 1; k < ch.size(); ++k) {
        if (r3_configuration(d, {ch[i].id, ch[j].id, ch[k].id}, nullptr)) {
          out.push_back({ch[i].id, ch[j].id, ch[k].id});
        }
      }
  return out;
}

GaussDiagram apply_move(const GaussDiagram& d, const MoveSpec& m) {
  auto need_chords = [&](std::size_t k) {
    if (m.chords.size() != k) throw IllegalMove("move expects " + std::to_string(k) + " chord operand(s)");
    for (int id : m.chords) {
      if (!d.has_chord(id)) throw IllegalMove("move refers to unknown chord " + std::to_string(id));
    }
  };
  auto need_gaps = [&](std::size_t k) {
    if (m.gaps.size() != k) throw IllegalMove("move expects " + std::to_string(k) + " gap operand(s)");
    for (const auto& g : m.gaps) check_gap(d, g);
  };

  switch (m.kind) {
    case MoveKind::r1_minus: {
      need_chords(1);
      if (!r1_removable(d, m.chords[0])) {
        throw IllegalMove("r1-: endpoints of chord " + std::to_string(m.chords[0]) + " are not adjacent");
      }
      return without_chords(d, m.chords);
    }
    case MoveKind::r1_plus: {
      need_gaps(1);
      if (!sign_valid(m.sign)) throw IllegalMove("r1+: sign must be +1 or -1");
      const int id = m.chords.empty() ? d.next_chord_id() : m.chords[0];
      if (id <= 0 || d.has_chord(id)) throw IllegalMove("r1+: chord id " + std::to_string(id) + " is not free");
      std::vector<Endpoint> run{{id, End::tail}, {id, End::head}};
      if (!m.tail_first) std::swap(run[0], run[1]);
      return insert_at_gaps(d, {{m.gaps[0], run}}, {{id, m.sign}});
    }
    case MoveKind::r2_minus: {
      need_chords(2);
      if (!r2_removable(d, m.chords[0], m.chords[1])) {
        throw IllegalMove("r2-: chords " + std::to_string(m.chords[0]) + " and " + std::to_string(m.chords[1]) +
                          " do not form an r2 pattern");
      }
      return without_chords(d, m.chords);
    }
    case MoveKind::r2_plus: {
      need_gaps(2);
      if (!sign_valid(m.sign)) throw IllegalMove("r2+: sign must be +1 or -1");
      const int a = d.next_chord_id();
      const int b = a + 1;
      std::vector<Endpoint> tails{{a, End::tail}, {b, End::tail}};
      std::vector<Endpoint> heads{{a, End::head}, {b, End::head}};
      if (m.antiparallel) std::swap(heads[0], heads[1]);
      const std::vector<Chord> fresh{{a, m.sign}, {b, -m.sign}};
      if (m.gaps[0] == m.gaps[1]) {
        tails.insert(tails.end(), heads.begin(), heads.end());
        return insert_at_gaps(d, {{m.gaps[0], tails}}, fresh);
      }
      return insert_at_gaps(d, {{m.gaps[0], tails}, {m.gaps[1], heads}}, fresh);
    }
    case MoveKind::r3: {
      need_chords(3);
      std::array<std::pair<Location, Location>, 3> strands;
      if (!r3_configuration(d, {m.chords[0], m.chords[1], m.chords[2]}, &strands)) {
        throw IllegalMove("r3: chords do not bound a legal r3 triangle");
      }
      auto circles = d.circles();
      for (const auto& [p, q] : strands) {
        auto& c = circles[static_cast<std::size_t>(p.circle)];
        std::swap(c[static_cast<std::size_t>(p.index)], c[static_cast<std::size_t>(q.index)]);
      }
      return GaussDiagram(std::move(circles), d.chords());
    }
  }
  throw IllegalMove("unknown move kind");
}

GaussDiagram connected_sum(const GaussDiagram& a, const GaussDiagram& b) {
  if (!a.is_knot() || !b.is_knot()) throw DiagramError("connected sum needs single-circle diagrams");
  std::map<int, int> relabel;
  int next = a.next_chord_id();
  for (const auto& ch : b.chords()) relabel[ch.id] = next++;
  auto word = a.circle(0);
  for (const auto& e : b.circle(0)) word.push_back({relabel.at(e.chord), e.end});
  auto chords = a.chords();
  for (const auto& ch : b.chords()) chords.push_back({relabel.at(ch.id), ch.sign});
  return GaussDiagram({std::move(word)}, std::move(chords));
}

CodeList::CodeList(const std::vector<std::string>& codes) {
  for (const auto& c : codes) add_code(c);
}

void CodeList::add(const GaussDiagram& d) { codes_.insert(emit_canonical_code(d)); }

std::optional<std::string> equivalent_to_listed(const GaussDiagram& d, const CodeList& list, bool use_symmetry) {
  const GaussDiagram reduced = simplify(d);
  if (!reduced.is_knot()) return std::nullopt;
  for (const auto& code : orbit_codes(reduced, use_symmetry)) {
    if (list.contains(code)) return code;
  }
  return std::nullopt;
}

}  // namespace vkslice

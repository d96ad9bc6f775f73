#include "vkslice/cobordism.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "vkslice/graded.hpp"
#include "vkslice/invariants.hpp"

namespace vkslice {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

std::vector<Endpoint> rotated(const std::vector<Endpoint>& w, int start) {
  std::vector<Endpoint> out;
  out.reserve(w.size());
  const int len = static_cast<int>(w.size());
  for (int k = 0; k < len; ++k) out.push_back(w[static_cast<std::size_t>(mod(start + k, len))]);
  return out;
}

// Cyclic run of w from gap `from` up to gap `to`.
std::vector<Endpoint> cyclic_run(const std::vector<Endpoint>& w, int from, int to) {
  const int len = static_cast<int>(w.size());
  std::vector<Endpoint> out;
  for (int k = 0; k < mod(to - from, len); ++k) out.push_back(w[static_cast<std::size_t>(mod(from + k, len))]);
  return out;
}

void check_gap(const GaussDiagram& d, Gap g, const char* what) {
  if (g.circle < 0 || g.circle >= d.circle_count()) {
    throw IllegalMove(std::string(what) + ": no circle " + std::to_string(g.circle));
  }
  const int len = static_cast<int>(d.circle(g.circle).size());
  if (g.index < 0 || g.index > len) {
    throw IllegalMove(std::string(what) + ": gap " + std::to_string(g.circle) + ":" + std::to_string(g.index) +
                      " out of range");
  }
}

void require_chord(const GaussDiagram& d, int x, const char* what) {
  if (!d.has_chord(x)) throw IllegalMove(std::string(what) + ": no chord " + std::to_string(x));
}

struct Span {
  int first;  // lower position on circle 0
  int second;
};

MoveSpec kink_removal(int x) {
  MoveSpec m;
  m.kind = MoveKind::r1_minus;
  m.chords = {x};
  return m;
}

MoveSpec kink_insertion(int id, Gap at, int sign, bool tail_first) {
  MoveSpec m;
  m.kind = MoveKind::r1_plus;
  m.chords = {id};
  m.gaps = {at};
  m.sign = sign;
  m.tail_first = tail_first;
  return m;
}

Span span_of(const GaussDiagram& d, int x) {
  const int t = d.locate(x, End::tail).index;
  const int h = d.locate(x, End::head).index;
  return {std::min(t, h), std::max(t, h)};
}

}  // namespace

GaussDiagram saddle(const GaussDiagram& d, Gap p, Gap q) {
  check_gap(d, p, "saddle");
  check_gap(d, q, "saddle");
  auto circles = d.circles();
  if (p.circle == q.circle) {
    const auto& w = d.circle(p.circle);
    const int len = static_cast<int>(w.size());
    std::vector<Endpoint> a, b;
    if (len > 0) {
      const int i = p.index % len;
      const int j = q.index % len;
      if (i == j) throw IllegalMove("saddle: both gaps are the same point");
      a = cyclic_run(w, i, j);
      b = cyclic_run(w, j, i);
    }
    circles[static_cast<std::size_t>(p.circle)] = std::move(a);
    circles.push_back(std::move(b));
  } else {
    auto merged = rotated(d.circle(p.circle), p.index);
    const auto tail = rotated(d.circle(q.circle), q.index);
    merged.insert(merged.end(), tail.begin(), tail.end());
    const int keep = std::min(p.circle, q.circle);
    const int drop = std::max(p.circle, q.circle);
    circles[static_cast<std::size_t>(keep)] = std::move(merged);
    circles.erase(circles.begin() + drop);
  }
  return GaussDiagram(std::move(circles), d.chords());
}

GaussDiagram birth(const GaussDiagram& d) {
  auto circles = d.circles();
  circles.emplace_back();
  return GaussDiagram(std::move(circles), d.chords());
}

GaussDiagram death(const GaussDiagram& d, int circle) {
  if (circle < 0 || circle >= d.circle_count()) throw IllegalMove("death: no circle " + std::to_string(circle));
  if (!d.circle(circle).empty()) throw IllegalMove("death: circle " + std::to_string(circle) + " carries endpoints");
  if (d.circle_count() == 1) throw IllegalMove("death: cannot remove the last circle");
  auto circles = d.circles();
  circles.erase(circles.begin() + circle);
  return GaussDiagram(std::move(circles), d.chords());
}

std::string_view to_string(ArrowOp op) {
  switch (op) {
    case ArrowOp::cd: return "cd";
    case ArrowOp::cc: return "cc";
    case ArrowOp::sc: return "sc";
    case ArrowOp::orient: return "or";
  }
  return "?";
}

std::optional<ArrowOp> parse_arrow_op(std::string_view token) {
  for (ArrowOp op : kArrowOps)
    if (to_string(op) == token) return op;
  return std::nullopt;
}

GaussDiagram arrow_op(const GaussDiagram& d, ArrowOp op, int chord) {
  require_chord(d, chord, "arrow_op");
  const bool reverse = op == ArrowOp::cc || op == ArrowOp::orient;
  const bool resign = op == ArrowOp::cc || op == ArrowOp::sc;
  auto circles = d.circles();
  auto chords = d.chords();
  if (op == ArrowOp::cd) {
    for (auto& c : circles) std::erase_if(c, [&](const Endpoint& e) { return e.chord == chord; });
    std::erase_if(chords, [&](const Chord& ch) { return ch.id == chord; });
  } else {
    if (reverse)
      for (auto& c : circles)
        for (auto& e : c)
          if (e.chord == chord) e.end = opposite(e.end);
    if (resign)
      for (auto& ch : chords)
        if (ch.id == chord) ch.sign = -ch.sign;
  }
  return GaussDiagram(std::move(circles), std::move(chords));
}

bool chords_intersect(const GaussDiagram& d, int x, int y) {
  if (!d.is_knot() || x == y || !d.has_chord(x) || !d.has_chord(y)) return false;
  const Span sx = span_of(d, x);
  const Span sy = span_of(d, y);
  auto inside = [&](int p) { return p > sx.first && p < sx.second; };
  return inside(sy.first) != inside(sy.second);
}

GaussDiagram crossed_saddle(const GaussDiagram& d, int x, int y) {
  require_chord(d, x, "crossed_saddle");
  require_chord(d, y, "crossed_saddle");
  if (!chords_intersect(d, x, y)) {
    throw IllegalMove("crossed_saddle: chords " + std::to_string(x) + " and " + std::to_string(y) +
                      " do not intersect on a single circle");
  }
  const auto w = rotated(d.circle(0), span_of(d, x).first);
  // w = a w1 c w2 b w3 d w4
  std::vector<int> at;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    const int id = w[static_cast<std::size_t>(i)].chord;
    if (id == x || id == y) at.push_back(i);
  }
  const int c = at[1], b = at[2], dd = at[3];
  const int len = static_cast<int>(w.size());
  std::vector<Endpoint> out;
  auto append = [&](int from, int to) { out.insert(out.end(), w.begin() + from, w.begin() + to); };
  append(c + 1, b);
  append(1, c);
  append(dd + 1, len);
  append(b + 1, dd);

  auto chords = d.chords();
  std::erase_if(chords, [&](const Chord& ch) { return ch.id == x || ch.id == y; });
  GaussDiagram result({std::move(out)}, std::move(chords));
  assert(result == crossed_saddle_by_surgery(d, x, y));
  return result;
}

GaussDiagram crossed_saddle_by_surgery(const GaussDiagram& d, int x, int y) {
  if (!chords_intersect(d, x, y)) {
    throw IllegalMove("crossed_saddle: chords " + std::to_string(x) + " and " + std::to_string(y) +
                      " do not intersect on a single circle");
  }
  const Span sx = span_of(d, x);
  auto step = saddle(d, {0, sx.first}, {0, sx.second + 1});
  step = apply_move(step, kink_removal(x));
  // circle 0 holds y's inner endpoint c, circle 1 its outer endpoint d
  const int c_at = [&] {
    for (int i = 0; i < static_cast<int>(step.circle(0).size()); ++i)
      if (step.circle(0)[static_cast<std::size_t>(i)].chord == y) return i;
    throw std::logic_error("crossed_saddle: lost chord endpoint");
  }();
  const int d_at = [&] {
    for (int i = 0; i < static_cast<int>(step.circle(1).size()); ++i)
      if (step.circle(1)[static_cast<std::size_t>(i)].chord == y) return i;
    throw std::logic_error("crossed_saddle: lost chord endpoint");
  }();
  step = saddle(step, {0, c_at}, {1, d_at + 1});
  return apply_move(step, kink_removal(y));
}

// ---------------------------------------------------------------------------
// Movies

MovieError::MovieError(std::size_t step, const std::string& what)
    : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}

namespace {

Gap parse_gap(const std::string& token) {
  const auto colon = token.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("expected circle:index, got '" + token + "'");
  std::size_t used = 0;
  Gap g;
  g.circle = std::stoi(token.substr(0, colon), &used);
  if (used != colon) throw std::invalid_argument("bad circle in '" + token + "'");
  const auto rest = token.substr(colon + 1);
  g.index = std::stoi(rest, &used);
  if (used != rest.size()) throw std::invalid_argument("bad index in '" + token + "'");
  return g;
}

int parse_int(const std::string& token) {
  std::size_t used = 0;
  const int v = std::stoi(token, &used);
  if (used != token.size()) throw std::invalid_argument("expected an integer, got '" + token + "'");
  return v;
}

int parse_sign(const std::string& token) {
  if (token == "+" || token == "+1" || token == "1") return 1;
  if (token == "-" || token == "-1") return -1;
  throw std::invalid_argument("expected a sign, got '" + token + "'");
}

std::string gap_text(Gap g) { return std::to_string(g.circle) + ":" + std::to_string(g.index); }

MovieEvent parse_event(const std::vector<std::string>& tok) {
  const std::string& kw = tok[0];
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (tok.size() - 1 < lo || tok.size() - 1 > hi) throw std::invalid_argument("wrong argument count for " + kw);
  };
  if (kw == "saddle") {
    arity(2, 2);
    return SaddleEvent{parse_gap(tok[1]), parse_gap(tok[2])};
  }
  if (kw == "birth") {
    arity(0, 0);
    return BirthEvent{};
  }
  if (kw == "death") {
    arity(1, 1);
    return DeathEvent{parse_int(tok[1])};
  }
  if (kw == "simplify") {
    arity(0, 0);
    return SimplifyEvent{};
  }
  MoveSpec m;
  if (kw == "r1-") {
    arity(1, 1);
    m.kind = MoveKind::r1_minus;
    m.chords = {parse_int(tok[1])};
  } else if (kw == "r1+") {
    arity(3, 4);
    m.kind = MoveKind::r1_plus;
    if (tok.size() == 5) m.chords = {parse_int(tok[4])};
    m.gaps = {parse_gap(tok[1])};
    m.sign = parse_sign(tok[2]);
    if (tok[3] == "O-first" || tok[3] == "O") {
      m.tail_first = true;
    } else if (tok[3] == "U-first" || tok[3] == "U") {
      m.tail_first = false;
    } else {
      throw std::invalid_argument("expected O-first or U-first, got '" + tok[3] + "'");
    }
  } else if (kw == "r2-") {
    arity(2, 2);
    m.kind = MoveKind::r2_minus;
    m.chords = {parse_int(tok[1]), parse_int(tok[2])};
  } else if (kw == "r2+") {
    arity(3, 4);
    m.kind = MoveKind::r2_plus;
    m.gaps = {parse_gap(tok[1]), parse_gap(tok[2])};
    m.sign = parse_sign(tok[3]);
    if (tok.size() == 5) {
      if (tok[4] != "anti") throw std::invalid_argument("expected 'anti', got '" + tok[4] + "'");
      m.antiparallel = true;
    }
  } else if (kw == "r3") {
    // a trailing variant label is accepted and ignored: the three chords fix the move
    arity(3, 4);
    m.kind = MoveKind::r3;
    m.chords = {parse_int(tok[1]), parse_int(tok[2]), parse_int(tok[3])};
  } else {
    throw std::invalid_argument("unknown event '" + kw + "'");
  }
  return MoveEvent{m};
}

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

Movie parse_movie(std::string_view text) {
  Movie movie;
  bool have_code = false;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto tok = split_words(line);
    if (tok.empty()) continue;
    try {
      if (!have_code) {
        if (tok[0] != "code") throw std::invalid_argument("first line must be 'code <gauss_code>'");
        if (tok.size() > 2) throw std::invalid_argument("Gauss code must not contain spaces");
        movie.code = tok.size() == 2 ? tok[1] : "";
        parse_gauss_code(movie.code);
        have_code = true;
      } else {
        movie.events.push_back(parse_event(tok));
      }
    } catch (const std::exception& e) {
      throw MovieError(line_no, e.what());
    }
  }
  if (!have_code) throw MovieError(line_no + 1, "missing 'code' line");
  return movie;
}

Movie read_movie_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open movie file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_movie(buf.str());
}

std::string format_event(const MovieEvent& e) {
  struct Formatter {
    std::string operator()(const SaddleEvent& s) const { return "saddle " + gap_text(s.p) + " " + gap_text(s.q); }
    std::string operator()(const BirthEvent&) const { return "birth"; }
    std::string operator()(const DeathEvent& d) const { return "death " + std::to_string(d.circle); }
    std::string operator()(const SimplifyEvent&) const { return "simplify"; }
    std::string operator()(const MoveEvent& mv) const {
      const MoveSpec& m = mv.move;
      const std::string sign = m.sign > 0 ? "+" : "-";
      switch (m.kind) {
        case MoveKind::r1_minus: return "r1- " + std::to_string(m.chords.at(0));
        case MoveKind::r1_plus:
          return "r1+ " + gap_text(m.gaps.at(0)) + " " + sign + (m.tail_first ? " O-first" : " U-first") +
                 (m.chords.empty() ? "" : " " + std::to_string(m.chords[0]));
        case MoveKind::r2_minus: return "r2- " + std::to_string(m.chords.at(0)) + " " + std::to_string(m.chords.at(1));
        case MoveKind::r2_plus:
          return "r2+ " + gap_text(m.gaps.at(0)) + " " + gap_text(m.gaps.at(1)) + " " + sign +
                 (m.antiparallel ? " anti" : "");
        case MoveKind::r3:
          return "r3 " + std::to_string(m.chords.at(0)) + " " + std::to_string(m.chords.at(1)) + " " +
                 std::to_string(m.chords.at(2));
      }
      return "?";
    }
  };
  return std::visit(Formatter{}, e);
}

std::string format_movie(const Movie& m) {
  std::string out = "code " + m.code + "\n";
  for (const auto& e : m.events) out += format_event(e) + "\n";
  return out;
}

CobordismCertificate verify_movie(const Movie& m) {
  CobordismCertificate cert;
  GaussDiagram d;
  try {
    d = parse_gauss_code(m.code);
  } catch (const std::exception& e) {
    throw MovieError(0, e.what());
  }
  std::size_t step = 0;
  for (const auto& e : m.events) {
    ++step;
    try {
      if (const auto* s = std::get_if<SaddleEvent>(&e)) {
        d = saddle(d, s->p, s->q);
        ++cert.saddles;
      } else if (std::holds_alternative<BirthEvent>(e)) {
        d = birth(d);
        ++cert.births;
      } else if (const auto* k = std::get_if<DeathEvent>(&e)) {
        d = death(d, k->circle);
        ++cert.deaths;
      } else if (const auto* mv = std::get_if<MoveEvent>(&e)) {
        d = apply_move(d, mv->move);
      } else {
        d = simplify(d);
      }
    } catch (const std::exception& ex) {
      throw MovieError(step, format_event(e) + ": " + ex.what());
    }
  }
  // connected surface with one boundary circle at the start and k at the end
  const int excess = cert.saddles - cert.births - cert.deaths - (d.circle_count() - 1);
  if (excess < 0 || excess % 2 != 0) {
    throw MovieError(step, "saddles, births and deaths give genus " + std::to_string(excess) + "/2");
  }
  cert.genus = excess / 2;
  cert.terminal = std::move(d);
  return cert;
}

std::string certificate_line(const CobordismCertificate& c) {
  return "genus=" + std::to_string(c.genus) + " terminal=" + (c.unknot_terminal() ? "unknot" : emit_code(c.terminal)) +
         " slice=" + (c.slice() ? "yes" : "no");
}

// ---------------------------------------------------------------------------
// Bounds

SliceStatus slice_status(const GaussDiagram& d, const SliceContext& ctx) {
  if (!d.is_knot()) throw DiagramError("slice_status needs a single-circle diagram");
  const GaussDiagram s = simplify(d);
  if (s.is_unknot()) return SliceStatus::slice;
  if (ctx.slice_list.size() > 0 && equivalent_to_listed(s, ctx.slice_list, ctx.use_symmetry)) {
    return SliceStatus::slice;
  }
  if (ctx.use_slice_q && s.chord_count() <= 4 && f_polynomial(s) == LaurentPoly::constant(1) &&
      graded_genus(s) == 0) {
    return SliceStatus::slice;
  }
  return SliceStatus::unknown;
}

bool classical_diagram(const GaussDiagram& d) {
  if (!d.is_knot()) throw DiagramError("classical_diagram needs a single-circle diagram");
  const int n = d.chord_count();
  if (n == 0) return true;
  const auto& w = d.circle(0);
  const int len = static_cast<int>(w.size());
  // Half-edge h at a crossing: edge index*2 + (0 = edge leaves the crossing, 1 = enters it).
  // Counterclockwise order around a positive crossing: over-out, under-out, over-in, under-in.
  std::vector<std::array<int, 4>> ccw(static_cast<std::size_t>(len));
  std::vector<int> crossing_of(static_cast<std::size_t>(len));
  std::map<int, int> tail_at, head_at;
  for (int i = 0; i < len; ++i) (w[static_cast<std::size_t>(i)].end == End::tail ? tail_at : head_at)[w[static_cast<std::size_t>(i)].chord] = i;
  // position of each half-edge in its crossing's rotation, keyed by half-edge
  std::vector<std::pair<int, int>> where(static_cast<std::size_t>(2 * len));
  std::vector<std::array<int, 4>> rotation;
  for (const auto& ch : d.chords()) {
    const int t = tail_at.at(ch.id), h = head_at.at(ch.id);
    const int over_out = 2 * t, over_in = 2 * mod(t - 1, len) + 1;
    const int under_out = 2 * h, under_in = 2 * mod(h - 1, len) + 1;
    const std::array<int, 4> r = ch.sign > 0 ? std::array<int, 4>{over_out, under_out, over_in, under_in}
                                             : std::array<int, 4>{under_out, over_out, under_in, over_in};
    const int v = static_cast<int>(rotation.size());
    rotation.push_back(r);
    for (int k = 0; k < 4; ++k) where[static_cast<std::size_t>(r[static_cast<std::size_t>(k)])] = {v, k};
  }
  // A dart is a half-edge we arrive through; the next dart leaves by the
  // clockwise neighbour and arrives through the far end of that edge.
  std::vector<bool> seen(static_cast<std::size_t>(2 * len), false);
  int faces = 0;
  for (int start = 0; start < 2 * len; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    ++faces;
    for (int h = start; !seen[static_cast<std::size_t>(h)];) {
      seen[static_cast<std::size_t>(h)] = true;
      const auto [v, k] = where[static_cast<std::size_t>(h)];
      const int leave = rotation[static_cast<std::size_t>(v)][static_cast<std::size_t>((k + 3) % 4)];
      const int edge = leave / 2;
      h = (leave % 2 == 0) ? 2 * edge + 1 : 2 * edge;
    }
  }
  const int genus2 = 2 + n - faces;
  return genus2 == 0;
}

long knot_determinant(const GaussDiagram& d) {
  // |V(-1)| with t = A^-4; only exponents divisible by 4 occur for classical knots
  long total = 0;
  const LaurentPoly f = f_polynomial(d);
  for (const auto& [e, c] : f.terms()) {
    if (e % 4 != 0) throw DiagramError("knot_determinant: f-polynomial is not a polynomial in A^4");
    total += ((e / 4) % 2 == 0 ? 1 : -1) * c;
  }
  return std::labs(total);
}

namespace {

bool perfect_square(long v) {
  const long r = std::lround(std::sqrt(static_cast<double>(v)));
  for (long s = std::max(0L, r - 1); s <= r + 1; ++s)
    if (s * s == v) return true;
  return false;
}

std::string op_tag(ArrowOp op, int chord) { return std::string(to_string(op)) + " " + std::to_string(chord); }

}  // namespace

BoundResult slice_genus_bounds(const GaussDiagram& input, const SliceContext& ctx) {
  if (!input.is_knot()) throw DiagramError("slice_genus_bounds needs a single-circle diagram");
  // method tags number chords 1..n in code order
  const GaussDiagram d = parse_gauss_code(emit_code(input));
  const int n = d.chord_count();
  if (n > ctx.max_chords) {
    throw DiagramError("slice_genus_bounds: " + std::to_string(n) + " chords exceeds the limit of " +
                       std::to_string(ctx.max_chords));
  }
  if (simplify(d).is_unknot()) return {0, 0, "SLICE"};

  const int theta = graded_genus(d);
  int lower = (theta + 1) / 2;
  if (classical_diagram(d) && !perfect_square(knot_determinant(d))) lower = std::max(lower, 1);

  auto checked = [&](BoundResult r) {
    if (r.lower > r.upper) {
      throw std::logic_error("slice_genus_bounds: lower bound " + std::to_string(r.lower) + " exceeds upper bound " +
                             std::to_string(r.upper) + " (" + r.method + ")");
    }
    return r;
  };

  if (d.one_signed()) {
    const int g = dkk_slice_genus(d);
    return checked({std::max(lower, g), g, "DKK=" + std::to_string(g)});
  }
  int upper = (n - 1) / 2;

  if (slice_status(d, ctx) == SliceStatus::slice) return checked({lower, 0, "SLICE"});

  std::vector<int> ids;
  for (const auto& ch : d.chords()) ids.push_back(ch.id);

  for (ArrowOp op : kArrowOps) {
    for (int x : ids) {
      if (slice_status(arrow_op(d, op, x), ctx) == SliceStatus::slice) {
        return checked({lower, std::min(upper, 1), op_tag(op, x)});
      }
    }
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (!chords_intersect(d, ids[i], ids[j])) continue;
      if (slice_status(crossed_saddle(d, ids[i], ids[j]), ctx) == SliceStatus::slice) {
        return checked({lower, std::min(upper, 1),
                        "SMOOTH " + std::to_string(ids[i]) + " & " + std::to_string(ids[j])});
      }
    }
  }
  if (ctx.genus2) {
    for (ArrowOp op1 : kArrowOps) {
      for (int x : ids) {
        const GaussDiagram once = simplify(arrow_op(d, op1, x));
        for (ArrowOp op2 : kArrowOps) {
          for (const auto& ch : once.chords()) {
            if (slice_status(arrow_op(once, op2, ch.id), ctx) == SliceStatus::slice) {
              return checked({lower, std::min(upper, 2), op_tag(op1, x) + " & " + op_tag(op2, ch.id)});
            }
          }
        }
      }
    }
  }
  return checked({lower, upper, "!"});
}

// ---------------------------------------------------------------------------
// Materialized movies

namespace {

struct Replay {
  GaussDiagram diagram;
  Movie movie;

  void push(MovieEvent e) {
    if (const auto* s = std::get_if<SaddleEvent>(&e)) {
      diagram = saddle(diagram, s->p, s->q);
    } else if (const auto* mv = std::get_if<MoveEvent>(&e)) {
      diagram = apply_move(diagram, mv->move);
    } else if (std::holds_alternative<SimplifyEvent>(e)) {
      diagram = simplify(diagram);
    } else {
      throw std::logic_error("materialize: unexpected event");
    }
    movie.events.push_back(std::move(e));
  }
};

// Genus-one cobordism for an arrow operation on chord x of a knot. The
// replacement chord keeps the id x.
void push_arrow_op(Replay& r, ArrowOp op, int x) {
  const GaussDiagram& d = r.diagram;
  const Span s = span_of(d, x);
  const int len = static_cast<int>(d.circle(0).size());
  const End at_first = d.circle(0)[static_cast<std::size_t>(s.first)].end;
  const bool reverse = op == ArrowOp::cc || op == ArrowOp::orient;
  const int sign = (op == ArrowOp::cc || op == ArrowOp::sc) ? -d.sign(x) : d.sign(x);
  const End new_first = reverse ? opposite(at_first) : at_first;

  if (s.second == s.first + 1 || (s.first == 0 && s.second == len - 1)) {
    // the chord is already a kink
    const int at = s.second == s.first + 1 ? s.first : len - 1;
    r.push(MoveEvent{kink_removal(x)});
    if (op == ArrowOp::cd) return;
    const bool tail_first = (at == s.first) == (new_first == End::tail);
    r.push(MoveEvent{kink_insertion(x, {0, std::min(at, len - 2)}, sign, tail_first)});
    return;
  }

  // circle 0 keeps the arc strictly between x's endpoints, circle 1 the rest
  r.push(SaddleEvent{{0, s.first + 1}, {0, s.second}});
  r.push(MoveEvent{kink_removal(x)});
  if (op == ArrowOp::cd) {
    r.push(SaddleEvent{{0, 0}, {1, 0}});
    return;
  }
  // the kink's first endpoint ends up at x's far end, its second at the near end
  r.push(MoveEvent{kink_insertion(x, {0, 0}, sign, new_first == End::head)});
  r.push(SaddleEvent{{0, 1}, {1, 0}});
}

void push_crossed_saddle(Replay& r, int x, int y) {
  const Span sx = span_of(r.diagram, x);
  r.push(SaddleEvent{{0, sx.first}, {0, sx.second + 1}});
  r.push(MoveEvent{kink_removal(x)});
  auto find_in = [&](int circle) {
    const auto& w = r.diagram.circle(circle);
    for (int i = 0; i < static_cast<int>(w.size()); ++i)
      if (w[static_cast<std::size_t>(i)].chord == y) return i;
    throw std::logic_error("materialize: crossed saddle lost a chord");
  };
  const int c_at = find_in(0);
  const int d_at = find_in(1);
  r.push(SaddleEvent{{0, c_at}, {1, d_at + 1}});
  r.push(MoveEvent{kink_removal(y)});
}

std::pair<ArrowOp, int> parse_op_tag(const std::vector<std::string>& tok, std::size_t at, const std::string& method) {
  if (at + 1 >= tok.size()) throw std::invalid_argument("malformed method tag '" + method + "'");
  const auto op = parse_arrow_op(tok[at]);
  if (!op) throw std::invalid_argument("malformed method tag '" + method + "'");
  return {*op, parse_int(tok[at + 1])};
}

}  // namespace

Movie materialize_movie(const GaussDiagram& d, const std::string& method) {
  if (!d.is_knot()) throw DiagramError("materialize_movie needs a single-circle diagram");
  // tags number chords 1..n in code order, as does the movie's code
  const GaussDiagram start = parse_gauss_code(emit_code(d));
  auto chord = [&](const std::string& token) {
    const int id = parse_int(token);
    if (!start.has_chord(id)) throw std::invalid_argument("method tag names missing chord " + token);
    return id;
  };

  Replay r{start, Movie{emit_code(d), {}}};
  const auto tok = split_words(method);
  if (tok.empty()) throw std::invalid_argument("empty method tag");

  if (tok[0] == "SMOOTH" && tok.size() == 4 && tok[2] == "&") {
    push_crossed_saddle(r, chord(tok[1]), chord(tok[3]));
  } else if (parse_arrow_op(tok[0])) {
    if (tok.size() != 2 && !(tok.size() == 5 && tok[2] == "&")) {
      throw std::invalid_argument("malformed method tag '" + method + "'");
    }
    const auto [op1, x_raw] = parse_op_tag(tok, 0, method);
    const int x = chord(std::to_string(x_raw));
    push_arrow_op(r, op1, x);
    if (tok.size() == 5) {
      r.push(SimplifyEvent{});
      const auto [op2, y_raw] = parse_op_tag(tok, 3, method);
      // the second chord keeps its id through the first operation
      const int y = y_raw;
      if (!r.diagram.has_chord(y)) throw std::invalid_argument("method tag chord vanished: '" + method + "'");
      push_arrow_op(r, op2, y);
    }
  } else if (tok[0] != "SLICE" && tok[0] != "!" && tok[0].rfind("DKK=", 0) != 0) {
    throw std::invalid_argument("unknown method tag '" + method + "'");
  }
  r.push(SimplifyEvent{});
  return r.movie;
}

}  // namespace vkslice

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vkslice/gauss_diagram.hpp"

namespace vkslice {

/// Orientation-compatible resplice at two gaps. Gaps on one circle split it
/// (the new circle is appended last and holds the part from `q` round to
/// `p`); gaps on two circles merge them into the lower-numbered one.
GaussDiagram saddle(const GaussDiagram& d, Gap p, Gap q);

GaussDiagram birth(const GaussDiagram& d);
GaussDiagram death(const GaussDiagram& d, int circle);

enum class ArrowOp { cd, cc, sc, orient };

std::string_view to_string(ArrowOp op);
std::optional<ArrowOp> parse_arrow_op(std::string_view token);
inline constexpr ArrowOp kArrowOps[] = {ArrowOp::cd, ArrowOp::cc, ArrowOp::sc, ArrowOp::orient};

/// cc reverses and re-signs the chord, cd deletes it, sc re-signs it, or
/// reverses it.
GaussDiagram arrow_op(const GaussDiagram& d, ArrowOp op, int chord);

/// Endpoints of x and y interleave on the (single) circle.
bool chords_intersect(const GaussDiagram& d, int x, int y);

/// Cancels two intersecting chords: a.w1.c.w2.b.w3.d.w4 becomes w2.w1.w4.w3
/// for x = (a,b), y = (c,d) with a the earlier endpoint of x.
GaussDiagram crossed_saddle(const GaussDiagram& d, int x, int y);

/// The same move built from fission, r1-, fusion, r1-.
GaussDiagram crossed_saddle_by_surgery(const GaussDiagram& d, int x, int y);

struct SaddleEvent {
  Gap p, q;
};
struct BirthEvent {};
struct DeathEvent {
  int circle = 0;
};
struct MoveEvent {
  MoveSpec move;
};
struct SimplifyEvent {};

using MovieEvent = std::variant<SaddleEvent, BirthEvent, DeathEvent, MoveEvent, SimplifyEvent>;

struct Movie {
  std::string code;
  std::vector<MovieEvent> events;
};

class MovieError : public std::runtime_error {
 public:
  MovieError(std::size_t step, const std::string& what);
  /// 1-based line of the movie text, or event number during replay.
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

Movie parse_movie(std::string_view text);
Movie read_movie_file(const std::string& path);
std::string format_event(const MovieEvent& e);
std::string format_movie(const Movie& m);

struct CobordismCertificate {
  int saddles = 0;
  int births = 0;
  int deaths = 0;
  int genus = 0;
  GaussDiagram terminal;

  bool unknot_terminal() const { return terminal.is_unknot(); }
  bool slice() const { return unknot_terminal() && genus == 0; }
};

/// Replays the movie. An illegal event throws MovieError carrying its 1-based
/// event number; so does an unknot terminal with an odd or negative s-b-d.
CobordismCertificate verify_movie(const Movie& m);

/// `genus=<g> terminal=<unknot|code> slice=<yes|no>`
std::string certificate_line(const CobordismCertificate& c);

struct SliceContext {
  CodeList slice_list;
  bool use_slice_q = true;
  bool use_symmetry = true;
  bool genus2 = false;
  int max_chords = 6;
};

enum class SliceStatus { slice, unknown };

/// One-sided: SLICE when the diagram simplifies to the unknot, matches the
/// slice list, or has at most four chords with f = 1 and theta = 0.
SliceStatus slice_status(const GaussDiagram& d, const SliceContext& ctx);

struct BoundResult {
  int lower = 0;
  int upper = 0;
  std::string method;
};

/// Fox-Milnor test for diagrams with a planar Carter surface: the
/// determinant of a slice classical knot is an odd square.
bool classical_diagram(const GaussDiagram& d);
long knot_determinant(const GaussDiagram& d);

BoundResult slice_genus_bounds(const GaussDiagram& d, const SliceContext& ctx);

/// Movie realizing the cobordism behind a method tag of slice_genus_bounds.
/// Replaying it ends on a diagram whose slice_status is SLICE; its genus
/// equals the claimed upper bound. Tags without surgery (SLICE, DKK, !)
/// yield a lone `simplify`.
Movie materialize_movie(const GaussDiagram& d, const std::string& method);

}  // namespace vkslice

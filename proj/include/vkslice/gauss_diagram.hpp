#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace vkslice {

/// Raised when a Gauss code or a diagram fails validation.
class DiagramError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a Reidemeister move or surgery does not match the diagram.
class IllegalMove : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A chord runs from its tail (the over-crossing pass, `O`) to its head
// (the under-crossing pass, `U`).
enum class End : std::uint8_t { tail, head };

constexpr End opposite(End e) { return e == End::tail ? End::head : End::tail; }

struct Endpoint {
  int chord = 0;
  End end = End::tail;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

struct Chord {
  int id = 0;
  int sign = 1;

  friend bool operator==(const Chord&, const Chord&) = default;
};

/// A position on a circle. Gap `index` lies immediately before element
/// `index` of the circle's endpoint sequence; a chordless circle has the
/// single gap 0.
struct Gap {
  int circle = 0;
  int index = 0;

  friend bool operator==(const Gap&, const Gap&) = default;
};

struct Location {
  int circle = 0;
  int index = 0;
};

/// Gauss diagram of a virtual knot or link. Circles are oriented
/// counterclockwise and stored as cyclic endpoint sequences read from the
/// basepoint (element 0 of circle 0). Chord ids are stable labels; they need
/// not be dense.
class GaussDiagram {
 public:
  /// The unknot: one chordless circle.
  GaussDiagram();
  GaussDiagram(std::vector<std::vector<Endpoint>> circles, std::vector<Chord> chords);

  const std::vector<std::vector<Endpoint>>& circles() const { return circles_; }
  const std::vector<Chord>& chords() const { return chords_; }
  const std::vector<Endpoint>& circle(int c) const { return circles_.at(static_cast<std::size_t>(c)); }

  int chord_count() const { return static_cast<int>(chords_.size()); }
  int circle_count() const { return static_cast<int>(circles_.size()); }
  bool is_knot() const { return circles_.size() == 1; }
  bool is_unknot() const { return circles_.size() == 1 && chords_.empty(); }
  bool is_trivial_link() const { return chords_.empty(); }

  bool has_chord(int id) const;
  int sign(int id) const;
  Location locate(int id, End end) const;

  /// Chord ids in order of first appearance, reading circle 0 from the
  /// basepoint, then circle 1, and so on.
  std::vector<int> chords_in_code_order() const;
  int next_chord_id() const;
  bool one_signed() const;

  friend bool operator==(const GaussDiagram&, const GaussDiagram&) = default;

 private:
  std::vector<std::vector<Endpoint>> circles_;
  std::vector<Chord> chords_;  // sorted by id
};

/// Parses a Green-style signed Gauss code such as `O1-O2-U1-U2-`. The empty
/// string is the unknot.
GaussDiagram parse_gauss_code(std::string_view text);

/// Code read from the current basepoint with chords relabelled 1..n in order
/// of first appearance. Multi-circle diagrams join circles with `|`.
std::string emit_code(const GaussDiagram& d);

/// Lexicographically least code over all basepoint rotations.
std::string emit_canonical_code(const GaussDiagram& d);

/// Same diagram, basepoint moved forward by `shift` positions on circle 0.
GaussDiagram rotate_basepoint(const GaussDiagram& d, int shift);

/// Element of the symmetry group generated by `rev` (reverse every circle),
/// `mir` (negate every sign and reverse every chord) and `ou` (reverse every
/// chord). The generators commute, so an element is a subset of them.
struct Symmetry {
  bool rev = false;
  bool mir = false;
  bool ou = false;

  static std::vector<Symmetry> all();
  std::string name() const;
};

GaussDiagram apply_symmetry(const GaussDiagram& d, Symmetry g);

/// Sorted, deduplicated canonical codes of the diagram's symmetry orbit.
std::vector<std::string> orbit_codes(const GaussDiagram& d, bool use_symmetry = true);

/// Greedy r1-/r2- reduction to a fixpoint. Circles are never deleted.
GaussDiagram simplify(const GaussDiagram& d);

enum class MoveKind { r1_minus, r1_plus, r2_minus, r2_plus, r3 };

/// One Reidemeister move. Only the fields used by `kind` are read:
///  r1-: chords[0];  r1+: gaps[0], sign, tail_first, optional chords[0] as the new id;
///  r2-: chords[0..1];  r2+: gaps[0] (tails), gaps[1] (heads), sign of the
///  first new chord, antiparallel;  r3: chords[0..2].
struct MoveSpec {
  MoveKind kind = MoveKind::r1_minus;
  std::vector<int> chords;
  std::vector<Gap> gaps;
  int sign = 1;
  bool tail_first = true;
  bool antiparallel = false;
};

GaussDiagram apply_move(const GaussDiagram& d, const MoveSpec& m);

/// True when chords x and y have opposite signs and both their tails and
/// their heads sit in adjacent positions.
bool r2_removable(const GaussDiagram& d, int x, int y);
bool r1_removable(const GaussDiagram& d, int x);

/// Chord triples on which an r3 move is legal, each sorted ascending.
std::vector<std::vector<int>> r3_candidates(const GaussDiagram& d);

GaussDiagram connected_sum(const GaussDiagram& a, const GaussDiagram& b);

/// A set of canonical codes, e.g. a list of known slice knots.
class CodeList {
 public:
  CodeList() = default;
  explicit CodeList(const std::vector<std::string>& codes);

  void add(const GaussDiagram& d);
  void add_code(std::string_view code) { add(parse_gauss_code(code)); }
  void merge(const CodeList& other) { codes_.insert(other.codes_.begin(), other.codes_.end()); }
  bool contains(const std::string& canonical) const { return codes_.contains(canonical); }
  std::size_t size() const { return codes_.size(); }

 private:
  std::unordered_set<std::string> codes_;
};

/// Sound, incomplete recognition: after `simplify`, does some symmetry image
/// of `d` have its canonical code in `list`? Returns the matching code.
std::optional<std::string> equivalent_to_listed(const GaussDiagram& d, const CodeList& list,
                                                 bool use_symmetry = true);

}  // namespace vkslice

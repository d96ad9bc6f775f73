#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "vkslice/invariants.hpp"

using namespace vkslice;

TEST_CASE("parse and emit") {
  const auto d = parse_gauss_code("O1-O2-U1-U2-");
  CHECK(d.chord_count() == 2);
  CHECK(d.circle_count() == 1);
  CHECK(d.sign(1) == -1);
  CHECK(emit_code(d) == "O1-O2-U1-U2-");
  CHECK(parse_gauss_code("").is_unknot());
  CHECK(emit_code(GaussDiagram()).empty());

  // labels need not be dense; emit relabels by first appearance
  CHECK(emit_code(parse_gauss_code("O7+U3-O3-U7+")) == "O1+U2-O2-U1+");
}

TEST_CASE("parse rejects malformed codes") {
  CHECK_THROWS_AS(parse_gauss_code("O1+U1-"), DiagramError);
  CHECK_THROWS_AS(parse_gauss_code("O1+O1+"), DiagramError);
  CHECK_THROWS_AS(parse_gauss_code("O1+"), DiagramError);
  CHECK_THROWS_AS(parse_gauss_code("X1+U1+"), DiagramError);
  CHECK_THROWS_AS(parse_gauss_code("O1U1+"), DiagramError);
  CHECK_THROWS_AS(parse_gauss_code("O+U+"), DiagramError);
}

TEST_CASE("canonical code ignores the basepoint") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = corpus::random_diagram(rng, 1 + trial % 6);
    const auto canon = emit_canonical_code(d);
    for (int s = 0; s < 2 * d.chord_count(); ++s) {
      const auto r = rotate_basepoint(d, s);
      CHECK(emit_canonical_code(r) == canon);
      CHECK(emit_canonical_code(parse_gauss_code(emit_code(r))) == canon);
    }
  }
}

TEST_CASE("symmetry generators are involutions") {
  std::mt19937 rng(12);
  CHECK(Symmetry::all().size() == 8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = corpus::random_diagram(rng, 1 + trial % 5);
    for (auto g : {Symmetry{true, false, false}, Symmetry{false, true, false}, Symmetry{false, false, true}}) {
      const auto once = apply_symmetry(d, g);
      CHECK(once.chord_count() == d.chord_count());
      CHECK(once.circle_count() == d.circle_count());
      CHECK(emit_canonical_code(apply_symmetry(once, g)) == emit_canonical_code(d));
    }
  }
}

TEST_CASE("mir flips signs and chord directions") {
  const auto d = parse_gauss_code("O1-O2-U1-U2-");
  CHECK(emit_canonical_code(apply_symmetry(d, {false, true, false})) == emit_canonical_code(parse_gauss_code("U1+U2+O1+O2+")));
}

TEST_CASE("r1 and r2 moves") {
  const auto kink = parse_gauss_code(corpus::kKink);
  MoveSpec m;
  m.kind = MoveKind::r1_minus;
  m.chords = {1};
  CHECK(apply_move(kink, m).is_unknot());

  MoveSpec add;
  add.kind = MoveKind::r1_plus;
  add.gaps = {{0, 0}};
  add.sign = -1;
  add.tail_first = false;
  const auto k2 = apply_move(GaussDiagram(), add);
  CHECK(emit_code(k2) == "U1-O1-");
  add.chords = {5};
  CHECK(apply_move(GaussDiagram(), add).has_chord(5));

  const auto two = parse_gauss_code("O1-O2-U1-U2-");
  m.chords = {1};
  CHECK_THROWS_AS(apply_move(two, m), IllegalMove);

  const auto pair = parse_gauss_code("O1+O2-U1+U2-");
  CHECK(r2_removable(pair, 1, 2));
  MoveSpec r2;
  r2.kind = MoveKind::r2_minus;
  r2.chords = {1, 2};
  CHECK(apply_move(pair, r2).is_unknot());
  CHECK_FALSE(r2_removable(two, 1, 2));
  CHECK_THROWS_AS(apply_move(two, r2), IllegalMove);

  MoveSpec grow;
  grow.kind = MoveKind::r2_plus;
  grow.gaps = {{0, 0}, {0, 2}};
  grow.sign = 1;
  const auto bigger = apply_move(two, grow);
  CHECK(bigger.chord_count() == 4);
  CHECK(emit_canonical_code(simplify(bigger)) == emit_canonical_code(two));
}

TEST_CASE("simplify is idempotent and never grows") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = corpus::random_diagram(rng, 1 + trial % 6);
    const auto s = simplify(d);
    CHECK(s.chord_count() <= d.chord_count());
    CHECK(simplify(s) == s);
  }
  CHECK(simplify(parse_gauss_code("O1+U1+O2-O3+U2-U3+")).is_unknot());
}

TEST_CASE("code lists and symmetry lookup") {
  CodeList list(std::vector<std::string>{""});
  CHECK(equivalent_to_listed(GaussDiagram(), list).has_value());
  CHECK(equivalent_to_listed(parse_gauss_code(corpus::kKink), list).has_value());

  CodeList trefoil(std::vector<std::string>{corpus::kTrefoil});
  CHECK_FALSE(equivalent_to_listed(parse_gauss_code(corpus::kTwoOne), trefoil).has_value());

  const auto slice = parse_gauss_code("O1+O2-U1+U3-O4+O3-U2-U4+");
  CodeList one;
  one.add(slice);
  const auto mirrored = apply_symmetry(slice, {false, true, false});
  CHECK(equivalent_to_listed(mirrored, one).has_value());
  CHECK_FALSE(equivalent_to_listed(mirrored, one, false).has_value());
}

TEST_CASE("connected sum adds writhe polynomials") {
  std::mt19937 rng(14);
  const auto diagrams = corpus::census_diagrams(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto& a = diagrams[static_cast<std::size_t>(corpus::pick(rng, static_cast<int>(diagrams.size())))];
    const auto& b = diagrams[static_cast<std::size_t>(corpus::pick(rng, static_cast<int>(diagrams.size())))];
    const auto sum = connected_sum(a, b);
    CHECK(sum.chord_count() == a.chord_count() + b.chord_count());
    CHECK(writhe_polynomial(sum) == writhe_polynomial(a) + writhe_polynomial(b));
  }
}

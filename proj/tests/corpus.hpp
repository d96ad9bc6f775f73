#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vkslice/gauss_diagram.hpp"
#include "vkslice/tabulator.hpp"

namespace corpus {

inline const std::string kDataDir = VKSLICE_DATA_DIR;

// small fixed diagrams
inline const char* const kKink = "O1+U1+";
inline const char* const kTwoOne = "O1+O2+U1+U2+";
inline const char* const kTrefoil = "O1+U2+O3+U1+O2+U3+";
inline const char* const kFigureEight = "O1-U2-O3+U4+O2-U1-O4+U3+";
inline const char* const kWrithePolyExample = "O1-O2-O3+U2-U4+U5-U1-O6+O5-U6+O4+U3+";

inline const std::vector<vkslice::TableEntry>& census() {
  static const auto table = vkslice::load_table_file(kDataDir + "/census/knots.txt");
  return table;
}

inline std::vector<vkslice::GaussDiagram> census_diagrams(int max_n = 99) {
  std::vector<vkslice::GaussDiagram> out;
  for (const auto& e : census())
    if (e.diagram->chord_count() <= max_n) out.push_back(*e.diagram);
  return out;
}

// uniform over endpoint orders and signs; not necessarily reduced
inline vkslice::GaussDiagram random_diagram(std::mt19937& rng, int n) {
  std::vector<vkslice::Endpoint> w;
  std::vector<vkslice::Chord> chords;
  for (int c = 1; c <= n; ++c) {
    w.push_back({c, vkslice::End::tail});
    w.push_back({c, vkslice::End::head});
    chords.push_back({c, (rng() & 1) ? 1 : -1});
  }
  std::shuffle(w.begin(), w.end(), rng);
  return vkslice::GaussDiagram({w}, chords);
}

inline int pick(std::mt19937& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

// random move on a single-circle diagram, retried until one is legal
inline std::optional<vkslice::MoveSpec> random_legal_move(std::mt19937& rng, const vkslice::GaussDiagram& d,
                                                          int max_chords = 7) {
  using vkslice::MoveKind;
  const auto& ids = d.chords();
  const int len = static_cast<int>(d.circle(0).size());
  const int gaps = std::max(len, 1);
  for (int attempt = 0; attempt < 200; ++attempt) {
    vkslice::MoveSpec m;
    switch (pick(rng, 5)) {
      case 0:
        if (ids.empty()) continue;
        m.kind = MoveKind::r1_minus;
        m.chords = {ids[static_cast<std::size_t>(pick(rng, static_cast<int>(ids.size())))].id};
        break;
      case 1:
        if (d.chord_count() >= max_chords) continue;
        m.kind = MoveKind::r1_plus;
        m.gaps = {{0, pick(rng, gaps)}};
        m.sign = (rng() & 1) ? 1 : -1;
        m.tail_first = rng() & 1;
        break;
      case 2:
        if (ids.size() < 2) continue;
        m.kind = MoveKind::r2_minus;
        m.chords = {ids[static_cast<std::size_t>(pick(rng, static_cast<int>(ids.size())))].id,
                    ids[static_cast<std::size_t>(pick(rng, static_cast<int>(ids.size())))].id};
        break;
      case 3:
        if (d.chord_count() + 2 > max_chords) continue;
        m.kind = MoveKind::r2_plus;
        m.gaps = {{0, pick(rng, gaps)}, {0, pick(rng, gaps)}};
        m.sign = (rng() & 1) ? 1 : -1;
        m.antiparallel = rng() & 1;
        break;
      default: {
        const auto cands = vkslice::r3_candidates(d);
        if (cands.empty()) continue;
        m.kind = MoveKind::r3;
        m.chords = cands[static_cast<std::size_t>(pick(rng, static_cast<int>(cands.size())))];
        break;
      }
    }
    try {
      (void)vkslice::apply_move(d, m);
      return m;
    } catch (const vkslice::IllegalMove&) {
    } catch (const vkslice::DiagramError&) {
    }
  }
  return std::nullopt;
}

}  // namespace corpus

// Acceptance report: one line per criterion, then census-based checks that
// stand in for criteria whose tabulated input is missing.
//
// exit 0 all pass, 1 some computed check failed, 77 only blocked criteria failed

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "corpus.hpp"
#include "oracles.hpp"
#include "vkslice/cobordism.hpp"
#include "vkslice/graded.hpp"
#include "vkslice/invariants.hpp"
#include "vkslice/tabulator.hpp"

using namespace vkslice;
namespace fs = std::filesystem;

namespace {

int failures = 0;
int blocked = 0;
fs::path green_dir = fs::path(corpus::kDataDir) / "green";

void report(const std::string& id, bool ok, const std::string& what) {
  std::cout << (ok ? "PASS " : "FAIL ") << id << "  " << what << '\n';
  if (!ok) ++failures;
}

void report_blocked(const std::string& id, const std::string& what) {
  std::cout << "FAIL(blocked) " << id << "  " << what << '\n';
  ++blocked;
}

struct ExpectedRow {
  std::string name;
  int n = 0;
  int theta = 0;
  int gs_min = 0, gs_max = 0;
};

std::vector<ExpectedRow> table3() {
  std::ifstream in(std::string(VKSLICE_TEST_DIR) + "/expected/table3.txt");
  std::vector<ExpectedRow> rows;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream f(line);
    ExpectedRow r;
    f >> r.name >> r.theta >> r.gs_min >> r.gs_max;
    r.n = std::stoi(r.name.substr(0, r.name.find('.')));
    rows.push_back(r);
  }
  return rows;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << " s";
  return o.str();
}

// each event replaced by an illegal one must be rejected at its own step
bool corruption_rejected(const Movie& m, std::string& detail) {
  for (std::size_t k = 0; k < m.events.size(); ++k) {
    for (const char* bad : {"r1- 99", "death 5", "saddle 7:0 0:0", "r2- 1 1"}) {
      Movie broken = m;
      broken.events[k] = parse_movie(std::string("code \n") + bad + "\n").events[0];
      try {
        verify_movie(broken);
        detail = "step " + std::to_string(k + 1) + " '" + bad + "' accepted";
        return false;
      } catch (const MovieError& e) {
        if (e.step() != k + 1) {
          detail = "step " + std::to_string(k + 1) + " reported as " + std::to_string(e.step());
          return false;
        }
      }
    }
  }
  return true;
}

// Kuhn's algorithm; adj[i] lists the right vertices left vertex i may take
int max_matching(const std::vector<std::vector<int>>& adj, int right) {
  std::vector<int> owner(static_cast<std::size_t>(right), -1);
  int size = 0;
  for (std::size_t i = 0; i < adj.size(); ++i) {
    std::vector<bool> seen(static_cast<std::size_t>(right), false);
    std::function<bool(int)> grab = [&](int u) {
      for (int v : adj[static_cast<std::size_t>(u)]) {
        if (seen[static_cast<std::size_t>(v)]) continue;
        seen[static_cast<std::size_t>(v)] = true;
        if (owner[static_cast<std::size_t>(v)] < 0 || grab(owner[static_cast<std::size_t>(v)])) {
          owner[static_cast<std::size_t>(v)] = u;
          return true;
        }
      }
      return false;
    };
    size += grab(static_cast<int>(i));
  }
  return size;
}

// ---------------------------------------------------------------------------

struct Green {
  std::map<std::string, GaussDiagram> knots;
  CodeList slice_list;
  bool has_slice_list = false;
};

std::optional<Green> load_green(const std::vector<ExpectedRow>& expected, std::string& why) {
  const fs::path& dir = green_dir;
  if (!fs::exists(dir / "knots.txt")) {
    why = "no " + (dir / "knots.txt").string();
    return std::nullopt;
  }
  Green g;
  for (const auto& e : load_table_file((dir / "knots.txt").string())) g.knots.emplace(e.name, *e.diagram);
  for (const auto& r : expected) {
    if (!g.knots.contains(r.name)) {
      why = (dir / "knots.txt").string() + " lacks " + r.name;
      return std::nullopt;
    }
  }
  if (fs::exists(dir / "slice_list.txt")) {
    g.slice_list = load_slice_list_file((dir / "slice_list.txt").string());
    g.has_slice_list = true;
  }
  return g;
}

void criterion1(const std::optional<Green>& green, const std::vector<ExpectedRow>& expected, const std::string& why) {
  if (!green) {
    report_blocked("1", "graded genus of 116 tabulated knots: " + why);
    return;
  }
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> wrong;
  for (const auto& r : expected) {
    const int theta = graded_genus(green->knots.at(r.name));
    if (theta != r.theta) wrong.push_back(r.name + " got " + std::to_string(theta));
  }
  const double t = seconds_since(t0);
  std::string what = std::to_string(expected.size() - wrong.size()) + "/116 theta values match in " + fmt(t);
  for (std::size_t i = 0; i < std::min<std::size_t>(wrong.size(), 5); ++i) what += "; " + wrong[i];
  report("1", wrong.empty() && t < 10.0, what);
}

void criterion3_4(const std::optional<Green>& green, const std::vector<ExpectedRow>& expected, const std::string& why) {
  if (!green) {
    report_blocked("3", "slice detection on the 108 four-crossing knots: " + why);
    report_blocked("4", "slice-genus intervals of tabulated knots: " + why);
    return;
  }
  TabulateConfig config;
  if (green->has_slice_list) config.slice_lists[4] = green->slice_list;
  config.jobs = std::max(1U, std::thread::hardware_concurrency());
  std::vector<TableEntry> entries;
  for (const auto& r : expected) entries.push_back({r.name, "", 0, green->knots.at(r.name), ""});
  const auto rows = tabulate(entries, config);

  const std::set<std::string> slice_names{"4.8",  "4.55", "4.56", "4.58", "4.59", "4.71", "4.72",
                                          "4.75", "4.76", "4.77", "4.90", "4.98", "4.99"};
  std::vector<std::string> bad3, bad4;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto& e = expected[i];
    if (e.n == 4) {
      if (slice_names.contains(r.name)) {
        if (r.status != KnotStatus::slice) bad3.push_back(r.name + " not SLICE");
      } else if (r.name == "4.12") {
        if (r.status != KnotStatus::interval || r.lower != 0 || r.upper != 1) bad3.push_back("4.12 not [0,1]");
      } else if (r.lower < 1) {
        bad3.push_back(r.name + " lower " + std::to_string(r.lower));
      }
    }
    if (e.gs_min == e.gs_max) {
      if (r.lower > e.gs_min || r.upper < e.gs_min)
        bad4.push_back(r.name + " [" + std::to_string(r.lower) + "," + std::to_string(r.upper) + "]");
      if (green->knots.at(r.name).one_signed() && (r.lower != e.gs_min || r.upper != e.gs_min || !r.method.starts_with("DKK")))
        bad4.push_back(r.name + " not exact by DKK");
    }
  }
  std::string w3 = "13 SLICE, 4.12 [0,1], others lower >= 1";
  for (std::size_t i = 0; i < std::min<std::size_t>(bad3.size(), 5); ++i) w3 += "; " + bad3[i];
  if (!green->has_slice_list) w3 += " (no slice_list.txt)";
  report("3", bad3.empty(), w3);
  std::string w4 = "intervals contain the tabulated slice genus";
  for (std::size_t i = 0; i < std::min<std::size_t>(bad4.size(), 5); ++i) w4 += "; " + bad4[i];
  report("4", bad4.empty(), w4);
}

void criterion6() {
  const fs::path dir = green_dir / "movies";
  const fs::path m471 = dir / "4.71.movie";
  const fs::path m31 = dir / "3.1.movie";
  if (!fs::exists(m471) || !fs::exists(m31)) {
    report_blocked("6", "movies for 4.71 and 3.1: no " + (fs::exists(m471) ? m31 : m471).string());
    return;
  }
  std::string detail;
  bool ok = true;
  try {
    const auto a = read_movie_file(m471.string());
    const auto b = read_movie_file(m31.string());
    const auto ca = verify_movie(a);
    const auto cb = verify_movie(b);
    if (!(ca.genus == 0 && ca.slice())) {
      ok = false;
      detail += "; 4.71: " + certificate_line(ca);
    }
    if (!(cb.genus == 1 && cb.unknot_terminal())) {
      ok = false;
      detail += "; 3.1: " + certificate_line(cb);
    }
    std::string why;
    if (!corruption_rejected(a, why)) {
      ok = false;
      detail += "; 4.71 corruption: " + why;
    }
    if (!corruption_rejected(b, why)) {
      ok = false;
      detail += "; 3.1 corruption: " + why;
    }
  } catch (const std::exception& e) {
    ok = false;
    detail += std::string("; ") + e.what();
  }
  report("6", ok, "4.71 genus 0 slice, 3.1 genus 1, corrupted events rejected" + detail);
}

// ---------------------------------------------------------------------------
// criteria 2 and 5 need no tabulated input

void criterion2(const std::vector<KnotRecord>& census_rows, double seconds) {
  std::map<int, std::pair<int, int>> zero;  // n -> (theta = 0, total)
  for (const auto& r : census_rows) {
    ++zero[r.n].second;
    zero[r.n].first += r.theta == 0;
  }
  const bool ok = zero[3] == std::pair{1, 7} && zero[4] == std::pair{15, 108};
  report("2", ok,
         "theta = 0 on " + std::to_string(zero[3].first) + " of " + std::to_string(zero[3].second) +
             " three-crossing and " + std::to_string(zero[4].first) + " of " + std::to_string(zero[4].second) +
             " four-crossing knots (census classes, " + fmt(seconds) + ")");
}

void criterion5() {
  std::mt19937 rng(2024);
  std::vector<std::string> bad;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok && bad.size() < 5) bad.push_back(what);
  };
  // 1000 random diagrams
  for (int trial = 0; trial < 1000; ++trial) {
    const auto d = corpus::random_diagram(rng, 1 + trial % 6);
    const auto t = graded_matrix(d);
    bool zero_diag = true;
    for (int i = 0; i < t.size(); ++i) zero_diag = zero_diag && t.beta(i, i) == 0;
    expect(t.beta.is_skew_symmetric() && zero_diag, "beta not skew: " + emit_code(d));
    expect(exact_rank(t.beta) % 2 == 0, "odd rank: " + emit_code(d));
    const int theta = graded_genus(t);
    const int shift = 1 + corpus::pick(rng, 2 * d.chord_count());
    expect(graded_genus(rotate_basepoint(d, shift)) == theta, "rotation changes theta: " + emit_code(d));
    for (auto g : {Symmetry{true, false, false}, Symmetry{false, true, false}, Symmetry{false, false, true}})
      expect(graded_genus(apply_symmetry(d, g)) == theta, "symmetry " + g.name() + " changes theta: " + emit_code(d));
    expect(is_flat_planar(d) == t.beta.is_zero(), "planarity mismatch: " + emit_code(d));
    expect(f_polynomial(d) == oracle::state_sum_f(d), "f vs state sum: " + emit_code(d));
    if (d.one_signed() && !is_flat_planar(d)) expect(theta != 0, "one-signed theta 0: " + emit_code(d));
    for (const auto& cx : d.chords()) {
      for (const auto& cy : d.chords()) {
        if (cx.id >= cy.id || !chords_intersect(d, cx.id, cy.id)) continue;
        const auto cs = crossed_saddle(d, cx.id, cy.id);
        expect(cs.circle_count() == 1 && cs.chord_count() == d.chord_count() - 2, "crossed saddle: " + emit_code(d));
      }
    }
  }
  // 500 random legal moves
  const auto census = corpus::census_diagrams(4);
  int moves = 0;
  for (int walk = 0; moves < 500; ++walk) {
    auto d = census[static_cast<std::size_t>(walk) % census.size()];
    const int theta = graded_genus(d);
    for (int step = 0; step < 5; ++step) {
      const auto m = corpus::random_legal_move(rng, d, 7);
      if (!m) break;
      d = apply_move(d, *m);
      ++moves;
      expect(graded_genus(d) == theta, "move changes theta: " + emit_code(d));
    }
  }
  // corpus
  for (const auto& d : corpus::census_diagrams()) {
    expect(is_flat_planar(d) == graded_matrix(d).beta.is_zero(), "planarity mismatch: " + emit_code(d));
    expect(f_polynomial(d) == oracle::state_sum_f(d), "f vs state sum: " + emit_code(d));
    const auto t = graded_matrix(d);
    expect(concordance_obstruction_bound(t, t) == 0, "self-concordance: " + emit_code(d));
  }
  std::string what = "skew beta, even rank, theta invariance (rotation, symmetries, " + std::to_string(moves) +
                     " moves), planarity, one-signed theta, crossed saddle, f against state sums, self-concordance";
  for (const auto& b : bad) what += "; " + b;
  report("5", bad.empty(), what);
}

void criterion7() {
  report_blocked("7", "six-crossing pipeline (non-gating): needs the 90235 six-crossing codes of the tabulated census");
}

// ---------------------------------------------------------------------------
// census stand-ins

void census_proxies(const std::vector<KnotRecord>& rows, const std::vector<ExpectedRow>& expected) {
  const auto& census = corpus::census();

  // theta multisets per crossing number
  std::map<int, std::multiset<int>> got, want;
  for (const auto& r : rows) got[r.n].insert(r.theta);
  for (const auto& e : expected) want[e.n].insert(e.theta);
  report("1-census", got == want, "theta multisets at 2, 3, 4 crossings equal the tabulated ones");

  // knots identifiable without names
  auto row_of = [&](const std::string& code) -> const KnotRecord* {
    const auto canon = orbit_codes(parse_gauss_code(code));
    for (const auto& r : rows)
      if (orbit_codes(parse_gauss_code(r.code)) == canon) return &r;
    return nullptr;
  };
  const KnotRecord* two = row_of(corpus::kTwoOne);
  const KnotRecord* trefoil = row_of(corpus::kTrefoil);
  const KnotRecord* eight = row_of(corpus::kFigureEight);
  int theta2_at3 = 0, classical3 = 0, classical4 = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].n == 3 && rows[i].theta == 2) {
      ++theta2_at3;
      if (rows[i].lower > 1 || rows[i].upper < 1) theta2_at3 = 99;
    }
    if (!classical_diagram(*census[i].diagram)) continue;
    if (rows[i].n == 3) ++classical3;
    if (rows[i].n == 4) ++classical4;
  }
  const bool ident = two && two->theta == 1 && two->lower == 1 && two->upper == 1 && trefoil && trefoil->theta == 0 &&
                     trefoil->lower == 1 && trefoil->upper == 1 && eight && eight->theta == 0 && eight->lower == 1 &&
                     eight->upper == 1 && theta2_at3 == 1 && classical3 == 1 && classical4 == 1;
  report("1-named", ident,
         "2.1 theta 1 g_s 1; 3.3 the only theta 2 three-crossing knot; 3.6 trefoil theta 0 g_s 1; 4.108 figure-eight "
         "theta 0 g_s 1");

  // slice detection
  int slice = 0, open = 0, obstructed = 0, sliceq = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].n != 4) continue;
    slice += rows[i].status == KnotStatus::slice;
    open += rows[i].status == KnotStatus::interval && rows[i].lower == 0 && rows[i].upper == 1;
    obstructed += rows[i].lower >= 1;
    sliceq += slice_status(*census[i].diagram, SliceContext{}) == SliceStatus::slice;
  }
  report("3-census", slice == 13 && open == 1 && obstructed == 94,
         std::to_string(slice) + " SLICE, " + std::to_string(open) + " [0,1], " + std::to_string(obstructed) +
             " with lower >= 1 of 108 four-crossing classes (" + std::to_string(sliceq) + " by SliceQ alone)");

  // intervals: a perfect matching of classes to tabulated rows with equal theta
  // and every tabulated value inside the computed interval
  bool matched = true;
  for (int n : {2, 3, 4}) {
    std::vector<const KnotRecord*> left;
    std::vector<const ExpectedRow*> right;
    for (const auto& r : rows)
      if (r.n == n) left.push_back(&r);
    for (const auto& e : expected)
      if (e.n == n) right.push_back(&e);
    std::vector<std::vector<int>> adj(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
      for (std::size_t j = 0; j < right.size(); ++j) {
        const auto& r = *left[i];
        const auto& e = *right[j];
        if (r.theta != e.theta) continue;
        const bool fits = e.gs_min == e.gs_max ? (r.lower <= e.gs_min && e.gs_min <= r.upper)
                                               : (r.lower == e.gs_min && r.upper == e.gs_max);
        if (fits) adj[i].push_back(static_cast<int>(j));
      }
    }
    matched = matched && left.size() == right.size() &&
              max_matching(adj, static_cast<int>(right.size())) == static_cast<int>(right.size());
  }
  int dkk_exact = 0, one_signed = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!census[i].diagram->one_signed()) continue;
    ++one_signed;
    dkk_exact += rows[i].lower == rows[i].upper && rows[i].method.starts_with("DKK");
  }
  report("4-census", matched && dkk_exact == one_signed,
         "classes match tabulated (theta, g_s) rows one-to-one with g_s inside each interval; " +
             std::to_string(dkk_exact) + "/" + std::to_string(one_signed) + " one-signed classes exact by DKK");

  // movies
  int verified = 0, total = 0;
  std::string detail;
  bool ok = true;
  for (const auto& entry : fs::directory_iterator(fs::path(corpus::kDataDir) / "census" / "movies")) {
    ++total;
    const auto m = read_movie_file(entry.path().string());
    const auto cert = verify_movie(m);
    std::string why;
    if (cert.genus == 0 && cert.slice() && corruption_rejected(m, why)) {
      ++verified;
    } else {
      ok = false;
      detail += "; " + entry.path().stem().string() + " " + certificate_line(cert) + " " + why;
    }
  }
  int genus_one = 0, three = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].n != 3 || rows[i].method.starts_with("DKK")) continue;
    ++three;
    const auto cert = verify_movie(materialize_movie(*census[i].diagram, rows[i].method));
    genus_one += cert.genus == 1 && cert.unknot_terminal();
  }
  report("6-census", ok && total == 13 && genus_one == three && three > 0,
         std::to_string(verified) + "/" + std::to_string(total) + " slicing movies verify genus 0 and reject every corrupted event; " +
             std::to_string(genus_one) + "/" + std::to_string(three) + " mixed-sign three-crossing classes get a verified genus-one movie" + detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 2) {
    std::cerr << "usage: vkslice-acceptance [green-data-dir]\n";
    return 2;
  }
  if (argc == 2) green_dir = argv[1];
  const auto expected = table3();
  if (expected.size() != 116) {
    std::cerr << "expected table has " << expected.size() << " rows\n";
    return 1;
  }
  std::string why;
  std::optional<Green> green;
  try {
    green = load_green(expected, why);
  } catch (const std::exception& e) {
    why = e.what();
  }

  criterion1(green, expected, why);

  const auto t0 = std::chrono::steady_clock::now();
  TabulateConfig config;
  config.slice_lists[4] = load_slice_list_file(corpus::kDataDir + "/census/slice_list.txt");
  config.jobs = std::max(1U, std::thread::hardware_concurrency());
  const auto rows = tabulate(corpus::census(), config);
  const double census_seconds = seconds_since(t0);
  criterion2(rows, census_seconds);

  criterion3_4(green, expected, why);
  criterion5();
  criterion6();
  criterion7();
  census_proxies(rows, expected);

  std::cout << failures << " failed, " << blocked << " blocked\n";
  if (failures > 0) return 1;
  return blocked > 0 ? 77 : 0;
}

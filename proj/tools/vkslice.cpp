// vkslice: concordance invariants and slice-genus bounds for virtual knot tables.
//
// exit status: 0 ok, 1 bad input, 2 internal invariant violated

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <json.hpp>
#include <thread>

#include "vkslice/cobordism.hpp"
#include "vkslice/graded.hpp"
#include "vkslice/invariants.hpp"
#include "vkslice/tabulator.hpp"

using namespace vkslice;
using nlohmann::ordered_json;

namespace {

enum class Format { csv, json };

std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

int run_invariants(const std::string& path, Format fmt) {
  const auto table = load_table_file(path);
  ordered_json arr = ordered_json::array();
  if (fmt == Format::csv) std::cout << "name,code,n,writhe,odd_writhe,writhe_poly,ht_poly,f_poly,seifert_circles,flat_planar\n";
  for (const auto& e : table) {
    const GaussDiagram& d = *e.diagram;
    const std::string j = writhe_polynomial(d).to_string('t');
    const std::string p = henrich_turaev(d).to_string('t');
    const std::string f = f_polynomial(d).to_string('A');
    if (fmt == Format::csv) {
      std::cout << quoted(e.name) << ',' << emit_code(d) << ',' << d.chord_count() << ',' << writhe(d) << ','
                << odd_writhe(d) << ',' << j << ',' << p << ',' << f << ',' << seifert_circles(d) << ','
                << (is_flat_planar(d) ? "yes" : "no") << '\n';
    } else {
      arr.push_back({{"name", e.name},
                     {"code", emit_code(d)},
                     {"n", d.chord_count()},
                     {"writhe", writhe(d)},
                     {"odd_writhe", odd_writhe(d)},
                     {"writhe_poly", j},
                     {"ht_poly", p},
                     {"f_poly", f},
                     {"seifert_circles", seifert_circles(d)},
                     {"flat_planar", is_flat_planar(d)}});
    }
  }
  if (fmt == Format::json) std::cout << arr.dump(2) << '\n';
  return 0;
}

int run_graded_genus(const std::string& path, bool dump, Format fmt) {
  const auto table = load_table_file(path);
  ordered_json arr = ordered_json::array();
  for (const auto& e : table) {
    const GradedMatrix t = graded_matrix(*e.diagram);
    const int theta = graded_genus(t);
    if (fmt == Format::json) {
      ordered_json row = {{"name", e.name}, {"theta", theta}};
      if (dump) {
        ordered_json m = ordered_json::array();
        for (int r = 0; r < t.size(); ++r) {
          ordered_json line = ordered_json::array();
          for (int c = 0; c < t.size(); ++c) line.push_back(t.beta(r, c));
          m.push_back(line);
        }
        row["beta"] = m;
      }
      arr.push_back(row);
      continue;
    }
    std::cout << e.name << '\t' << theta << '\n';
    if (!dump) continue;
    for (int r = 0; r < t.size(); ++r) {
      for (int c = 0; c < t.size(); ++c) std::cout << (c ? " " : "") << t.beta(r, c);
      std::cout << '\n';
    }
  }
  if (fmt == Format::json) std::cout << arr.dump(2) << '\n';
  return 0;
}

int run_slice_bounds(const std::string& path, const std::vector<std::string>& lists, bool genus2,
                     bool no_symmetry, unsigned jobs, Format fmt) {
  TabulateConfig config;
  for (const auto& spec : lists) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--slice-list", "expected N=path, got " + spec);
    int n = 0;
    try {
      n = std::stoi(spec.substr(0, eq));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--slice-list", "bad crossing number in " + spec);
    }
    config.slice_lists[n].merge(load_slice_list_file(spec.substr(eq + 1)));
  }
  config.genus2 = genus2;
  config.use_symmetry = !no_symmetry;
  config.jobs = jobs == 0 ? std::max(1U, std::thread::hardware_concurrency()) : jobs;
  const auto rows = tabulate(load_table_file(path, false), config);
  if (fmt == Format::json) {
    write_records_json(std::cout, rows);
  } else {
    write_records_csv(std::cout, rows);
  }
  return 0;
}

int run_verify_movie(const std::string& path, Format fmt) {
  const auto cert = verify_movie(read_movie_file(path));
  if (fmt == Format::json) {
    ordered_json j = {{"genus", cert.genus},
                      {"terminal", cert.unknot_terminal() ? "unknot" : emit_code(cert.terminal)},
                      {"slice", cert.slice()},
                      {"saddles", cert.saddles},
                      {"births", cert.births},
                      {"deaths", cert.deaths}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << certificate_line(cert) << '\n';
  }
  return 0;
}

int run_summarize(const std::string& path, Format fmt) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const auto summary = summarize(read_records_csv(in));
  if (fmt == Format::json) {
    write_summary_json(std::cout, summary);
  } else {
    write_summary_csv(std::cout, summary);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concordance invariants and slice-genus bounds of virtual knots"};
  app.require_subcommand(1);
  std::string format = "csv";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  std::string file;
  auto* inv = app.add_subcommand("invariants", "Index-type invariants, f-polynomial and Seifert circles");
  inv->add_option("file", file, "Knot table")->required();

  bool dump = false;
  auto* gg = app.add_subcommand("graded-genus", "Graded genus of each knot");
  gg->add_option("file", file, "Knot table")->required();
  gg->add_flag("--dump-matrix", dump, "Print the graded matrix, row s first");

  std::vector<std::string> lists;
  bool genus2 = false;
  bool no_symmetry = false;
  unsigned jobs = 1;
  auto* sb = app.add_subcommand("slice-bounds", "Slice-genus interval and status of each knot");
  sb->add_option("file", file, "Knot table")->required();
  sb->add_option("--slice-list", lists, "Known slice knots with N crossings, N=path");
  sb->add_flag("--genus2", genus2, "Also try pairs of arrow operations");
  sb->add_flag("--no-symmetry", no_symmetry, "Match slice lists without the symmetry group");
  sb->add_option("--jobs,-j", jobs, "Worker threads, 0 for all cores");

  auto* vm = app.add_subcommand("verify-movie", "Replay a cobordism movie");
  vm->add_option("file", file, "Movie file")->required();

  auto* sm = app.add_subcommand("summarize", "Counts per crossing number from slice-bounds CSV");
  sm->add_option("csv", file, "slice-bounds output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const Format fmt = format == "json" ? Format::json : Format::csv;
  try {
    if (*inv) return run_invariants(file, fmt);
    if (*gg) return run_graded_genus(file, dump, fmt);
    if (*sb) return run_slice_bounds(file, lists, genus2, no_symmetry, jobs, fmt);
    if (*vm) return run_verify_movie(file, fmt);
    if (*sm) return run_summarize(file, fmt);
  } catch (const MovieError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DiagramError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

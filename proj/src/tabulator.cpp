#include "vkslice/tabulator.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "vkslice/graded.hpp"

namespace vkslice {

std::vector<TableEntry> load_table(std::istream& in, bool strict) {
  std::vector<TableEntry> out;
  std::unordered_set<std::string> names;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    TableEntry e;
    if (!(fields >> e.name)) continue;
    if (!(fields >> e.code)) throw TableError(line_no, "expected 'name code', got only '" + e.name + "'");
    if (std::string extra; fields >> extra) throw TableError(line_no, "unexpected field '" + extra + "'");
    if (!names.insert(e.name).second) throw TableError(line_no, "duplicate name '" + e.name + "'");
    e.line = line_no;
    try {
      e.diagram = parse_gauss_code(e.code);
    } catch (const DiagramError& err) {
      if (strict) throw TableError(line_no, err.what());
      e.error = err.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<TableEntry> load_table_file(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open table " + path);
  try {
    return load_table(in, strict);
  } catch (const TableError& e) {
    throw TableError(e.line(), path + ": " + std::string(e.what()));
  }
}

CodeList load_slice_list_file(const std::string& path) {
  CodeList list;
  for (const auto& e : load_table_file(path, true)) list.add(*e.diagram);
  return list;
}

std::string to_string(KnotStatus s) {
  switch (s) {
    case KnotStatus::slice: return "SLICE";
    case KnotStatus::not_slice: return "NOT-SLICE";
    case KnotStatus::interval: return "INTERVAL";
    case KnotStatus::unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::optional<KnotStatus> parse_knot_status(const std::string& s) {
  for (auto k : {KnotStatus::slice, KnotStatus::not_slice, KnotStatus::interval, KnotStatus::unknown})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

KnotRecord tabulate_one(const std::string& name, const GaussDiagram& d, const SliceContext& ctx) {
  KnotRecord r;
  r.name = name;
  r.code = emit_code(d);
  r.n = d.chord_count();
  r.theta = graded_genus(d);
  const BoundResult b = slice_genus_bounds(d, ctx);
  r.lower = b.lower;
  r.upper = b.upper;
  r.method = b.method;
  if (r.upper == 0) {
    r.status = KnotStatus::slice;
  } else if (r.lower >= 1) {
    r.status = KnotStatus::not_slice;
  } else {
    r.status = KnotStatus::interval;
  }
  return r;
}

namespace {

KnotRecord error_record(const TableEntry& e, const std::string& what) {
  KnotRecord r;
  r.name = e.name;
  r.code = e.code;
  r.n = e.diagram ? e.diagram->chord_count() : 0;
  r.status = KnotStatus::unknown;
  r.method = "error: " + what;
  return r;
}

}  // namespace

std::vector<KnotRecord> tabulate(const std::vector<TableEntry>& entries, const TabulateConfig& config) {
  SliceContext ctx;
  for (const auto& [n, list] : config.slice_lists) ctx.slice_list.merge(list);
  ctx.use_symmetry = config.use_symmetry;
  ctx.use_slice_q = config.use_slice_q;
  ctx.genus2 = config.genus2;
  ctx.max_chords = config.max_chords;

  std::vector<KnotRecord> rows(entries.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      const auto& e = entries[i];
      try {
        if (!e.diagram) throw DiagramError(e.error);
        rows[i] = tabulate_one(e.name, *e.diagram, ctx);
      } catch (const DiagramError& ex) {
        rows[i] = error_record(e, ex.what());
      } catch (const std::runtime_error& ex) {
        rows[i] = error_record(e, ex.what());
      }
    }
  };

  const unsigned jobs = std::max(1U, std::min<unsigned>(config.jobs, static_cast<unsigned>(entries.size())));
  if (jobs <= 1) {
    work();
    return rows;
  }
  // logic errors are internal invariant violations; rethrow the first one
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
      pool.emplace_back([&] {
        try {
          work();
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = entries.size();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::map<int, SummaryCounts> summarize(const std::vector<KnotRecord>& rows) {
  std::map<int, SummaryCounts> out;
  for (const auto& r : rows) {
    auto& s = out[r.n];
    ++s.total;
    if (r.status == KnotStatus::unknown) {
      ++s.errors;
      continue;
    }
    if (r.theta == 0) ++s.theta_zero;
    if (r.status == KnotStatus::slice) ++s.slice;
    if (r.status == KnotStatus::interval) ++s.unknown_slice;
    if (r.lower == r.upper) {
      ++s.by_genus[r.lower];
    } else {
      ++s.unknown_genus;
    }
  }
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote");
  return out;
}

constexpr const char* kRecordHeader = "name,code,n,theta,lower,upper,status,method";

int to_int(const std::string& s, std::size_t line, const char* column) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw TableError(line, std::string("column ") + column + ": expected an integer, got '" + s + "'");
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<KnotRecord>& rows) {
  out << kRecordHeader << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.name) << ',' << csv_field(r.code) << ',' << r.n << ',' << r.theta << ',' << r.lower << ','
        << r.upper << ',' << to_string(r.status) << ',' << csv_field(r.method) << '\n';
  }
}

void write_records_json(std::ostream& out, const std::vector<KnotRecord>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"name", r.name},
                   {"code", r.code},
                   {"n", r.n},
                   {"theta", r.theta},
                   {"lower", r.lower},
                   {"upper", r.upper},
                   {"status", to_string(r.status)},
                   {"method", r.method}});
  }
  out << arr.dump(2) << '\n';
}

std::vector<KnotRecord> read_records_csv(std::istream& in) {
  std::vector<KnotRecord> rows;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) return rows;
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordHeader) throw TableError(line_no, std::string("expected header '") + kRecordHeader + "'");
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    try {
      f = split_csv_line(line);
    } catch (const std::exception& e) {
      throw TableError(line_no, e.what());
    }
    if (f.size() != 8) throw TableError(line_no, "expected 8 columns, got " + std::to_string(f.size()));
    KnotRecord r;
    r.name = f[0];
    r.code = f[1];
    r.n = to_int(f[2], line_no, "n");
    r.theta = to_int(f[3], line_no, "theta");
    r.lower = to_int(f[4], line_no, "lower");
    r.upper = to_int(f[5], line_no, "upper");
    const auto status = parse_knot_status(f[6]);
    if (!status) throw TableError(line_no, "unknown status '" + f[6] + "'");
    r.status = *status;
    r.method = f[7];
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

int max_genus(const std::map<int, SummaryCounts>& summary) {
  int g = 2;
  for (const auto& [n, s] : summary)
    if (!s.by_genus.empty()) g = std::max(g, s.by_genus.rbegin()->first);
  return g;
}

}  // namespace

void write_summary_csv(std::ostream& out, const std::map<int, SummaryCounts>& summary) {
  const int top = max_genus(summary);
  out << "n,total,theta_zero,slice,unknown_slice";
  for (int g = 0; g <= top; ++g) out << ",gs" << g;
  out << ",unknown_genus,errors\n";
  for (const auto& [n, s] : summary) {
    out << n << ',' << s.total << ',' << s.theta_zero << ',' << s.slice << ',' << s.unknown_slice;
    for (int g = 0; g <= top; ++g) {
      auto it = s.by_genus.find(g);
      out << ',' << (it == s.by_genus.end() ? 0 : it->second);
    }
    out << ',' << s.unknown_genus << ',' << s.errors << '\n';
  }
}

void write_summary_json(std::ostream& out, const std::map<int, SummaryCounts>& summary) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [n, s] : summary) {
    nlohmann::ordered_json genus = nlohmann::ordered_json::object();
    for (const auto& [g, c] : s.by_genus) genus[std::to_string(g)] = c;
    arr.push_back({{"n", n},
                   {"total", s.total},
                   {"theta_zero", s.theta_zero},
                   {"slice", s.slice},
                   {"unknown_slice", s.unknown_slice},
                   {"slice_genus", genus},
                   {"unknown_genus", s.unknown_genus},
                   {"errors", s.errors}});
  }
  out << arr.dump(2) << '\n';
}

}  // namespace vkslice

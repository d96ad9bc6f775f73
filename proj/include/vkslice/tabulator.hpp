#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vkslice/cobordism.hpp"
#include "vkslice/gauss_diagram.hpp"

namespace vkslice {

class TableError : public std::runtime_error {
 public:
  TableError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct TableEntry {
  std::string name;
  std::string code;
  std::size_t line = 0;
  std::optional<GaussDiagram> diagram;  // empty when the code failed to parse
  std::string error;
};

/// Knot table: one `name code` pair per line; `#` starts a comment. A strict
/// load throws TableError on the first bad code; a lenient one keeps the
/// entry with its error so the batch can carry on. Duplicate names and
/// malformed lines are always errors.
std::vector<TableEntry> load_table(std::istream& in, bool strict = true);
std::vector<TableEntry> load_table_file(const std::string& path, bool strict = true);

/// Every code of a table, for slice-list lookups.
CodeList load_slice_list_file(const std::string& path);

enum class KnotStatus { slice, not_slice, interval, unknown };

std::string to_string(KnotStatus s);
std::optional<KnotStatus> parse_knot_status(const std::string& s);

struct KnotRecord {
  std::string name;
  std::string code;
  int n = 0;
  int theta = 0;
  int lower = 0;
  int upper = 0;
  KnotStatus status = KnotStatus::unknown;
  std::string method;

  friend bool operator==(const KnotRecord&, const KnotRecord&) = default;
};

struct TabulateConfig {
  std::map<int, CodeList> slice_lists;  // keyed by crossing number
  bool use_symmetry = true;
  bool use_slice_q = true;
  bool genus2 = false;
  int max_chords = 6;
  unsigned jobs = 1;
};

/// One record per entry, in input order. Failures are recorded in the row
/// (status UNKNOWN, method "error: ...") instead of aborting the batch.
std::vector<KnotRecord> tabulate(const std::vector<TableEntry>& entries, const TabulateConfig& config);

KnotRecord tabulate_one(const std::string& name, const GaussDiagram& d, const SliceContext& ctx);

struct SummaryCounts {
  int total = 0;
  int theta_zero = 0;
  int slice = 0;
  int unknown_slice = 0;   // lower bound 0 without a slicing
  int unknown_genus = 0;   // lower < upper
  int errors = 0;
  std::map<int, int> by_genus;  // rows with lower == upper

  friend bool operator==(const SummaryCounts&, const SummaryCounts&) = default;
};

/// Counts grouped by crossing number n.
std::map<int, SummaryCounts> summarize(const std::vector<KnotRecord>& rows);

void write_records_csv(std::ostream& out, const std::vector<KnotRecord>& rows);
void write_records_json(std::ostream& out, const std::vector<KnotRecord>& rows);
std::vector<KnotRecord> read_records_csv(std::istream& in);

void write_summary_csv(std::ostream& out, const std::map<int, SummaryCounts>& summary);
void write_summary_json(std::ostream& out, const std::map<int, SummaryCounts>& summary);

}  // namespace vkslice

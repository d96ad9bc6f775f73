#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vkslice {

/// Dense square integer matrix.
class IntMatrix {
 public:
  using Entry = std::int64_t;

  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {}
  static IntMatrix from_rows(const std::vector<std::vector<Entry>>& rows);

  int size() const { return n_; }
  Entry& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * n_ + j)]; }
  Entry operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * n_ + j)]; }

  bool is_zero() const;
  bool is_skew_symmetric() const;
  IntMatrix without(const std::vector<int>& rows_and_cols) const;

  /// Rows of space-separated integers, one per line.
  std::string to_string() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<Entry> data_;
};

/// Exact rank over the rationals by fraction-free (Bareiss) elimination.
/// Runs in 64-bit arithmetic and falls back to arbitrary precision when an
/// intermediate product would overflow.
int exact_rank(const IntMatrix& m);

}  // namespace vkslice

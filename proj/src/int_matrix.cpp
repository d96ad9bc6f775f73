#include "vkslice/int_matrix.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace vkslice {

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Entry>>& rows) {
  IntMatrix m(static_cast<int>(rows.size()));
  for (int i = 0; i < m.size(); ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m.size()) {
      throw std::invalid_argument("IntMatrix::from_rows: matrix must be square");
    }
    for (int j = 0; j < m.size(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Entry e) { return e == 0; });
}

bool IntMatrix::is_skew_symmetric() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j)
      if ((*this)(i, j) != -(*this)(j, i)) return false;
  return true;
}

IntMatrix IntMatrix::without(const std::vector<int>& drop) const {
  std::vector<int> keep;
  for (int i = 0; i < n_; ++i) {
    if (std::find(drop.begin(), drop.end(), i) == drop.end()) keep.push_back(i);
  }
  IntMatrix out(static_cast<int>(keep.size()));
  for (int i = 0; i < out.size(); ++i)
    for (int j = 0; j < out.size(); ++j)
      out(i, j) = (*this)(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)]);
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) os << (j ? " " : "") << (*this)(i, j);
    os << '\n';
  }
  return os.str();
}

namespace {

// Bareiss elimination with full row pivoting search. Every stored value is a
// minor of the input, and the division by the previous pivot is exact.
template <typename T, typename MulSub>
std::optional<int> bareiss_rank(std::vector<std::vector<T>> a, MulSub mul_sub) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  T prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        auto v = mul_sub(a[rank][col], a[r][c], a[r][col], a[rank][c]);
        if (!v) return std::nullopt;
        a[r][c] = *v / prev;
      }
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return static_cast<int>(rank);
}

}  // namespace

int exact_rank(const IntMatrix& m) {
  const auto n = static_cast<std::size_t>(m.size());
  std::vector<std::vector<std::int64_t>> small(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) small[i][j] = m(static_cast<int>(i), static_cast<int>(j));

  auto checked = [](std::int64_t p, std::int64_t x, std::int64_t q, std::int64_t y) -> std::optional<std::int64_t> {
    std::int64_t px = 0, qy = 0, diff = 0;
    if (__builtin_mul_overflow(p, x, &px) || __builtin_mul_overflow(q, y, &qy) ||
        __builtin_sub_overflow(px, qy, &diff)) {
      return std::nullopt;
    }
    return diff;
  };
  if (auto r = bareiss_rank(small, checked)) return *r;

  using boost::multiprecision::cpp_int;
  std::vector<std::vector<cpp_int>> big(n, std::vector<cpp_int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) big[i][j] = small[i][j];
  auto exact = [](const cpp_int& p, const cpp_int& x, const cpp_int& q, const cpp_int& y) -> std::optional<cpp_int> {
    return p * x - q * y;
  };
  return *bareiss_rank(big, exact);
}

}  // namespace vkslice

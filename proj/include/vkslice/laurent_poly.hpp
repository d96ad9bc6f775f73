#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace vkslice {

/// Integer Laurent polynomial in one variable. Zero coefficients are never
/// stored, so structural equality is polynomial equality.
class LaurentPoly {
 public:
  using Coeff = std::int64_t;

  LaurentPoly() = default;
  static LaurentPoly monomial(int exponent, Coeff coeff = 1);
  static LaurentPoly constant(Coeff c) { return monomial(0, c); }

  const std::map<int, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Coeff coeff(int exponent) const;
  void add_term(int exponent, Coeff coeff);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
  LaurentPoly operator-() const;

  /// p(x) -> p(x^k); k = -1 gives p(1/x).
  LaurentPoly substitute_power(int k) const;

  /// Sorted by descending exponent, e.g. `t^2-2t+2t^-1-t^-2`; `0` when zero.
  std::string to_string(char var = 't') const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  std::map<int, Coeff> terms_;
};

}  // namespace vkslice

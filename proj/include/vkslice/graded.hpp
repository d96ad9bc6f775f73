#pragma once

#include <functional>
#include <vector>

#include "vkslice/gauss_diagram.hpp"
#include "vkslice/int_matrix.hpp"

namespace vkslice {

/// Turaev's graded matrix (C ∪ {s}, s, beta). Row and column 0 belong to
/// the special element s; rows 1..n follow the chords in code order.
struct GradedMatrix {
  std::vector<int> signs;   // signs[0] == 0 stands for s
  std::vector<int> labels;  // chord id of each row; labels[0] == 0
  IntMatrix beta;

  int size() const { return beta.size(); }
  int chord_count() const { return beta.size() - 1; }

  friend bool operator==(const GradedMatrix&, const GradedMatrix&) = default;
};

/// The flattening reverses every negative arrow. For flat chords x = (a,b)
/// and y = (c,d), beta(x,y) counts arrows from the open arc (ab) into (cd)
/// minus arrows back, plus the correction -lk({a,b},{c,d}); beta(x,s) is
/// the index of x in the flattened diagram.
GradedMatrix graded_matrix(const GaussDiagram& d);

/// Applies the deletions M1 (zero row), M2 (row equal to row s) and M3
/// (opposite-sign pair whose rows sum to row s) until none applies.
GradedMatrix primitive_reduce(const GradedMatrix& t);

GradedMatrix negate(const GradedMatrix& t);

/// A simple graded filling. Each generator lists row indices of the graded
/// matrix: {0} is s, {g} a crossing, {g,h} an opposite-sign pair.
struct Filling {
  std::vector<std::vector<int>> generators;
};

/// Visits every simple graded filling: each partial matching of positive
/// against negative crossings. Fillings come in order of increasing pair
/// count. The visitor returns false to stop early.
void enumerate_simple_fillings(const GradedMatrix& t, const std::function<bool(const Filling&)>& visit);
std::vector<Filling> simple_fillings(const GradedMatrix& t);

/// Matrix of the filling, beta extended bilinearly to generator sums.
IntMatrix filling_matrix(const GradedMatrix& t, const Filling& f);

/// Exact rank of the filling matrix. Throws DiagramError on an invalid filling.
int filling_rank(const GradedMatrix& t, const Filling& f);

/// Minimum over simple fillings of half the filling rank, taken after
/// primitive reduction.
int graded_genus(const GradedMatrix& t);
int graded_genus(const GaussDiagram& d);

/// Upper bound on theta(T1, -T2) from a bounded search over two-matrix graded
/// fillings: generators are s1+s2, crossings and opposite-sign pairs (pairs may
/// straddle the two matrices), each shifted by k1*s1 + k2*s2 with |k| <= coeff_bound.
/// Zero certifies that the concordance obstruction vanishes; a positive value
/// only means none was found. `leaf_budget` caps the number of shifted
/// fillings examined.
int concordance_obstruction_bound(const GradedMatrix& t1, const GradedMatrix& t2, int coeff_bound = 1,
                                  long leaf_budget = 2'000'000);

}  // namespace vkslice

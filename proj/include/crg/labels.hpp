#pragma once

#include <span>
#include <string>
#include <vector>

#include "crg/chartab.hpp"

namespace crg {

/// Partitions of n, largest first in reverse lexicographic order.
std::vector<std::vector<int>> partitions(int n);
/// "(3,1,1)".
std::string partition_label(std::span<const int> shape);
/// Irreducible character of S_n indexed by shape, at a permutation of the given cycle type.
long murnaghan_nakayama(std::span<const int> shape, std::span<const int> cycle_type);
/// Cycle lengths of a permutation, descending.
std::vector<int> cycle_type(std::span<const int> permutation);

/// Which 1-dimensional character of <j id> is called det in the G5 labels:
/// the scalar itself (j id -> j) or the determinant on V (j id -> j^2).
enum class ScalarConvention { scalar, determinant };

/// Names the rows of a builtin's table:
///  sym(n): partitions, "(n-1,1)" being V;
///  imprimitive(d,e,2): "beta(k,k')", and "beta(k';1)" / "beta(k';eps)" for e odd,
///    "beta(delta,k';1)" / "beta(delta,k';eps)" for e even;
///  g4: "1", "det", "det2", "V", "Vdet", "Vdet2", "3";
///  g5: "rho1*rho2" with rho1 a g4 label and rho2 in {1, det, det2};
///  g24: "rho1*1" / "rho1*eps" with rho1 in {1, 3_1, 3_2, 6, 7, 8}, V = 3_1*eps.
/// Other groups keep the default "X.i".  Throws std::logic_error if a scheme
/// does not produce a bijection with the table.
void attach_labels(const ReflectionGroup& group, CharacterTable& table,
                   ScalarConvention g5_convention = ScalarConvention::determinant);

}  // namespace crg

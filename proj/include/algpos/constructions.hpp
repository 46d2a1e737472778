#pragma once

#include <optional>
#include <variant>

#include "algpos/eigen_triple.hpp"
#include "algpos/errors.hpp"

namespace algpos {

// Every operation in this module takes a certified triple (M, lambda, u, v)
// and returns a larger or smaller certified triple with the same lambda,
// with the new eigenvectors given by closed formulas rather than a solver.
// All index parameters are 0-based. The operations act on row/column 0 and
// leading blocks; callers permute their matrices into place first.

/// Variants of the diagonal-splitting construction. The order-n input has
/// m00 = M(0,0) > 0; the output of order k+n-1 replaces index 0 by a
/// directed k-cycle whose last position inherits row 0.
struct Variant24 {
  struct Cycle {
    Eigen::Index j;  // column of the cycle that receives old column 0, in [0,k)
  };
  struct Chord {
    Eigen::Index j;  // chord source, in [0,k-1)
    Eigen::Index s;  // chord target and relocation column, in [0,k) minus {j+1}
    std::optional<double> epsilon;  // in (0,1); default: half the admissible bound
  };
  struct SplitEntry {
    Eigen::Index s;  // chord target for the chord out of the last cycle row, in [1,k)
    std::optional<double> epsilon;
  };
  std::variant<Cycle, Chord, SplitEntry> v;
};

/// Variants of the arc-subdividing construction. The order-n input has
/// a = M(0,j) > 0; the output of order m+n replaces that entry by a
/// directed path through m new vertices, relocating the entries of column
/// j in rows [k,n) onto a path column.
struct Variant25 {
  struct Plain {
    Eigen::Index s;  // relocation column, in [0,m)
  };
  struct Chord {
    Eigen::Index s;  // chord source on the path, in [0,m-1)
    Eigen::Index t;  // chord target and relocation column, in [0,m) minus {s+1}
    std::optional<double> epsilon;
  };
  struct SplitTerminal {
    Eigen::Index t;  // chord target for the chord out of the last path row, in [0,m)
    std::optional<double> epsilon;
  };
  std::variant<Plain, Chord, SplitTerminal> v;
};

/// Attaches a k-cycle that subdivides the negative entry M(0,j) into a
/// path of negative arcs with positive diagonals on the new vertices.
/// New vertices occupy positions [0,k), old vertex i moves to k+i.
EigenTriple attach_cycle_negative(const EigenTriple& t, Eigen::Index j, Eigen::Index k);

/// Attaches a k-cycle of negative arcs parallel to the positive entry
/// M(0,j), which survives. Same position layout as attach_cycle_negative.
EigenTriple attach_cycle_positive(const EigenTriple& t, Eigen::Index j, Eigen::Index k);

/// Replaces the positive diagonal M(0,0) by a directed k-cycle. Old
/// vertex 0 becomes position k-1; old vertex i >= 1 moves to k-1+i;
/// positions [0,k-1) are new. epsilon_used receives the epsilon actually
/// applied (0 for the Cycle variant).
EigenTriple split_leading_diagonal(const EigenTriple& t, Eigen::Index k,
                                   const Variant24& variant,
                                   double* epsilon_used = nullptr);

/// Subdivides the positive entry M(0,j) into a path through m new
/// vertices (positions [0,m)); old vertex i moves to m+i. Entries of
/// column j in rows [k,n) are relocated onto the path column named by the
/// variant. Requires the hypothesis sum
///   M(0,j) v(0) + sum_{p in [k,n)} M(p,j) v(p) > 0.
EigenTriple expand_component(const EigenTriple& t, Eigen::Index m, Eigen::Index j,
                             Eigen::Index k, const Variant25& variant,
                             double* epsilon_used = nullptr);

/// Inverse of a paired split: merges indices 0 and 1 of a matrix shaped
///   [ 0    a01  0^T ]
///   [ a10  0    y^T ]
///   [ x    0    R   ]
/// into a single leading index with diagonal lambda + a10 - lambda^2/a01.
EigenTriple contract_pair(const EigenTriple& t);

/// Hypothesis sum of expand_component (the quantity that must be > 0).
double expand_hypothesis_sum(const EigenTriple& t, Eigen::Index j, Eigen::Index k);

}  // namespace algpos

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "jetvar/expression.hpp"

namespace jetvar {

/// Linear system A c = b over the rationals with sparse rows.
struct SparseSystem {
  int columns = 0;
  std::vector<std::map<int, Rational>> rows;
  std::vector<Rational> rhs;

  void add_row(std::map<int, Rational> row, Rational b) {
    rows.push_back(std::move(row));
    rhs.push_back(std::move(b));
  }
};

/// Exact Gaussian elimination. Pivots are taken at the smallest remaining
/// column of each row and free variables are set to zero, so the returned
/// solution is deterministic and prefers earlier columns. nullopt when the
/// system is inconsistent.
std::optional<std::vector<Rational>> solve_exact(const SparseSystem& sys);

}  // namespace jetvar

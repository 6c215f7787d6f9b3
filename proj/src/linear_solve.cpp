#include "jetvar/linear_solve.hpp"

namespace jetvar {

namespace {

struct PivotRow {
  std::map<int, Rational> row;  // leading entry (the pivot) is 1
  Rational rhs;
};

}  // namespace

std::optional<std::vector<Rational>> solve_exact(const SparseSystem& sys) {
  std::map<int, PivotRow> pivots;
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    std::map<int, Rational> row = sys.rows[r];
    Rational b = sys.rhs[r];
    for (auto it = row.begin(); it != row.end();) {
      if (it->second == 0) it = row.erase(it);
      else ++it;
    }
    // Eliminate every entry that sits on an existing pivot column, in
    // increasing column order.
    auto it = row.begin();
    while (it != row.end()) {
      auto p = pivots.find(it->first);
      if (p == pivots.end()) {
        ++it;
        continue;
      }
      const int col = it->first;
      const Rational factor = it->second;
      for (const auto& [c, v] : p->second.row) {
        Rational& slot = row[c];
        slot -= factor * v;
      }
      b -= factor * p->second.rhs;
      for (auto jt = row.begin(); jt != row.end();) {
        if (jt->second == 0) jt = row.erase(jt);
        else ++jt;
      }
      it = row.upper_bound(col);
    }
    if (row.empty()) {
      if (b != 0) return std::nullopt;
      continue;
    }
    const int lead = row.begin()->first;
    const Rational inv = 1 / row.begin()->second;
    for (auto& [c, v] : row) v *= inv;
    b *= inv;
    pivots.emplace(lead, PivotRow{std::move(row), std::move(b)});
  }

  std::vector<Rational> x(static_cast<std::size_t>(sys.columns), Rational(0));
  for (auto p = pivots.rbegin(); p != pivots.rend(); ++p) {
    Rational v = p->second.rhs;
    for (const auto& [c, a] : p->second.row)
      if (c != p->first) v -= a * x[static_cast<std::size_t>(c)];
    x[static_cast<std::size_t>(p->first)] = v;
  }
  return x;
}

}  // namespace jetvar

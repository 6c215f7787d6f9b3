#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "jetvar/model.hpp"
#include "jetvar/variational.hpp"

namespace jetvar {

/// Named residual forms; each must be the zero form.
struct Residuals {
  std::vector<std::pair<std::string, Form>> entries;
  bool all_zero() const {
    for (const auto& [name, f] : entries)
      if (!f.is_zero()) return false;
    return true;
  }
};

/// Ordered key/value result of one command. Text, JSON and LaTeX renderers
/// all walk the same fields in the same order.
struct Report {
  using Value = std::variant<std::monostate, bool, std::string, Expression, Form,
                             SourceForm, VerticalField, Bounds, Residuals>;

  explicit Report(std::string cmd, BundleSignature sig)
      : command(std::move(cmd)), signature(std::move(sig)) {}

  std::string command;
  BundleSignature signature;
  std::vector<std::pair<std::string, Value>> fields;
  /// Reasons why a zero test may be incomplete.
  std::vector<std::string> completeness_flags;
  std::vector<std::string> notes;
  /// Identity checks that failed. Non-empty means a bug.
  std::vector<std::string> failures;

  void set(std::string key, Value v) { fields.emplace_back(std::move(key), std::move(v)); }
  const Value* get(const std::string& key) const;
};

inline constexpr int kReportSchema = 1;

std::string render(const Report& r, OutputFormat format);

}  // namespace jetvar

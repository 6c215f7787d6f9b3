#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "jetvar/grammar.hpp"

namespace jetvar {

enum class OutputFormat { Text, Json, Latex };

const char* to_string(OutputFormat f);
std::optional<OutputFormat> parse_output_format(std::string_view s);

struct ModelOptions {
  std::optional<int> max_jet_order;
  std::optional<int> max_poly_degree;
  std::optional<OutputFormat> output;

  bool operator==(const ModelOptions&) const = default;
};

/// A field-theory model: one bundle chart plus named Lagrangians, vertical
/// fields, source forms and general forms.
///
///   # comment
///   base x t
///   field u v
///   lagrangian L = 1/2*(u[x]^2 + v[x]^2)
///   symmetry X = -v*d/du + u*d/dv
///   source E[u] = u[x]
///   form psi = u*theta[u; x]^dt^dx
///   set max_jet_order 4
///   set max_poly_degree 3
///   set output json
struct ModelFile {
  BundleSignature signature;
  std::map<std::string, Expression> lagrangians;
  std::map<std::string, VerticalField> symmetries;
  std::map<std::string, SourceForm> sources;
  std::map<std::string, Form> forms;
  ModelOptions options;

  bool operator==(const ModelFile&) const = default;
};

/// Throws ParseError with the line and column of the offending token.
ModelFile parse_model(std::string_view source);

/// Canonical text of a model; parse_model(print_model(m)) == m.
std::string print_model(const ModelFile& m);

}  // namespace jetvar

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jetvar/calculus.hpp"

namespace jetvar {

/// Positioned diagnostic. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column,
             std::vector<std::string> expected = {});

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

  /// Same diagnostic moved to another line / column origin.
  ParseError relocated(int line, int column_offset) const;

 private:
  std::string message_;
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

// Text grammar, shared by the model files and the reports:
//
//   sum     := ['-'|'+'] product (('+'|'-') product)*
//   product := unary (('*'|'/') unary)*
//   unary   := '-' unary | power
//   power   := primary ['^' integer]
//   primary := integer | name | field '[' base (',' base)* ']'
//            | ('sin'|'cos'|'exp') '(' sum ')' | '(' sum ')'
//
// Division is by non-zero constants only. A bare field name is the order-0
// jet coordinate. Forms additionally accept the generators 'd<base>' and
// 'theta[<field>]' / 'theta[<field>; <base>,...]' joined by '^'; vector
// fields accept 'd/d<field>' as a direction factor.

Expression parse_expression(std::string_view text, const BundleSignature& sig);
Form parse_form(std::string_view text, const BundleSignature& sig);
VerticalField parse_vector_field(std::string_view text, const BundleSignature& sig);

std::string jet_name(const JetVariable& v, const BundleSignature& sig);

std::string to_string(const Expression& e, const BundleSignature& sig);
std::string to_string(const Form& f, const BundleSignature& sig);
/// Rendered as sum of (E_i)*theta[i]^dx^1^...^dx^n.
std::string to_string(const SourceForm& s, const BundleSignature& sig);
std::string to_string(const VerticalField& u, const BundleSignature& sig);

std::string to_latex(const Expression& e, const BundleSignature& sig);
std::string to_latex(const Form& f, const BundleSignature& sig);
std::string to_latex(const SourceForm& s, const BundleSignature& sig);

}  // namespace jetvar

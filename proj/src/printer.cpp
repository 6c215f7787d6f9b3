#include <sstream>

#include "jetvar/grammar.hpp"

namespace jetvar {

namespace {

std::string rational_str(const Rational& q) { return q.get_str(); }

std::string base_suffix(const MultiIndex& idx, const BundleSignature& sig,
                        const char* sep) {
  std::string s;
  bool first = true;
  for (int l : idx.indices()) {
    if (!first) s += sep;
    s += sig.base_name(static_cast<std::size_t>(l));
    first = false;
  }
  return s;
}

std::string atom_text(const Atom& a, const BundleSignature& sig) {
  switch (a.kind()) {
    case Atom::Kind::Base: return sig.base_name(static_cast<std::size_t>(a.base_index()));
    case Atom::Kind::Jet: return jet_name(a.jet(), sig);
    case Atom::Kind::Func: return std::string(fn_name(a.fn())) + "(" + to_string(a.arg(), sig) + ")";
  }
  return "?";
}

std::string monomial_text(const Monomial& m, const BundleSignature& sig) {
  std::string s;
  for (const auto& [a, e] : m.factors()) {
    if (!s.empty()) s += "*";
    s += atom_text(a, sig);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string atom_latex(const Atom& a, const BundleSignature& sig) {
  switch (a.kind()) {
    case Atom::Kind::Base: return sig.base_name(static_cast<std::size_t>(a.base_index()));
    case Atom::Kind::Jet: {
      std::string s = sig.fiber_name(static_cast<std::size_t>(a.jet().field));
      if (a.jet().order() > 0) s += "_{" + base_suffix(a.jet().index, sig, "") + "}";
      return s;
    }
    case Atom::Kind::Func:
      return std::string("\\") + fn_name(a.fn()) + "\\left(" + to_latex(a.arg(), sig) + "\\right)";
  }
  return "?";
}

std::string monomial_latex(const Monomial& m, const BundleSignature& sig) {
  std::string s;
  for (const auto& [a, e] : m.factors()) {
    if (!s.empty()) s += " ";
    s += atom_latex(a, sig);
    if (e > 1) s += "^{" + std::to_string(e) + "}";
  }
  return s;
}

std::string rational_latex(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

// Joins signed items as "a + b - c"; each item is (negative?, body).
std::string join_signed(const std::vector<std::pair<bool, std::string>>& items) {
  if (items.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& [neg, body] = items[i];
    if (i == 0) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    s += body;
  }
  return s;
}

std::string theta_text(const JetVariable& v, const BundleSignature& sig) {
  std::string s = "theta[" + sig.fiber_name(static_cast<std::size_t>(v.field));
  if (v.order() > 0) s += "; " + base_suffix(v.index, sig, ",");
  return s + "]";
}

std::string theta_latex(const JetVariable& v, const BundleSignature& sig) {
  std::string s = "\\theta^{" + sig.fiber_name(static_cast<std::size_t>(v.field)) + "}";
  if (v.order() > 0) s += "_{" + base_suffix(v.index, sig, "") + "}";
  return s;
}

std::string wedge_text(const WedgeMonomial& m, const BundleSignature& sig, bool latex) {
  std::vector<std::string> parts;
  for (int l : m.dx) parts.push_back("d" + sig.base_name(static_cast<std::size_t>(l)));
  for (const auto& v : m.theta) parts.push_back(latex ? theta_latex(v, sig) : theta_text(v, sig));
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += latex ? "\\wedge " : "^";
    s += parts[i];
  }
  return s;
}

// Coefficient times a non-empty generator string, with the sign pulled out
// for single-term coefficients.
std::pair<bool, std::string> scaled_item(const Expression& c, const std::string& gens,
                                         const BundleSignature& sig, bool latex) {
  const std::string times = latex ? "\\," : "*";
  if (c.terms().size() == 1) {
    const auto& [m, q] = *c.terms().begin();
    bool neg = q < 0;
    Expression mag = neg ? -c : c;
    if (gens.empty()) return {neg, latex ? to_latex(mag, sig) : to_string(mag, sig)};
    if (mag == Expression(1)) return {neg, gens};
    return {neg, (latex ? to_latex(mag, sig) : to_string(mag, sig)) + times + gens};
  }
  if (gens.empty()) return {false, latex ? to_latex(c, sig) : to_string(c, sig)};
  std::string body = latex ? "\\left(" + to_latex(c, sig) + "\\right)" : "(" + to_string(c, sig) + ")";
  return {false, body + times + gens};
}

}  // namespace

std::string jet_name(const JetVariable& v, const BundleSignature& sig) {
  std::string s = sig.fiber_name(static_cast<std::size_t>(v.field));
  if (v.order() > 0) s += "[" + base_suffix(v.index, sig, ",") + "]";
  return s;
}

std::string to_string(const Expression& e, const BundleSignature& sig) {
  std::vector<std::pair<bool, std::string>> items;
  for (const auto& [m, c] : e.terms()) {
    Rational mag = abs(c);
    std::string body;
    if (m.is_one()) body = rational_str(mag);
    else if (mag == 1) body = monomial_text(m, sig);
    else body = rational_str(mag) + "*" + monomial_text(m, sig);
    items.emplace_back(c < 0, body);
  }
  return join_signed(items);
}

std::string to_latex(const Expression& e, const BundleSignature& sig) {
  std::vector<std::pair<bool, std::string>> items;
  for (const auto& [m, c] : e.terms()) {
    Rational mag = abs(c);
    std::string body;
    if (m.is_one()) body = rational_latex(mag);
    else if (mag == 1) body = monomial_latex(m, sig);
    else body = rational_latex(mag) + " " + monomial_latex(m, sig);
    items.emplace_back(c < 0, body);
  }
  return join_signed(items);
}

std::string to_string(const Form& f, const BundleSignature& sig) {
  std::vector<std::pair<bool, std::string>> items;
  for (const auto& [m, c] : f.terms()) items.push_back(scaled_item(c, wedge_text(m, sig, false), sig, false));
  return join_signed(items);
}

std::string to_latex(const Form& f, const BundleSignature& sig) {
  std::vector<std::pair<bool, std::string>> items;
  for (const auto& [m, c] : f.terms()) items.push_back(scaled_item(c, wedge_text(m, sig, true), sig, true));
  return join_signed(items);
}

namespace {

std::string source_generators(int field, const BundleSignature& sig, bool latex) {
  std::string s = latex ? theta_latex({field, MultiIndex(sig.base_dim())}, sig)
                        : theta_text({field, MultiIndex(sig.base_dim())}, sig);
  for (std::size_t l = 0; l < sig.base_dim(); ++l)
    s += (latex ? "\\wedge d" : "^d") + sig.base_name(l);
  return s;
}

}  // namespace

std::string to_string(const SourceForm& s, const BundleSignature& sig) {
  std::vector<std::pair<bool, std::string>> items;
  for (const auto& [i, e] : s.components) items.push_back(scaled_item(e, source_generators(i, sig, false), sig, false));
  return join_signed(items);
}

std::string to_latex(const SourceForm& s, const BundleSignature& sig) {
  std::vector<std::pair<bool, std::string>> items;
  for (const auto& [i, e] : s.components) items.push_back(scaled_item(e, source_generators(i, sig, true), sig, true));
  return join_signed(items);
}

std::string to_string(const VerticalField& u, const BundleSignature& sig) {
  std::vector<std::pair<bool, std::string>> items;
  for (const auto& [i, e] : u.components)
    items.push_back(scaled_item(e, "d/d" + sig.fiber_name(static_cast<std::size_t>(i)), sig, false));
  return join_signed(items);
}

}  // namespace jetvar

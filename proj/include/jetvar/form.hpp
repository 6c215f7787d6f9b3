#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "jetvar/expression.hpp"

namespace jetvar {

/// Exterior monomial dx^{l1}^...^dx^{ls} ^ g_1^...^g_k with the dx block
/// first and both blocks strictly increasing. In the contact basis the g's
/// are theta^i_Lambda; in the mixed basis they are dy^i_Lambda.
struct WedgeMonomial {
  std::vector<int> dx;
  std::vector<JetVariable> theta;

  int contact_degree() const { return static_cast<int>(theta.size()); }
  int horizontal_degree() const { return static_cast<int>(dx.size()); }

  bool operator==(const WedgeMonomial&) const = default;
  std::strong_ordering operator<=>(const WedgeMonomial& o) const;
};

/// One exterior generator, used to build monomials from arbitrary factor
/// sequences.
struct Generator {
  bool is_dx = true;
  int base = 0;
  JetVariable jet;

  static Generator d(int l) { return {true, l, {}}; }
  static Generator g(JetVariable v) { return {false, 0, std::move(v)}; }
};

/// Sorts a factor sequence into canonical order. Returns the permutation
/// sign, or 0 when a factor repeats (the product vanishes).
std::pair<int, WedgeMonomial> normalize_factors(const std::vector<Generator>& factors);

/// Product of two canonical monomials with its sign (0 if it vanishes).
std::pair<int, WedgeMonomial> wedge_monomials(const WedgeMonomial& a, const WedgeMonomial& b);

struct ContactBasis {};
struct MixedBasis {};

/// Finite sum of Expression x WedgeMonomial over an n-dimensional base.
/// Zero coefficients are never stored.
template <class Basis>
class GradedForm {
 public:
  using Terms = std::map<WedgeMonomial, Expression>;

  GradedForm() = default;
  explicit GradedForm(std::size_t dim) : dim_(dim) {}

  static GradedForm scalar(std::size_t dim, const Expression& f) {
    GradedForm r(dim);
    r.add_term({}, f);
    return r;
  }
  static GradedForm dx(std::size_t dim, int l) {
    GradedForm r(dim);
    r.add_term({{l}, {}}, Expression(1));
    return r;
  }
  static GradedForm generator(std::size_t dim, const JetVariable& v) {
    GradedForm r(dim);
    r.add_term({{}, {v}}, Expression(1));
    return r;
  }
  /// dx^1 ^ ... ^ dx^n.
  static GradedForm volume(std::size_t dim) {
    WedgeMonomial m;
    for (std::size_t l = 0; l < dim; ++l) m.dx.push_back(static_cast<int>(l));
    GradedForm r(dim);
    r.add_term(m, Expression(1));
    return r;
  }
  /// c * (product of the factors in the given order).
  static GradedForm product(std::size_t dim, const Expression& c,
                            const std::vector<Generator>& factors) {
    auto [sign, m] = normalize_factors(factors);
    GradedForm r(dim);
    if (sign != 0) r.add_term(m, sign > 0 ? c : -c);
    return r;
  }

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of a canonical monomial (zero if absent).
  Expression coefficient(const WedgeMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Expression() : it->second;
  }

  void add_term(const WedgeMonomial& m, const Expression& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Set of (contact, horizontal) degrees present.
  std::set<std::pair<int, int>> bidegrees() const {
    std::set<std::pair<int, int>> out;
    for (const auto& [m, c] : terms_) out.emplace(m.contact_degree(), m.horizontal_degree());
    return out;
  }

  bool has_opaque() const {
    for (const auto& [m, c] : terms_)
      if (c.has_opaque()) return true;
    return false;
  }

  /// Largest jet order among coefficients and generators.
  int jet_order() const {
    int r = 0;
    for (const auto& [m, c] : terms_) {
      r = std::max(r, c.jet_order());
      for (const auto& v : m.theta) r = std::max(r, v.order());
    }
    return r;
  }

  /// Largest polynomial degree among coefficients.
  int degree() const {
    int r = 0;
    for (const auto& [m, c] : terms_) r = std::max(r, c.degree());
    return r;
  }

  GradedForm& operator+=(const GradedForm& o) {
    adopt_dim(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  GradedForm& operator-=(const GradedForm& o) {
    adopt_dim(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  GradedForm& operator*=(const Expression& f) {
    if (f.is_zero()) {
      terms_.clear();
      return *this;
    }
    Terms out;
    for (const auto& [m, c] : terms_) {
      Expression p = c * f;
      if (!p.is_zero()) out.emplace(m, std::move(p));
    }
    terms_ = std::move(out);
    return *this;
  }

  friend GradedForm operator+(GradedForm a, const GradedForm& b) { return a += b; }
  friend GradedForm operator-(GradedForm a, const GradedForm& b) { return a -= b; }
  friend GradedForm operator*(GradedForm a, const Expression& f) { return a *= f; }
  friend GradedForm operator*(const Expression& f, GradedForm a) { return a *= f; }
  GradedForm operator-() const {
    GradedForm r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  bool operator==(const GradedForm& o) const { return terms_ == o.terms_; }

 private:
  void adopt_dim(const GradedForm& o) {
    if (dim_ == 0) dim_ = o.dim_;
    else if (o.dim_ != 0 && o.dim_ != dim_)
      throw std::invalid_argument("forms over different base dimensions");
  }

  std::size_t dim_ = 0;
  Terms terms_;
};

/// Forms stored in the contact basis {dx^l, theta^i_Lambda}.
using Form = GradedForm<ContactBasis>;
/// Forms in the naive exterior basis {dx^l, dy^i_Lambda}.
using MixedForm = GradedForm<MixedBasis>;

template <class Basis>
GradedForm<Basis> wedge(const GradedForm<Basis>& a, const GradedForm<Basis>& b) {
  GradedForm<Basis> r(a.dim() ? a.dim() : b.dim());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      auto [sign, m] = wedge_monomials(ma, mb);
      if (sign == 0) continue;
      Expression c = ca * cb;
      r.add_term(m, sign > 0 ? c : -c);
    }
  return r;
}

inline Form theta(std::size_t dim, const JetVariable& v) { return Form::generator(dim, v); }
inline MixedForm dy(std::size_t dim, const JetVariable& v) { return MixedForm::generator(dim, v); }

/// Rewrites dy^i_Lambda = theta^i_Lambda + y^i_{l+Lambda} dx^l.
Form to_contact_basis(const MixedForm& phi);
/// Inverse rewrite theta^i_Lambda = dy^i_Lambda - y^i_{l+Lambda} dx^l.
MixedForm from_contact_basis(const Form& phi);

/// h_k: the contact-degree-k part.
Form project(const Form& phi, int k);
/// h^s: the horizontal-degree-s part.
Form project_h(const Form& phi, int s);
/// h_0 o h^n.
Form h0(const Form& phi);
Form h0(const MixedForm& phi);

inline bool form_equal(const Form& a, const Form& b) { return a == b; }

/// Sum_i E_i theta^i ^ omega: the shape of Euler-Lagrange operators.
struct SourceForm {
  std::size_t dim = 0;
  std::map<int, Expression> components;

  SourceForm() = default;
  explicit SourceForm(std::size_t d) : dim(d) {}

  void set(int field, const Expression& e) {
    if (e.is_zero()) components.erase(field);
    else components[field] = e;
  }
  Expression component(int field) const {
    auto it = components.find(field);
    return it == components.end() ? Expression() : it->second;
  }
  bool is_zero() const { return components.empty(); }
  bool has_opaque() const {
    for (const auto& [i, e] : components)
      if (e.has_opaque()) return true;
    return false;
  }

  Form to_form() const;
  /// nullopt unless phi is a sum of f_i theta^i ^ omega.
  static std::optional<SourceForm> from_form(const Form& phi);

  bool operator==(const SourceForm& o) const { return components == o.components; }
};

}  // namespace jetvar

#pragma once

#include <map>

#include "jetvar/form.hpp"

namespace jetvar {

/// Vertical vector field u = u^i d/dy^i. Missing components are zero.
struct VerticalField {
  std::map<int, Expression> components;

  VerticalField() = default;
  explicit VerticalField(std::map<int, Expression> c);

  Expression component(int field) const {
    auto it = components.find(field);
    return it == components.end() ? Expression() : it->second;
  }
  bool is_zero() const { return components.empty(); }
  int jet_order() const;
  bool has_opaque() const;
  bool operator==(const VerticalField&) const = default;
};

// Total derivatives -------------------------------------------------------

/// d_l f = df/dx^l + sum over jets present of y^i_{l+Lambda} df/dy^i_Lambda.
Expression total_derivative(const Expression& f, int l);
/// d_Lambda f, iterated over the indices of Lambda.
Expression total_derivative(const Expression& f, const MultiIndex& idx);

/// d_l acting on a form: on coefficients as above, on generators by
/// d_l theta^i_Lambda = theta^i_{l+Lambda}, d_l dx = 0.
Form total_derivative(const Form& phi, int l);
Form total_derivative(const Form& phi, const MultiIndex& idx);

// Differentials -----------------------------------------------------------

/// d_H phi = dx^l ^ d_l phi.
Form dH(const Form& phi);
/// d_V phi = theta^i_Lambda ^ d^Lambda_i phi.
Form dV(const Form& phi);
/// d = d_H + d_V.
Form dTotal(const Form& phi);
/// Exterior derivative in the mixed basis {dx, dy}.
MixedForm exterior_derivative(const MixedForm& phi);

/// Interior product with the coordinate vector dual to theta^i_Lambda. The
/// factor is removed with the sign of moving it to the front of the stored
/// monomial (dx block first):
///   d/dtheta_a _| (theta_a ^ theta_b)   = +theta_b
///   d/dtheta_b _| (theta_a ^ theta_b)   = -theta_a
///   d/dtheta_a _| (dx ^ theta_a)        = -dx
Form interior_jet(const JetVariable& v, const Form& phi);

// Euler operator ----------------------------------------------------------

/// Sum_Lambda (-1)^|Lambda| theta^i ^ d_Lambda(d^Lambda_i _| phi) on a (k, n)
/// form with k >= 1. Throws std::invalid_argument on any other bidegree.
Form tau_bar(const Form& phi);
/// Sum_{k>0} (1/k) tau_bar o h_k o h^n. Zero on contact degree 0 and on
/// horizontal degree < n.
Form tau(const Form& phi);
/// tau o d on forms of horizontal degree n. Throws std::invalid_argument
/// otherwise.
Form delta_var(const Form& phi);

// Vertical fields ---------------------------------------------------------

/// d_Lambda u^i, the component of the prolongation along d/dy^i_Lambda.
Expression prolonged_component(const VerticalField& u, const JetVariable& v);
/// J^oo u (f) = sum over jets present of d_Lambda u^i * d^Lambda_i f.
Expression prolong_apply(const VerticalField& u, const Expression& f);
/// J^oo u _| phi: dx -> 0, theta^i_Lambda -> d_Lambda u^i, as an
/// antiderivation.
Form contract(const VerticalField& u, const Form& phi);
/// L_u phi = u _| d phi + d (u _| phi).
Form lie_derivative(const VerticalField& u, const Form& phi);

}  // namespace jetvar

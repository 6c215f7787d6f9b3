#pragma once

#include <optional>

#include "jetvar/calculus.hpp"

namespace jetvar {

/// L = density * dx^1 ^ ... ^ dx^n.
struct Lagrangian {
  BundleSignature signature;
  Expression density;

  Form form() const { return Form::volume(signature.base_dim()) * density; }
};

/// Ansatz limits for the horizontal-potential solver.
struct Bounds {
  int max_jet_order = 1;
  int max_poly_degree = 1;

  bool operator==(const Bounds&) const = default;
};

/// (jet order of sigma + 1, coefficient degree of sigma + 1).
Bounds default_bounds(const Form& sigma);

/// E_i = sum_Lambda (-1)^|Lambda| d_Lambda(d L / d y^i_Lambda), expanded
/// directly from the density.
SourceForm euler_lagrange(const Lagrangian& L);

/// dL = delta L + d_H(boundary), with the boundary term built by repeated
/// integration by parts.
struct VariationalSplit {
  SourceForm el;
  Form boundary;  // bidegree (1, n-1)
  bool residual_checked = false;
};

/// Descent: f theta^i_{l+Lambda} ^ w = -d_l f theta^i_Lambda ^ w
///                                      - d_H(f theta^i_Lambda ^ w_l),
/// w_l = d/dx^l _| w, always peeling the largest base index of the highest
/// order theta first. Throws std::logic_error if the residual check fails.
VariationalSplit first_variational_split(const Lagrangian& L);

enum class SymmetryKind { Exact, Divergence, NoneAtOrder };
const char* to_string(SymmetryKind k);

/// Outcome of the Noether analysis of (L, u). The current is the canonical
/// one from first_variational_split and is unique only modulo d_H-closed
/// forms.
struct SymmetryReport {
  SymmetryKind kind = SymmetryKind::NoneAtOrder;
  Form lie;                    // L_{J u} L
  std::optional<Form> sigma;   // lie = d_H sigma (divergence case)
  std::optional<Form> current; // J_u or J_u - sigma
  SourceForm el;
  Form boundary;
  /// d_H(current) + u _| delta L == 0 was verified exactly.
  bool onshell_identity_checked = false;
  Bounds bounds_used;
  /// False when opaque atoms make zero tests incomplete.
  bool complete = true;
};

SymmetryReport noether(const Lagrangian& L, const VerticalField& u,
                       std::optional<Bounds> bounds = std::nullopt);

struct HelmholtzResult {
  bool variational = false;
  Form obstruction;  // delta(E); zero iff variational
};

/// Local verdict: delta(E) = 0. A closed form on Y cannot be detected.
HelmholtzResult helmholtz_check(const SourceForm& E);

/// delta(L_u L) - tau(L_u delta L). The projection tau is the identity on
/// L_u delta L whenever u has jet order 0; for higher-order u it removes the
/// d_H-exact part. Zero for every input.
Form master_identity_residual(const Lagrangian& L, const VerticalField& u);

/// Some xi with d_H xi = sigma, searched among polynomial coefficients of
/// jet order <= max_jet_order and degree <= max_poly_degree. The result is
/// the solution of the ansatz system with all free unknowns zero. nullopt
/// means no potential exists within the bounds (or sigma contains opaque
/// atoms); it proves nothing globally. Throws std::invalid_argument on
/// non-positive bounds.
std::optional<Form> find_horizontal_potential(const Form& sigma, const Bounds& bounds);

struct SourceDecomposition {
  Form source;                  // tau(psi)
  std::optional<Form> potential;  // d_H potential = psi - tau(psi)
  Bounds bounds_used;
};

/// psi = tau(psi) + d_H xi for psi of bidegree (k, n), k > 0.
SourceDecomposition decompose_source(const Form& psi,
                                     std::optional<Bounds> bounds = std::nullopt);

/// delta L == 0 (local verdict).
bool is_variationally_trivial(const Lagrangian& L);

}  // namespace jetvar

#include "jetvar/commands.hpp"

namespace jetvar {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"el",      "split",        "noether",
                                                 "lie",     "trivial",      "helmholtz",
                                                 "master-check", "decompose", "potential"};
  return names;
}

namespace {

const char* kOpaque = "opaque function atoms present";
const char* kLocal = "verdict is local: a closed form on the total space is not detected";

template <class Map>
const typename Map::mapped_type& pick(const Map& m, const std::optional<std::string>& name,
                                      const char* what, const char* flag,
                                      const char* plural = nullptr) {
  if (name) {
    auto it = m.find(*name);
    if (it == m.end()) throw UsageError(std::string("no ") + what + " named '" + *name + "' in the model");
    return it->second;
  }
  if (m.size() == 1) return m.begin()->second;
  if (m.empty()) throw UsageError(std::string("the model declares no ") + what);
  throw UsageError(std::string("the model declares several ") +
                   (plural ? std::string(plural) : std::string(what) + "s") + "; choose one with " + flag);
}

template <class Map>
std::string pick_name(const Map& m, const std::optional<std::string>& name) {
  return name ? *name : m.begin()->first;
}

Lagrangian lagrangian(const ModelFile& m, const CommandRequest& req) {
  return {m.signature, pick(m.lagrangians, req.lagrangian, "lagrangian", "--lagrangian")};
}

const VerticalField& symmetry(const ModelFile& m, const CommandRequest& req) {
  return pick(m.symmetries, req.symmetry, "symmetry", "--symmetry", "symmetries");
}

/// Flags override model settings; whatever is still unset comes from the
/// defaults for the target form.
Bounds resolve_bounds(const ModelFile& m, const CommandRequest& req, const Form& target) {
  Bounds b = default_bounds(target);
  if (m.options.max_jet_order) b.max_jet_order = *m.options.max_jet_order;
  if (m.options.max_poly_degree) b.max_poly_degree = *m.options.max_poly_degree;
  if (req.max_jet_order) b.max_jet_order = *req.max_jet_order;
  if (req.max_degree) b.max_poly_degree = *req.max_degree;
  if (b.max_jet_order <= 0 || b.max_poly_degree <= 0)
    throw UsageError("bounds must be positive");
  return b;
}

void check(Report& r, const std::string& name, const Form& residual) {
  if (!residual.is_zero()) r.failures.push_back(name + " residual is not zero");
}

void flag_opaque(Report& r, bool opaque) {
  if (opaque) r.completeness_flags.push_back(kOpaque);
}

Report cmd_el(const ModelFile& m, const CommandRequest& req) {
  Report r("el", m.signature);
  Lagrangian L = lagrangian(m, req);
  SourceForm el = euler_lagrange(L);
  Form route = el.to_form() - delta_var(L.form());
  r.set("lagrangian", L.density);
  r.set("el", el);
  r.set("residuals", Residuals{{{"route_agreement", route}}});
  check(r, "route_agreement", route);
  flag_opaque(r, L.density.has_opaque());
  return r;
}

Report cmd_split(const ModelFile& m, const CommandRequest& req) {
  Report r("split", m.signature);
  Lagrangian L = lagrangian(m, req);
  VariationalSplit s = first_variational_split(L);
  Form res = project(dTotal(L.form()), 1) - s.el.to_form() - dH(s.boundary);
  r.set("lagrangian", L.density);
  r.set("el", s.el);
  r.set("boundary", s.boundary);
  r.set("residuals", Residuals{{{"first_variational", res}}});
  check(r, "first_variational", res);
  flag_opaque(r, L.density.has_opaque());
  return r;
}

Report cmd_noether(const ModelFile& m, const CommandRequest& req) {
  Report r("noether", m.signature);
  Lagrangian L = lagrangian(m, req);
  const VerticalField& u = symmetry(m, req);
  Form lie = lie_derivative(u, L.form());
  Bounds b = resolve_bounds(m, req, lie);
  SymmetryReport s = noether(L, u, b);
  r.set("lagrangian", L.density);
  r.set("symmetry", u);
  r.set("kind", std::string(to_string(s.kind)));
  r.set("lie", s.lie);
  r.set("sigma", s.sigma ? Report::Value(*s.sigma) : Report::Value());
  r.set("current", s.current ? Report::Value(*s.current) : Report::Value());
  Residuals res;
  if (s.current) {
    Form id = dH(*s.current) + contract(u, s.el.to_form());
    res.entries.emplace_back("noether_identity", id);
    if (s.complete) check(r, "noether_identity", id);
  }
  if (s.sigma) {
    Form div = dH(*s.sigma) - s.lie;
    res.entries.emplace_back("divergence", div);
    if (s.complete) check(r, "divergence", div);
  }
  r.set("residuals", res);
  r.set("bounds_used", s.bounds_used);
  r.notes.push_back("current is canonical modulo d_H-closed forms");
  if (s.kind == SymmetryKind::NoneAtOrder)
    r.notes.push_back("no potential for the Lie derivative within the bounds; this proves nothing globally");
  r.notes.push_back(kLocal);
  flag_opaque(r, !s.complete || L.density.has_opaque() || u.has_opaque());
  return r;
}

Report cmd_lie(const ModelFile& m, const CommandRequest& req) {
  Report r("lie", m.signature);
  Lagrangian L = lagrangian(m, req);
  const VerticalField& u = symmetry(m, req);
  r.set("lagrangian", L.density);
  r.set("symmetry", u);
  r.set("lie", lie_derivative(u, L.form()));
  flag_opaque(r, L.density.has_opaque() || u.has_opaque());
  return r;
}

Report cmd_trivial(const ModelFile& m, const CommandRequest& req) {
  Report r("trivial", m.signature);
  Lagrangian L = lagrangian(m, req);
  SourceForm el = euler_lagrange(L);
  r.set("lagrangian", L.density);
  r.set("verdict", std::string(el.is_zero() ? "trivial" : "non-trivial"));
  r.set("el", el);
  r.notes.push_back(kLocal);
  flag_opaque(r, L.density.has_opaque());
  return r;
}

Report cmd_helmholtz(const ModelFile& m, const CommandRequest& req) {
  Report r("helmholtz", m.signature);
  SourceForm E;
  if (req.source || (!req.lagrangian && !m.sources.empty())) {
    E = pick(m.sources, req.source, "source", "--source");
    r.set("source_name", pick_name(m.sources, req.source));
  } else {
    Lagrangian L = lagrangian(m, req);
    E = euler_lagrange(L);
    r.set("lagrangian", L.density);
  }
  HelmholtzResult h = helmholtz_check(E);
  r.set("source", E);
  r.set("verdict", std::string(h.variational ? "variational" : "not variational"));
  r.set("obstruction", h.obstruction.is_zero() ? Report::Value() : Report::Value(h.obstruction));
  r.notes.push_back(kLocal);
  flag_opaque(r, E.has_opaque());
  return r;
}

Report cmd_master(const ModelFile& m, const CommandRequest& req) {
  Report r("master-check", m.signature);
  Lagrangian L = lagrangian(m, req);
  const VerticalField& u = symmetry(m, req);
  Form res = master_identity_residual(L, u);
  bool complete = !(L.density.has_opaque() || u.has_opaque());
  r.set("lagrangian", L.density);
  r.set("symmetry", u);
  r.set("residuals", Residuals{{{"master_identity", res}}});
  r.set("verdict", std::string(res.is_zero() ? "PASS" : (complete ? "FAIL" : "INCONCLUSIVE")));
  if (complete) check(r, "master_identity", res);
  flag_opaque(r, !complete);
  return r;
}

const Form& named_form(const ModelFile& m, const CommandRequest& req) {
  return pick(m.forms, req.form, "form", "--form");
}

Report cmd_decompose(const ModelFile& m, const CommandRequest& req) {
  Report r("decompose", m.signature);
  const Form& psi = named_form(m, req);
  const int n = static_cast<int>(m.signature.base_dim());
  for (auto [k, s] : psi.bidegrees())
    if (k == 0 || s != n) throw UsageError("decompose needs a form of bidegree (k, n) with k > 0");
  Bounds b = resolve_bounds(m, req, psi - tau(psi));
  SourceDecomposition d = decompose_source(psi, b);
  r.set("form", psi);
  r.set("source", d.source);
  r.set("potential", d.potential ? Report::Value(*d.potential) : Report::Value());
  if (d.potential) {
    Form res = psi - d.source - dH(*d.potential);
    r.set("residuals", Residuals{{{"decomposition", res}}});
    check(r, "decomposition", res);
  }
  r.set("verdict", std::string(d.potential ? "decomposed" : "no potential within bounds"));
  r.set("bounds_used", d.bounds_used);
  flag_opaque(r, psi.has_opaque());
  return r;
}

Report cmd_potential(const ModelFile& m, const CommandRequest& req) {
  Report r("potential", m.signature);
  Form sigma;
  if (req.form || (!req.lagrangian && !m.forms.empty())) {
    sigma = named_form(m, req);
    r.set("form", sigma);
  } else {
    Lagrangian L = lagrangian(m, req);
    sigma = L.form();
    r.set("lagrangian", L.density);
  }
  const int n = static_cast<int>(m.signature.base_dim());
  for (auto [k, s] : sigma.bidegrees())
    if (s == 0) throw UsageError("potential needs a form of horizontal degree >= 1");
  Bounds b = resolve_bounds(m, req, sigma);
  r.set("bounds_used", b);
  flag_opaque(r, sigma.has_opaque());

  // A top-degree form is exact only if delta kills its horizontal part and
  // tau kills its contact part.
  Form top = project_h(sigma, n);
  Form obstruction = tau(top);
  if (!project(top, 0).is_zero()) obstruction += delta_var(project(top, 0));
  Form closure = dH(sigma);
  if (!closure.is_zero() || !obstruction.is_zero()) {
    r.set("verdict", std::string("not exact"));
    r.set("potential", Report::Value());
    if (!closure.is_zero()) r.set("dH", closure);
    if (!obstruction.is_zero()) r.set("obstruction", obstruction);
    r.notes.push_back(kLocal);
    return r;
  }
  auto xi = find_horizontal_potential(sigma, b);
  r.set("verdict", std::string(xi ? "found" : "no potential within bounds"));
  r.set("potential", xi ? Report::Value(*xi) : Report::Value());
  if (xi) {
    Form res = dH(*xi) - sigma;
    r.set("residuals", Residuals{{{"potential", res}}});
    check(r, "potential", res);
  }
  r.notes.push_back(kLocal);
  return r;
}

}  // namespace

Report run_command(const ModelFile& model, const CommandRequest& req) {
  const auto& c = req.command;
  if (c == "el") return cmd_el(model, req);
  if (c == "split") return cmd_split(model, req);
  if (c == "noether") return cmd_noether(model, req);
  if (c == "lie") return cmd_lie(model, req);
  if (c == "trivial") return cmd_trivial(model, req);
  if (c == "helmholtz") return cmd_helmholtz(model, req);
  if (c == "master-check") return cmd_master(model, req);
  if (c == "decompose") return cmd_decompose(model, req);
  if (c == "potential") return cmd_potential(model, req);
  throw UsageError("unknown command '" + c + "'");
}

}  // namespace jetvar

#include "jetvar/calculus.hpp"

#include <stdexcept>

namespace jetvar {

VerticalField::VerticalField(std::map<int, Expression> c) {
  for (auto& [i, e] : c)
    if (!e.is_zero()) components.emplace(i, std::move(e));
}

int VerticalField::jet_order() const {
  int r = 0;
  for (const auto& [i, e] : components) r = std::max(r, e.jet_order());
  return r;
}

bool VerticalField::has_opaque() const {
  for (const auto& [i, e] : components)
    if (e.has_opaque()) return true;
  return false;
}

namespace {

// d_l of a single atom.
Expression total_derivative_atom(const Atom& a, int l) {
  switch (a.kind()) {
    case Atom::Kind::Base:
      return a.base_index() == l ? Expression(1) : Expression();
    case Atom::Kind::Jet:
      return Expression::jet(a.jet().field, a.jet().index.add(static_cast<std::size_t>(l)));
    case Atom::Kind::Func: {
      Expression inner = total_derivative(a.arg(), l);
      if (inner.is_zero()) return {};
      switch (a.fn()) {
        case Fn::Sin: return Expression::func(Fn::Cos, a.arg()) * inner;
        case Fn::Cos: return -Expression::func(Fn::Sin, a.arg()) * inner;
        case Fn::Exp: return Expression::atom(a) * inner;
      }
      return {};
    }
  }
  return {};
}

}  // namespace

Expression total_derivative(const Expression& f, int l) {
  Expression r;
  for (const auto& [m, c] : f.terms()) {
    for (const auto& [a, e] : m.factors()) {
      Expression da = total_derivative_atom(a, l);
      if (da.is_zero()) continue;
      r += Expression::term(m.without_one(a), c * e) * da;
    }
  }
  return r;
}

Expression total_derivative(const Expression& f, const MultiIndex& idx) {
  Expression r = f;
  for (int l : idx.indices()) r = total_derivative(r, l);
  return r;
}

Form total_derivative(const Form& phi, int l) {
  const std::size_t n = phi.dim();
  Form r(n);
  for (const auto& [m, c] : phi.terms()) {
    r.add_term(m, total_derivative(c, l));
    for (std::size_t j = 0; j < m.theta.size(); ++j) {
      std::vector<Generator> gens;
      for (int d : m.dx) gens.push_back(Generator::d(d));
      for (std::size_t k = 0; k < m.theta.size(); ++k) {
        JetVariable v = m.theta[k];
        if (k == j) v.index = v.index.add(static_cast<std::size_t>(l));
        gens.push_back(Generator::g(v));
      }
      r += Form::product(n, c, gens);
    }
  }
  return r;
}

Form total_derivative(const Form& phi, const MultiIndex& idx) {
  Form r = phi;
  for (int l : idx.indices()) r = total_derivative(r, l);
  return r;
}

Form dH(const Form& phi) {
  const std::size_t n = phi.dim();
  Form r(n);
  for (std::size_t l = 0; l < n; ++l) {
    Form dl = total_derivative(phi, static_cast<int>(l));
    if (!dl.is_zero()) r += wedge(Form::dx(n, static_cast<int>(l)), dl);
  }
  return r;
}

Form dV(const Form& phi) {
  const std::size_t n = phi.dim();
  Form r(n);
  for (const auto& [m, c] : phi.terms()) {
    for (const auto& v : c.jet_variables()) {
      Expression p = c.partial_jet(v);
      if (p.is_zero()) continue;
      auto [sign, mm] = wedge_monomials({{}, {v}}, m);
      if (sign == 0) continue;
      r.add_term(mm, sign > 0 ? p : -p);
    }
  }
  return r;
}

Form dTotal(const Form& phi) { return dH(phi) + dV(phi); }

MixedForm exterior_derivative(const MixedForm& phi) {
  const std::size_t n = phi.dim();
  MixedForm r(n);
  for (const auto& [m, c] : phi.terms()) {
    for (std::size_t l = 0; l < n; ++l) {
      Expression p = c.partial_base(static_cast<int>(l));
      if (p.is_zero()) continue;
      auto [sign, mm] = wedge_monomials({{static_cast<int>(l)}, {}}, m);
      if (sign != 0) r.add_term(mm, sign > 0 ? p : -p);
    }
    for (const auto& v : c.jet_variables()) {
      Expression p = c.partial_jet(v);
      if (p.is_zero()) continue;
      auto [sign, mm] = wedge_monomials({{}, {v}}, m);
      if (sign != 0) r.add_term(mm, sign > 0 ? p : -p);
    }
  }
  return r;
}

Form interior_jet(const JetVariable& v, const Form& phi) {
  Form r(phi.dim());
  for (const auto& [m, c] : phi.terms()) {
    for (std::size_t j = 0; j < m.theta.size(); ++j) {
      if (!(m.theta[j] == v)) continue;
      WedgeMonomial mm = m;
      mm.theta.erase(mm.theta.begin() + static_cast<long>(j));
      const bool odd = (m.dx.size() + j) % 2 == 1;
      r.add_term(mm, odd ? -c : c);
    }
  }
  return r;
}

Form tau_bar(const Form& phi) {
  const std::size_t n = phi.dim();
  std::set<JetVariable> thetas;
  for (const auto& [m, c] : phi.terms()) {
    if (m.horizontal_degree() != static_cast<int>(n) || m.contact_degree() == 0)
      throw std::invalid_argument("tau_bar needs a form of bidegree (k, n) with k > 0");
    thetas.insert(m.theta.begin(), m.theta.end());
  }
  Form r(n);
  for (const auto& v : thetas) {
    Form inner = total_derivative(interior_jet(v, phi), v.index);
    Form term = wedge(theta(n, {v.field, MultiIndex(n)}), inner);
    if (v.order() % 2) r -= term;
    else r += term;
  }
  return r;
}

Form tau(const Form& phi) {
  const std::size_t n = phi.dim();
  Form top = project_h(phi, static_cast<int>(n));
  std::set<int> degrees;
  for (const auto& [m, c] : top.terms()) degrees.insert(m.contact_degree());
  Form r(n);
  for (int k : degrees) {
    if (k == 0) continue;
    r += tau_bar(project(top, k)) * Expression(Rational(1, k));
  }
  return r;
}

Form delta_var(const Form& phi) {
  for (const auto& [m, c] : phi.terms())
    if (m.horizontal_degree() != static_cast<int>(phi.dim()))
      throw std::invalid_argument("variational operator needs horizontal degree n");
  return tau(dTotal(phi));
}

Expression prolonged_component(const VerticalField& u, const JetVariable& v) {
  return total_derivative(u.component(v.field), v.index);
}

Expression prolong_apply(const VerticalField& u, const Expression& f) {
  Expression r;
  for (const auto& v : f.jet_variables()) {
    Expression uv = prolonged_component(u, v);
    if (uv.is_zero()) continue;
    r += uv * f.partial_jet(v);
  }
  return r;
}

Form contract(const VerticalField& u, const Form& phi) {
  std::map<JetVariable, Expression> cache;
  auto prolonged = [&](const JetVariable& v) -> const Expression& {
    auto it = cache.find(v);
    if (it == cache.end()) it = cache.emplace(v, prolonged_component(u, v)).first;
    return it->second;
  };
  Form r(phi.dim());
  for (const auto& [m, c] : phi.terms()) {
    for (std::size_t j = 0; j < m.theta.size(); ++j) {
      const Expression& uv = prolonged(m.theta[j]);
      if (uv.is_zero()) continue;
      WedgeMonomial mm = m;
      mm.theta.erase(mm.theta.begin() + static_cast<long>(j));
      Expression coef = c * uv;
      r.add_term(mm, (m.dx.size() + j) % 2 ? -coef : coef);
    }
  }
  return r;
}

Form lie_derivative(const VerticalField& u, const Form& phi) {
  return contract(u, dTotal(phi)) + dTotal(contract(u, phi));
}

}  // namespace jetvar

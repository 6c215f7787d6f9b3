#include "jetvar/variational.hpp"

#include <algorithm>
#include <stdexcept>

#include "jetvar/linear_solve.hpp"

namespace jetvar {

const char* to_string(SymmetryKind k) {
  switch (k) {
    case SymmetryKind::Exact: return "exact";
    case SymmetryKind::Divergence: return "divergence";
    case SymmetryKind::NoneAtOrder: return "none-at-order";
  }
  return "?";
}

Bounds default_bounds(const Form& sigma) {
  return {sigma.jet_order() + 1, sigma.degree() + 1};
}

SourceForm euler_lagrange(const Lagrangian& L) {
  const std::size_t n = L.signature.base_dim();
  SourceForm out(n);
  for (const auto& v : L.density.jet_variables()) {
    Expression term = total_derivative(L.density.partial_jet(v), v.index);
    out.set(v.field, v.order() % 2 ? out.component(v.field) - term
                                    : out.component(v.field) + term);
  }
  return out;
}

namespace {

std::vector<Generator> volume_after(const JetVariable& v, std::size_t n, int skip = -1) {
  std::vector<Generator> g{Generator::g(v)};
  for (std::size_t l = 0; l < n; ++l)
    if (static_cast<int>(l) != skip) g.push_back(Generator::d(static_cast<int>(l)));
  return g;
}

// d/dx^l _| (dx^1 ^ ... ^ dx^n) = (-1)^l (omega without dx^l), 0-based l.
Form omega_l(std::size_t n, int l, const JetVariable& v, const Expression& c) {
  Expression signed_c = l % 2 ? -c : c;
  return Form::product(n, signed_c, volume_after(v, n, l));
}

}  // namespace

VariationalSplit first_variational_split(const Lagrangian& L) {
  const std::size_t n = L.signature.base_dim();
  const Form dL = dV(L.form());
  Form work = dL;
  Form boundary(n);
  while (!work.is_zero()) {
    // Terms are ordered by their theta, so the last one has the highest order.
    const auto& [m, f] = *work.terms().rbegin();
    const JetVariable v = m.theta.at(0);
    if (v.order() == 0) break;
    const WedgeMonomial mono = m;
    const Expression coef = f;
    // coef * mono == g * theta_v ^ omega.
    const int orient = Form::product(n, 1, volume_after(v, n)).coefficient(mono).constant() > 0 ? 1 : -1;
    const Expression g = orient > 0 ? coef : -coef;
    const int l = v.index.largest();
    const JetVariable lower{v.field, v.index.remove(static_cast<std::size_t>(l))};

    work.add_term(mono, -coef);
    work += Form::product(n, -total_derivative(g, l), volume_after(lower, n));
    boundary -= omega_l(n, l, lower, g);
  }
  auto el = SourceForm::from_form(work);
  if (!el) throw std::logic_error("integration by parts left a non-source remainder");
  VariationalSplit out{*el, boundary, false};
  if (!(dL == out.el.to_form() + dH(boundary)))
    throw std::logic_error("first variational split residual is not zero");
  out.residual_checked = true;
  return out;
}

SymmetryReport noether(const Lagrangian& L, const VerticalField& u, std::optional<Bounds> bounds) {
  const std::size_t n = L.signature.base_dim();
  SymmetryReport rep;
  rep.complete = !(L.density.has_opaque() || u.has_opaque());
  VariationalSplit split = first_variational_split(L);
  rep.el = split.el;
  rep.boundary = split.boundary;
  rep.lie = lie_derivative(u, L.form());
  rep.bounds_used = bounds ? *bounds : default_bounds(rep.lie);
  const Form canonical = -contract(u, split.boundary);

  if (rep.lie.is_zero()) {
    rep.kind = SymmetryKind::Exact;
    rep.current = canonical;
  } else if (!rep.lie.has_opaque() && delta_var(rep.lie).is_zero()) {
    if (auto sigma = find_horizontal_potential(rep.lie, rep.bounds_used)) {
      rep.kind = SymmetryKind::Divergence;
      rep.sigma = *sigma;
      rep.current = canonical - *sigma;
    }
  }

  if (rep.current) {
    Form residual = dH(*rep.current) + contract(u, split.el.to_form());
    if (residual.is_zero()) {
      rep.onshell_identity_checked = true;
    } else if (rep.complete) {
      throw std::logic_error("Noether identity d_H J + u _| delta L = 0 failed");
    }
  }
  (void)n;
  return rep;
}

HelmholtzResult helmholtz_check(const SourceForm& E) {
  HelmholtzResult r;
  r.obstruction = delta_var(E.to_form());
  r.variational = r.obstruction.is_zero();
  return r;
}

Form master_identity_residual(const Lagrangian& L, const VerticalField& u) {
  Form lhs = delta_var(lie_derivative(u, L.form()));
  Form rhs = tau(lie_derivative(u, euler_lagrange(L).to_form()));
  return lhs - rhs;
}

bool is_variationally_trivial(const Lagrangian& L) {
  return euler_lagrange(L).is_zero();
}

// ------------------------------------------------------------------------
// Horizontal potentials.
//
// d_H preserves a grading of coefficient-monomial x wedge-monomial pairs:
// the number of factors belonging to each field (jets and thetas alike)
// and, for every base index l,
//   w_l = (l-count over all jet and theta multi-indices)
//         - (degree in x^l) - [dx^l present].
// The ansatz therefore only needs candidates whose grade occurs in sigma.

namespace {

struct Grade {
  int k = 0;
  int s = 0;
  std::map<int, int> fields;
  std::vector<int> w;
  auto operator<=>(const Grade&) const = default;
};

std::optional<Grade> grade_of(const Monomial& mono, const WedgeMonomial& wm, std::size_t n) {
  Grade g;
  g.k = wm.contact_degree();
  g.s = wm.horizontal_degree();
  g.w.assign(n, 0);
  for (const auto& [a, e] : mono.factors()) {
    switch (a.kind()) {
      case Atom::Kind::Base: g.w[static_cast<std::size_t>(a.base_index())] -= e; break;
      case Atom::Kind::Jet:
        g.fields[a.jet().field] += e;
        for (std::size_t l = 0; l < n; ++l) g.w[l] += e * a.jet().index.count(l);
        break;
      case Atom::Kind::Func: return std::nullopt;
    }
  }
  for (const auto& v : wm.theta) {
    g.fields[v.field] += 1;
    for (std::size_t l = 0; l < n; ++l) g.w[l] += v.index.count(l);
  }
  for (int l : wm.dx) g.w[static_cast<std::size_t>(l)] -= 1;
  return g;
}

using Candidate = std::pair<WedgeMonomial, Monomial>;

class AnsatzBuilder {
 public:
  AnsatzBuilder(std::size_t n, const Bounds& b)
      : n_(n), bounds_(b), pool_(multi_indices_up_to(n, b.max_jet_order)) {}

  void add_grade(const Grade& target) {
    target_ = &target;
    std::vector<int> all(n_);
    for (std::size_t l = 0; l < n_; ++l) all[l] = static_cast<int>(l);
    // dx subsets of size s-1.
    std::vector<std::vector<int>> dx_sets;
    subsets(all, static_cast<std::size_t>(target.s - 1), 0, {}, dx_sets);
    std::vector<JetVariable> theta_pool;
    for (const auto& [field, deg] : target.fields)
      for (const auto& idx : pool_) theta_pool.push_back({field, idx});
    std::sort(theta_pool.begin(), theta_pool.end());
    for (const auto& dx : dx_sets) {
      std::vector<JetVariable> thetas;
      choose_thetas(theta_pool, 0, dx, thetas);
    }
  }

  const std::set<Candidate>& candidates() const { return out_; }

 private:
  static void subsets(const std::vector<int>& all, std::size_t size, std::size_t from,
                      std::vector<int> cur, std::vector<std::vector<int>>& out) {
    if (cur.size() == size) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < all.size(); ++i) {
      cur.push_back(all[i]);
      subsets(all, size, i + 1, cur, out);
      cur.pop_back();
    }
  }

  void choose_thetas(const std::vector<JetVariable>& pool, std::size_t from,
                     const std::vector<int>& dx, std::vector<JetVariable>& chosen) {
    if (static_cast<int>(chosen.size()) == target_->k) {
      std::map<int, int> remaining = target_->fields;
      for (const auto& v : chosen)
        if (--remaining[v.field] < 0) return;
      WedgeMonomial wm{dx, chosen};
      choose_jets(wm, remaining);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      chosen.push_back(pool[i]);
      choose_thetas(pool, i + 1, dx, chosen);
      chosen.pop_back();
    }
  }

  void choose_jets(const WedgeMonomial& wm, const std::map<int, int>& remaining) {
    int jets = 0;
    for (const auto& [f, r] : remaining) jets += r;
    if (jets > bounds_.max_poly_degree) return;
    int theta_orders = 0;
    for (const auto& v : wm.theta) theta_orders += v.order();
    int wsum = 0;
    for (int x : target_->w) wsum += x;
    // x-degree = jet orders + theta orders - |dx| - sum w, and jets + x-degree <= D.
    const int budget = bounds_.max_poly_degree - jets + static_cast<int>(wm.dx.size()) + wsum - theta_orders;
    if (budget < 0) return;
    std::vector<std::pair<int, int>> fields(remaining.begin(), remaining.end());
    std::vector<JetVariable> picked;
    pick(wm, fields, 0, 0, 0, budget, picked);
  }

  void pick(const WedgeMonomial& wm, const std::vector<std::pair<int, int>>& fields,
            std::size_t fi, int taken, std::size_t from, int budget,
            std::vector<JetVariable>& picked) {
    if (fi == fields.size()) {
      finish(wm, picked);
      return;
    }
    if (taken == fields[fi].second) {
      pick(wm, fields, fi + 1, 0, 0, budget, picked);
      return;
    }
    for (std::size_t i = from; i < pool_.size(); ++i) {
      const int ord = pool_[i].order();
      if (ord > budget) break;  // pool_ is sorted by order
      picked.push_back({fields[fi].first, pool_[i]});
      pick(wm, fields, fi, taken + 1, i, budget - ord, picked);
      picked.pop_back();
    }
  }

  void finish(const WedgeMonomial& wm, const std::vector<JetVariable>& picked) {
    std::vector<int> counts(n_, 0);
    for (const auto& v : picked)
      for (std::size_t l = 0; l < n_; ++l) counts[l] += v.index.count(l);
    for (const auto& v : wm.theta)
      for (std::size_t l = 0; l < n_; ++l) counts[l] += v.index.count(l);
    for (int l : wm.dx) counts[static_cast<std::size_t>(l)] -= 1;
    Monomial mono;
    int degree = static_cast<int>(picked.size());
    for (std::size_t l = 0; l < n_; ++l) {
      const int e = counts[l] - target_->w[l];
      if (e < 0) return;
      degree += e;
      if (e > 0) mono = mono * Monomial(Atom::base(static_cast<int>(l)), e);
    }
    if (degree > bounds_.max_poly_degree) return;
    for (const auto& v : picked) mono = mono * Monomial(Atom::jet(v));
    out_.emplace(wm, mono);
  }

  std::size_t n_;
  Bounds bounds_;
  std::vector<MultiIndex> pool_;
  const Grade* target_ = nullptr;
  std::set<Candidate> out_;
};

}  // namespace

std::optional<Form> find_horizontal_potential(const Form& sigma, const Bounds& bounds) {
  if (bounds.max_jet_order <= 0 || bounds.max_poly_degree <= 0)
    throw std::invalid_argument("potential bounds must be positive");
  const std::size_t n = sigma.dim();
  if (sigma.is_zero()) return Form(n);
  if (sigma.has_opaque()) return std::nullopt;

  std::set<Grade> grades;
  for (const auto& [wm, c] : sigma.terms()) {
    if (wm.horizontal_degree() == 0) return std::nullopt;
    for (const auto& [mono, q] : c.terms()) grades.insert(*grade_of(mono, wm, n));
  }

  AnsatzBuilder builder(n, bounds);
  for (const auto& g : grades) builder.add_grade(g);
  const std::vector<Candidate> cands(builder.candidates().begin(), builder.candidates().end());

  std::map<Candidate, std::map<int, Rational>> rows;
  for (std::size_t j = 0; j < cands.size(); ++j) {
    Form f(n);
    f.add_term(cands[j].first, Expression::term(cands[j].second, 1));
    const Form image = dH(f);
    for (const auto& [wm, c] : image.terms())
      for (const auto& [mono, q] : c.terms()) rows[{wm, mono}][static_cast<int>(j)] += q;
  }
  std::map<Candidate, Rational> rhs;
  for (const auto& [wm, c] : sigma.terms())
    for (const auto& [mono, q] : c.terms()) {
      rhs[{wm, mono}] = q;
      rows.try_emplace({wm, mono});
    }

  SparseSystem sys;
  sys.columns = static_cast<int>(cands.size());
  for (auto& [key, row] : rows) {
    auto it = rhs.find(key);
    sys.add_row(std::move(row), it == rhs.end() ? Rational(0) : it->second);
  }
  auto sol = solve_exact(sys);
  if (!sol) return std::nullopt;

  Form xi(n);
  for (std::size_t j = 0; j < cands.size(); ++j)
    if ((*sol)[j] != 0) xi.add_term(cands[j].first, Expression::term(cands[j].second, (*sol)[j]));
  if (!(dH(xi) == sigma)) throw std::logic_error("horizontal potential failed its residual check");
  return xi;
}

SourceDecomposition decompose_source(const Form& psi, std::optional<Bounds> bounds) {
  const std::size_t n = psi.dim();
  for (const auto& [m, c] : psi.terms())
    if (m.horizontal_degree() != static_cast<int>(n) || m.contact_degree() == 0)
      throw std::invalid_argument("decompose_source needs a form of bidegree (k, n) with k > 0");
  SourceDecomposition out;
  out.source = tau(psi);
  Form rest = psi - out.source;
  out.bounds_used = bounds ? *bounds : default_bounds(rest);
  if (rest.is_zero()) out.potential = Form(n);
  else out.potential = find_horizontal_potential(rest, out.bounds_used);
  return out;
}

}  // namespace jetvar

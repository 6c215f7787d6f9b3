#include "jetvar/form.hpp"

#include <algorithm>

namespace jetvar {

std::strong_ordering WedgeMonomial::operator<=>(const WedgeMonomial& o) const {
  if (auto c = theta.size() <=> o.theta.size(); c != 0) return c;
  if (auto c = dx.size() <=> o.dx.size(); c != 0) return c;
  if (auto c = dx <=> o.dx; c != 0) return c;
  return theta <=> o.theta;
}

namespace {

// Merges two strictly increasing blocks; returns the sign of the shuffle,
// 0 on a repeated element.
template <class T>
int merge_block(const std::vector<T>& a, const std::vector<T>& b, std::vector<T>& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  long inversions = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      inversions += static_cast<long>(a.size() - i);
      out.push_back(b[j++]);
    }
  }
  out.insert(out.end(), a.begin() + static_cast<long>(i), a.end());
  out.insert(out.end(), b.begin() + static_cast<long>(j), b.end());
  return inversions % 2 ? -1 : 1;
}

template <class T>
int sort_with_sign(std::vector<T>& v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t j = i; j > 0 && v[j] < v[j - 1]; --j) {
      std::swap(v[j], v[j - 1]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] == v[i - 1]) return 0;
  return sign;
}

}  // namespace

std::pair<int, WedgeMonomial> wedge_monomials(const WedgeMonomial& a, const WedgeMonomial& b) {
  WedgeMonomial m;
  int sign = merge_block(a.dx, b.dx, m.dx);
  if (sign == 0) return {0, {}};
  int s2 = merge_block(a.theta, b.theta, m.theta);
  if (s2 == 0) return {0, {}};
  sign *= s2;
  // b's dx block moves past a's theta block.
  if ((a.theta.size() * b.dx.size()) % 2) sign = -sign;
  return {sign, std::move(m)};
}

std::pair<int, WedgeMonomial> normalize_factors(const std::vector<Generator>& factors) {
  WedgeMonomial m;
  int sign = 1;
  for (const auto& g : factors) {
    if (g.is_dx) {
      // The new dx jumps over every theta already collected.
      if (m.theta.size() % 2) sign = -sign;
      m.dx.push_back(g.base);
    } else {
      m.theta.push_back(g.jet);
    }
  }
  int s1 = sort_with_sign(m.dx);
  int s2 = sort_with_sign(m.theta);
  if (s1 == 0 || s2 == 0) return {0, {}};
  return {sign * s1 * s2, std::move(m)};
}

namespace {

template <class To, class From>
To change_basis(const From& phi, int sign_of_correction) {
  const std::size_t n = phi.dim();
  To out(n);
  for (const auto& [m, c] : phi.terms()) {
    To acc = To::scalar(n, c);
    for (int l : m.dx) acc = wedge(acc, To::dx(n, l));
    for (const auto& v : m.theta) {
      To g = To::generator(n, v);
      for (std::size_t l = 0; l < n; ++l) {
        Expression shifted = Expression::jet(v.field, v.index.add(l));
        g += To::dx(n, static_cast<int>(l)) *
             (sign_of_correction > 0 ? shifted : -shifted);
      }
      acc = wedge(acc, g);
    }
    out += acc;
  }
  return out;
}

}  // namespace

Form to_contact_basis(const MixedForm& phi) {
  return change_basis<Form>(phi, +1);
}

MixedForm from_contact_basis(const Form& phi) {
  return change_basis<MixedForm>(phi, -1);
}

Form project(const Form& phi, int k) {
  Form r(phi.dim());
  for (const auto& [m, c] : phi.terms())
    if (m.contact_degree() == k) r.add_term(m, c);
  return r;
}

Form project_h(const Form& phi, int s) {
  Form r(phi.dim());
  for (const auto& [m, c] : phi.terms())
    if (m.horizontal_degree() == s) r.add_term(m, c);
  return r;
}

Form h0(const Form& phi) {
  return project(project_h(phi, static_cast<int>(phi.dim())), 0);
}

Form h0(const MixedForm& phi) { return h0(to_contact_basis(phi)); }

Form SourceForm::to_form() const {
  // theta^i ^ omega is stored as omega ^ theta^i with sign (-1)^n.
  Form r(dim);
  WedgeMonomial m;
  for (std::size_t l = 0; l < dim; ++l) m.dx.push_back(static_cast<int>(l));
  const bool flip = dim % 2 == 1;
  for (const auto& [i, e] : components) {
    WedgeMonomial mi = m;
    mi.theta.push_back({i, MultiIndex(dim)});
    r.add_term(mi, flip ? -e : e);
  }
  return r;
}

std::optional<SourceForm> SourceForm::from_form(const Form& phi) {
  const std::size_t n = phi.dim();
  SourceForm s(n);
  const bool flip = n % 2 == 1;
  for (const auto& [m, c] : phi.terms()) {
    if (m.horizontal_degree() != static_cast<int>(n) || m.theta.size() != 1 ||
        m.theta[0].order() != 0)
      return std::nullopt;
    s.set(m.theta[0].field, s.component(m.theta[0].field) + (flip ? -c : c));
  }
  return s;
}

}  // namespace jetvar

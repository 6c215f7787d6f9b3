#include "doctest.h"

#include "jetvar/variational.hpp"
#include "support/chart.hpp"
#include "support/random.hpp"

using namespace jetvar;
using jetvar::testing::Chart;

namespace {

Lagrangian lag(const Chart& c, std::string_view density) { return {c.sig, c.E(density)}; }

Form residual_split(const Lagrangian& L, const VariationalSplit& s) {
  return project(dTotal(L.form()), 1) - s.el.to_form() - dH(s.boundary);
}

}  // namespace

TEST_CASE("euler_lagrange") {
  Chart c({"x"});
  CHECK(euler_lagrange(lag(c, "y")).component(0) == Expression(1));
  CHECK(euler_lagrange(lag(c, "1/2*y[x]^2")).component(0) == c.E("-y[x,x]"));
  CHECK(euler_lagrange(lag(c, "1/2*y[x,x]^2")).component(0) == c.E("y[x,x,x,x]"));

  Chart w({"t", "x"});
  SourceForm e = euler_lagrange(lag(w, "1/2*(y[t]^2 - y[x]^2)"));
  CHECK(e.component(0) == w.E("-y[t,t] + y[x,x]"));
  CHECK(e.to_form() == w.F("(-y[t,t] + y[x,x])*theta[y]^dt^dx"));
}

TEST_CASE("wave equation EL at random points") {
  Chart w({"t", "x"});
  Expression e = euler_lagrange(lag(w, "1/2*(y[t]^2 - y[x]^2)")).component(0);
  testing::Random rng(51);
  for (int p = 0; p < 10; ++p) {
    Rational ytt = rng.rational(), yxx = rng.rational();
    std::map<Atom, Rational> pt = {{Atom::jet(w.J(0, {0, 0})), ytt}, {Atom::jet(w.J(0, {1, 1})), yxx}};
    CHECK(e.eval(pt) == yxx - ytt);
  }
}

TEST_CASE("first_variational_split") {
  Chart c({"x"});
  auto L1 = lag(c, "1/2*y[x]^2");
  auto s1 = first_variational_split(L1);
  CHECK(s1.residual_checked);
  CHECK(s1.el.component(0) == c.E("-y[x,x]"));
  CHECK(s1.boundary == c.F("-y[x]*theta[y]"));
  CHECK(residual_split(L1, s1).is_zero());

  auto s2 = first_variational_split(lag(c, "y"));
  CHECK(s2.el.component(0) == Expression(1));
  CHECK(s2.boundary.is_zero());

  auto L3 = lag(c, "1/2*y[x,x]^2");
  auto s3 = first_variational_split(L3);
  CHECK(s3.el.component(0) == c.E("y[x,x,x,x]"));
  CHECK(s3.boundary == c.F("-y[x,x]*theta[y; x] + y[x,x,x]*theta[y]"));
  CHECK(residual_split(L3, s3).is_zero());
}

TEST_CASE("first-order boundary term in two dimensions") {
  // For first-order L the boundary term is -sum dL/dy_l theta ^ w_l with
  // w_x = dt, w_t = -dx for w = dx ^ dt.
  Chart c({"x", "t"});
  auto s = first_variational_split(lag(c, "1/2*(y[t]^2 - y[x]^2)"));
  CHECK(s.boundary == c.F("y[x]*theta[y]^dt + y[t]*theta[y]^dx"));
}

TEST_CASE("noether: rotation is an exact symmetry") {
  Chart c({"x"}, {"u", "v"});
  auto L = lag(c, "1/2*(u[x]^2 + v[x]^2)");
  auto X = c.V("-v*d/du + u*d/dv");
  auto r = noether(L, X);
  CHECK(r.kind == SymmetryKind::Exact);
  CHECK(r.lie.is_zero());
  REQUIRE(r.current);
  CHECK(*r.current == c.F("u*v[x] - v*u[x]"));
  CHECK(r.onshell_identity_checked);
  // d_x J = -[(-v)(-u_xx) + u(-v_xx)]
  CHECK(dH(*r.current) == c.F("(-(v*u[x,x]) + u*v[x,x])*dx"));
}

TEST_CASE("noether: scaling of the free particle is not a symmetry") {
  Chart c({"x"});
  auto r = noether(lag(c, "1/2*y[x]^2"), c.V("y*d/dy"));
  CHECK(r.kind == SymmetryKind::NoneAtOrder);
  CHECK(r.lie == c.F("(y[x]^2)*dx"));
  CHECK(euler_lagrange({c.sig, c.E("y[x]^2")}).component(0) == c.E("-2*y[x,x]"));
  CHECK_FALSE(r.current);
}

TEST_CASE("noether: translation in y") {
  Chart c({"x"});
  auto r = noether(lag(c, "1/2*y[x]^2"), c.V("d/dy"));
  CHECK(r.kind == SymmetryKind::Exact);
  REQUIRE(r.current);
  CHECK(*r.current == c.F("y[x]"));
  // dH J = -u _| delta L = y_xx dx
  CHECK(dH(*r.current) == c.F("y[x,x]*dx"));
}

TEST_CASE("noether: Galilean shift is a divergence symmetry") {
  Chart c({"x"});
  auto r = noether(lag(c, "1/2*y[x]^2"), c.V("x*d/dy"));
  CHECK(r.kind == SymmetryKind::Divergence);
  CHECK(r.lie == c.F("y[x]*dx"));
  REQUIRE(r.sigma);
  CHECK(*r.sigma == c.F("y"));
  REQUIRE(r.current);
  CHECK(*r.current == c.F("x*y[x] - y"));
  CHECK(r.onshell_identity_checked);
}

TEST_CASE("helmholtz_check") {
  Chart c({"x"});
  SourceForm adv(1);
  adv.set(0, c.E("y[x]"));
  auto h1 = helmholtz_check(adv);
  CHECK_FALSE(h1.variational);
  CHECK(h1.obstruction == c.F("-theta[y]^theta[y; x]^dx"));

  SourceForm e(1);
  e.set(0, c.E("y[x,x]"));
  auto h2 = helmholtz_check(e);
  CHECK(h2.variational);
  CHECK(h2.obstruction.is_zero());
  CHECK(euler_lagrange(lag(c, "-1/2*y[x]^2")) == e);
}

TEST_CASE("master_identity_residual") {
  Chart c({"x"});
  CHECK(master_identity_residual(lag(c, "1/2*y[x]^2"), c.V("y*d/dy")).is_zero());
  CHECK(delta_var(lie_derivative(c.V("y*d/dy"), lag(c, "1/2*y[x]^2").form())) ==
        c.F("-2*y[x,x]*theta[y]^dx"));
  CHECK(master_identity_residual(lag(c, "y[x]^3*y"), VerticalField()).is_zero());
}

TEST_CASE("find_horizontal_potential") {
  Chart c({"x"});
  auto p1 = find_horizontal_potential(c.F("y[x]*dx"), {1, 1});
  REQUIRE(p1);
  CHECK(*p1 == c.F("y"));
  auto p2 = find_horizontal_potential(c.F("(y*y[x])*dx"), {1, 2});
  REQUIRE(p2);
  CHECK(*p2 == c.F("1/2*y^2"));
  for (int r = 1; r <= 3; ++r)
    for (int d = 1; d <= 3; ++d) CHECK_FALSE(find_horizontal_potential(c.F("y*dx"), {r, d}));
  CHECK_THROWS_AS(find_horizontal_potential(c.F("y[x]*dx"), {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(find_horizontal_potential(c.F("y[x]*dx"), {1, -1}), std::invalid_argument);
  auto p3 = find_horizontal_potential(c.F("dx"), default_bounds(c.F("dx")));
  REQUIRE(p3);
  CHECK(*p3 == c.F("x"));
  CHECK(find_horizontal_potential(Form(1), {1, 1})->is_zero());
}

TEST_CASE("find_horizontal_potential in two dimensions") {
  Chart c2({"x", "t"}, {"u"});
  Form s2 = c2.F("(u[x]*u[t] + u*u[x,t])*dx^dt");
  auto p = find_horizontal_potential(s2, default_bounds(s2));
  REQUIRE(p);
  CHECK(dH(*p) == s2);
}

TEST_CASE("decompose_source") {
  Chart c({"x"});
  auto d1 = decompose_source(c.F("theta[y]^dx"));
  CHECK(d1.source == c.F("theta[y]^dx"));
  REQUIRE(d1.potential);
  CHECK(d1.potential->is_zero());

  Form psi = c.F("y*theta[y; x]^dx");
  auto d2 = decompose_source(psi);
  CHECK(d2.source == c.F("-y[x]*theta[y]^dx"));
  REQUIRE(d2.potential);
  CHECK(*d2.potential == c.F("-y*theta[y]"));
  CHECK(psi - d2.source == dH(*d2.potential));
  CHECK_THROWS_AS(decompose_source(c.F("y*dx")), std::invalid_argument);
}

TEST_CASE("is_variationally_trivial") {
  Chart c({"x"});
  CHECK(is_variationally_trivial(lag(c, "y[x]")));
  CHECK_FALSE(is_variationally_trivial(lag(c, "1/2*y[x]^2")));
  Chart c2({"t", "x"});
  CHECK(is_variationally_trivial(lag(c2, "y[x]*y[t] - y[t]*y[x]")));
}

TEST_CASE("route agreement and first variational formula on random Lagrangians") {
  testing::Random rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    auto sig = rng.signature();
    Lagrangian L{sig, rng.polynomial(sig, 2, 3, 4)};
    SourceForm el = euler_lagrange(L);
    CHECK(el.to_form() == delta_var(L.form()));
    auto split = first_variational_split(L);
    CHECK(split.el == el);
    CHECK(residual_split(L, split).is_zero());
    CHECK(helmholtz_check(el).variational);
    if (trial % 2 == 0) {
      VerticalField u = rng.field(sig, 1, 2);
      Form hn7 = lie_derivative(u, L.form()) - contract(u, el.to_form()) + dH(contract(u, split.boundary));
      CHECK(hn7.is_zero());
      CHECK(master_identity_residual(L, u).is_zero());
    }
  }
}

TEST_CASE("the literal master identity holds for order-zero fields") {
  testing::Random rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    auto sig = rng.signature();
    Lagrangian L{sig, rng.polynomial(sig, 2, 3, 3)};
    VerticalField u = rng.field(sig, 0, 2);
    CHECK(delta_var(lie_derivative(u, L.form())) == lie_derivative(u, euler_lagrange(L).to_form()));
  }
}

TEST_CASE("noether reports satisfy the off-shell identity") {
  testing::Random rng(63);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto sig = rng.signature();
    Lagrangian L{sig, rng.polynomial(sig, 1, 2, 3)};
    VerticalField u = rng.field(sig, 0, 1);
    auto r = noether(L, u);
    if (r.kind == SymmetryKind::NoneAtOrder) continue;
    ++checked;
    REQUIRE(r.current);
    CHECK(r.onshell_identity_checked);
    CHECK((dH(*r.current) + contract(u, r.el.to_form())).is_zero());
    if (r.kind == SymmetryKind::Divergence) CHECK(dH(*r.sigma) == r.lie);
  }
  CHECK(checked > 0);
}

TEST_CASE("triviality round trip") {
  testing::Random rng(64);
  for (int trial = 0; trial < 50; ++trial) {
    auto sig = rng.signature();
    const int n = static_cast<int>(sig.base_dim());
    Form xi = rng.form(sig, 0, n - 1, 1, 2, 2);
    Form L = dH(xi);
    CHECK(delta_var(L).is_zero());
    auto p = find_horizontal_potential(L, default_bounds(L));
    REQUIRE(p);
    CHECK(dH(*p) == L);
  }
}

TEST_CASE("decomposition of random exact top forms") {
  testing::Random rng(65);
  for (int trial = 0; trial < 30; ++trial) {
    auto sig = rng.signature();
    const int n = static_cast<int>(sig.base_dim());
    Form xi = rng.form(sig, 1, n - 1, 1, 1, 2);
    Form psi = dH(xi);
    if (psi.is_zero()) continue;
    auto d = decompose_source(psi);
    CHECK(d.source.is_zero());
    REQUIRE(d.potential);
    CHECK(dH(*d.potential) == psi);
  }
}

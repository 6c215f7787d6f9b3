#include "doctest.h"

#include <cmath>

#include "support/chart.hpp"
#include "support/random.hpp"

using namespace jetvar;
using jetvar::testing::Chart;

TEST_CASE("ring arithmetic") {
  Chart c({"x"});
  auto y = c.E("y");
  CHECK((y + (-y)).is_zero());
  CHECK(c.E("y[x]") * c.E("y[x]") == int_pow(c.E("y[x]"), 2));
  CHECK(Expression(2) * y + Expression(3) * y == c.E("5*y"));
  CHECK(Rational(1, 2) * c.E("4*y") == c.E("2*y"));
  CHECK(int_pow(y, 0) == Expression(1));
}

TEST_CASE("effective jet order is the max of the operands") {
  Chart c({"x", "t"});
  CHECK(c.E("y[x,t]").jet_order() == 2);
  CHECK((c.E("y[x]") + c.E("y[t,t,t]")).jet_order() == 3);
  CHECK((c.E("y[x]") * c.E("y")).jet_order() == 1);
  CHECK(c.E("x").jet_order() == 0);
  CHECK(c.E("sin(y[x,x])").jet_order() == 2);
}

TEST_CASE("partial_base") {
  Chart c({"x"});
  CHECK(c.E("x*y[x]").partial_base(0) == c.E("y[x]"));
  CHECK(c.E("y[x]^2").partial_base(0).is_zero());
  CHECK(c.E("sin(x)*y").partial_base(0) == c.E("cos(x)*y"));
  CHECK(c.E("cos(x)").partial_base(0) == c.E("-sin(x)"));
  CHECK(c.E("exp(2*x)").partial_base(0) == c.E("2*exp(2*x)"));
}

TEST_CASE("partial_jet") {
  Chart c({"x"});
  MultiIndex x = MultiIndex::from_indices(1, {0});
  MultiIndex xx = MultiIndex::from_indices(1, {0, 0});
  CHECK(c.E("1/2*y[x]^2").partial_jet(0, x) == c.E("y[x]"));
  CHECK(c.E("y*y[x,x]").partial_jet(0, xx) == c.E("y"));
  CHECK(c.E("y[x]").partial_jet(0, MultiIndex(1)).is_zero());
}

TEST_CASE("substitute is simultaneous") {
  Chart c({"x"});
  auto yx = Atom::jet(c.J(0, {0}));
  auto y0 = Atom::jet(c.J(0, {}));
  CHECK(c.E("y[x]^2").substitute({{yx, Expression(3)}}) == Expression(9));
  CHECK(c.E("y + y[x]").substitute({{y0, c.E("y[x]")}}) == c.E("2*y[x]"));
  CHECK(c.E("x*y").substitute({}) == c.E("x*y"));
  CHECK(c.E("sin(y)").substitute({{y0, Expression(0)}}).is_zero());
}

TEST_CASE("zero test and exact evaluation") {
  Chart c({"x"});
  CHECK(c.E("(y+1)^2 - y^2 - 2*y - 1").is_zero());
  CHECK_FALSE(c.E("y[x]").is_zero());
  std::map<Atom, Rational> pt = {{Atom::jet(c.J(0, {})), 2}, {Atom::jet(c.J(0, {0})), 3}};
  CHECK(c.E("y[x]*y").eval(pt) == 6);
  CHECK_THROWS_AS(c.E("x*y").eval(pt), MissingBinding);
}

TEST_CASE("opaque atoms evaluate to high precision") {
  Chart c({"x"});
  for (int k = -6; k <= 6; ++k) {
    Rational a(k, 3);
    std::map<Atom, Rational> pt = {{Atom::base(0), a}};
    CHECK(std::abs(c.E("sin(x)").eval(pt).get_d() - std::sin(a.get_d())) < 1e-15);
    CHECK(std::abs(c.E("cos(x)").eval(pt).get_d() - std::cos(a.get_d())) < 1e-15);
    CHECK(std::abs(c.E("exp(x)").eval(pt).get_d() - std::exp(a.get_d())) < 1e-12 * std::exp(a.get_d()));
    // Pythagoras to far below double precision.
    Rational s = c.E("sin(x)").eval(pt), co = c.E("cos(x)").eval(pt);
    Rational err = s * s + co * co - 1;
    CHECK(abs(err) < Rational(1, 1000000) * Rational(1, 1000000) * Rational(1, 1000000));
  }
  CHECK(c.E("sin(0)").is_zero());
  CHECK(c.E("exp(0)") == Expression(1));
}

TEST_CASE("canonical form is independent of construction order") {
  testing::Random rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto sig = rng.signature();
    std::vector<Expression> parts;
    for (int i = rng.uniform(1, 5); i > 0; --i) parts.push_back(rng.polynomial(sig, 2, 3, 3));
    Expression fwd, bwd, prod_fwd(1), prod_bwd(1);
    for (const auto& p : parts) fwd += p, prod_fwd *= p;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) bwd += *it, prod_bwd *= *it;
    CHECK(fwd == bwd);
    CHECK(prod_fwd == prod_bwd);
    // Normalising again changes nothing.
    Expression again;
    for (const auto& [m, q] : fwd.terms()) again += Expression::term(m, q);
    CHECK(again == fwd);
  }
}

TEST_CASE("partial derivatives commute") {
  testing::Random rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    auto sig = rng.signature();
    Expression f = rng.polynomial(sig, 2, 3, 4);
    auto a = Atom::jet(rng.jet(sig, 2));
    auto b = rng.coin() ? Atom::jet(rng.jet(sig, 2)) : Atom::base(rng.uniform(0, static_cast<int>(sig.base_dim()) - 1));
    CHECK(f.partial(a).partial(b) == f.partial(b).partial(a));
  }
}

TEST_CASE("partial_jet matches central finite differences in floating shadow mode") {
  testing::Random rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    auto sig = rng.signature();
    Expression f = rng.polynomial(sig, 2, 3, 4);
    JetVariable v = rng.jet(sig, 2);
    Expression df = f.partial_jet(v);
    for (int p = 0; p < 10; ++p) {
      std::map<Atom, double> pt;
      for (const auto& j : enumerate_jets(sig, 2))
        pt[Atom::jet(j)] = rng.uniform(-20, 20) / 7.0;
      for (std::size_t l = 0; l < sig.base_dim(); ++l)
        pt[Atom::base(static_cast<int>(l))] = rng.uniform(-20, 20) / 7.0;
      const double h = 1e-4;
      auto plus = pt, minus = pt;
      plus[Atom::jet(v)] += h;
      minus[Atom::jet(v)] -= h;
      double fd = (f.eval_double(plus) - f.eval_double(minus)) / (2 * h);
      double exact = df.eval_double(pt);
      CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
  }
}

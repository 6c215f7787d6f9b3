#pragma once

// Seeded generators for property tests. Every draw goes through one
// std::mt19937_64 so a corpus is reproducible from its seed.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "jetvar/calculus.hpp"

namespace jetvar::testing {

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Rational rational() {
    int p = 0;
    while (p == 0) p = uniform(-5, 5);
    Rational q(p, uniform(1, 3));
    q.canonicalize();
    return q;
  }

  BundleSignature signature(int max_n = 2, int max_m = 2) {
    static const std::vector<std::string> base = {"x", "t"};
    static const std::vector<std::string> fields = {"u", "v"};
    int n = uniform(1, max_n), m = uniform(1, max_m);
    return BundleSignature({base.begin(), base.begin() + n}, {fields.begin(), fields.begin() + m});
  }

  JetVariable jet(const BundleSignature& sig, int max_order) {
    auto jets = enumerate_jets(sig, max_order);
    return jets[static_cast<std::size_t>(uniform(0, static_cast<int>(jets.size()) - 1))];
  }

  /// Product of up to `degree` base or jet factors.
  Expression monomial(const BundleSignature& sig, int max_order, int degree) {
    Expression m(1);
    for (int d = 0; d < degree; ++d) {
      if (coin(0.25)) m = m * Expression::base(uniform(0, static_cast<int>(sig.base_dim()) - 1));
      else m = m * Expression::jet(jet(sig, max_order));
    }
    return m;
  }

  Expression polynomial(const BundleSignature& sig, int max_order, int max_degree, int max_terms) {
    Expression e;
    int terms = uniform(1, max_terms);
    for (int t = 0; t < terms; ++t)
      e += rational() * monomial(sig, max_order, uniform(0, max_degree));
    return e;
  }

  /// Random form of one bidegree (k, s); s <= n.
  Form form(const BundleSignature& sig, int k, int s, int max_order, int max_degree, int max_terms) {
    const std::size_t n = sig.base_dim();
    Form f(n);
    int terms = uniform(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      std::vector<Generator> gens;
      std::vector<int> dirs(n);
      for (std::size_t l = 0; l < n; ++l) dirs[l] = static_cast<int>(l);
      std::shuffle(dirs.begin(), dirs.end(), rng_);
      for (int j = 0; j < s; ++j) gens.push_back(Generator::d(dirs[static_cast<std::size_t>(j)]));
      for (int j = 0; j < k; ++j) gens.push_back(Generator::g(jet(sig, max_order)));
      f += Form::product(n, polynomial(sig, max_order, max_degree, 2), gens);
    }
    return f;
  }

  /// Random mixture of bidegrees with k <= 2.
  Form any_form(const BundleSignature& sig, int max_order, int max_degree, int max_terms) {
    Form f(sig.base_dim());
    int parts = uniform(1, 2);
    for (int p = 0; p < parts; ++p)
      f += form(sig, uniform(0, 2), uniform(0, static_cast<int>(sig.base_dim())), max_order,
                max_degree, max_terms);
    return f;
  }

  /// Components may vanish identically when allow_zero is set.
  VerticalField field(const BundleSignature& sig, int max_order, int max_degree, bool allow_zero = true) {
    std::map<int, Expression> c;
    for (std::size_t i = 0; i < sig.fiber_dim(); ++i) {
      if (allow_zero && coin(0.3)) continue;
      c[static_cast<int>(i)] = polynomial(sig, max_order, max_degree, 2);
    }
    return VerticalField(std::move(c));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace jetvar::testing

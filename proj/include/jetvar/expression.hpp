#pragma once

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "jetvar/jet.hpp"

namespace jetvar {

using Rational = mpq_class;

/// Elementary functions that may wrap an expression as an opaque atom.
/// Derivatives are table driven; nothing else is known about them.
enum class Fn { Sin, Cos, Exp };

const char* fn_name(Fn f);

class Expression;

/// An indeterminate of the polynomial ring: a base coordinate x^l, a jet
/// coordinate y^i_Lambda, or an opaque atom f(expr).
class Atom {
 public:
  enum class Kind { Base = 0, Jet = 1, Func = 2 };

  static Atom base(int l);
  static Atom jet(JetVariable v);
  static Atom func(Fn f, const Expression& arg);

  Kind kind() const { return kind_; }
  int base_index() const { return base_; }
  const JetVariable& jet() const { return jet_; }
  Fn fn() const { return fn_; }
  const Expression& arg() const { return *arg_; }

  bool operator==(const Atom& o) const { return (*this <=> o) == 0; }
  std::strong_ordering operator<=>(const Atom& o) const;

 private:
  Atom() = default;

  Kind kind_ = Kind::Base;
  int base_ = 0;
  JetVariable jet_;
  Fn fn_ = Fn::Sin;
  std::shared_ptr<const Expression> arg_;
};

/// Power product of atoms; factors are kept sorted by atom with positive
/// exponents, so structurally equal monomials compare equal.
class Monomial {
 public:
  using Factor = std::pair<Atom, int>;

  Monomial() = default;
  explicit Monomial(const Atom& a, int exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  int degree() const;
  int exponent_of(const Atom& a) const;

  Monomial operator*(const Monomial& o) const;
  /// Divides out one power of a; requires exponent_of(a) > 0.
  Monomial without_one(const Atom& a) const;

  bool operator==(const Monomial& o) const { return (*this <=> o) == 0; }
  /// Higher total degree first, then lexicographic on the factors.
  std::strong_ordering operator<=>(const Monomial& o) const;

 private:
  std::vector<Factor> factors_;
};

struct MissingBinding : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact scalar function of finitely many jet coordinates: a polynomial with
/// rational coefficients over atoms. Canonical by construction, so equality
/// of values is equality of representations. This decides semantic equality
/// on the polynomial core; with opaque atoms present it is sound but
/// incomplete (see has_opaque()).
class Expression {
 public:
  using Terms = std::map<Monomial, Rational>;

  Expression() = default;
  Expression(const Rational& c);  // NOLINT(implicit)
  Expression(long c) : Expression(Rational(c)) {}  // NOLINT(implicit)
  Expression(int c) : Expression(Rational(c)) {}  // NOLINT(implicit)

  static Expression atom(const Atom& a);
  static Expression base(int l) { return atom(Atom::base(l)); }
  static Expression jet(const JetVariable& v) { return atom(Atom::jet(v)); }
  static Expression jet(int field, const MultiIndex& idx) { return jet(JetVariable{field, idx}); }
  static Expression func(Fn f, const Expression& arg);
  static Expression term(const Monomial& m, const Rational& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant expression; throws std::logic_error otherwise.
  Rational constant() const;

  /// Largest |Lambda| among jet variables present (including inside
  /// opaque atoms); 0 if there are none.
  int jet_order() const;
  /// Highest monomial degree; opaque atoms count as degree one.
  int degree() const;
  bool has_opaque() const;

  std::set<JetVariable> jet_variables() const;
  std::set<int> base_variables() const;

  Expression& operator+=(const Expression& o);
  Expression& operator-=(const Expression& o);
  Expression& operator*=(const Expression& o);
  Expression& operator*=(const Rational& q);

  friend Expression operator+(Expression a, const Expression& b) { return a += b; }
  friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator*(Expression a, const Rational& q) { return a *= q; }
  friend Expression operator*(const Rational& q, Expression a) { return a *= q; }
  Expression operator-() const;

  /// Formal partial derivative; every atom is an independent symbol except
  /// that opaque atoms are differentiated by the chain rule.
  Expression partial(const Atom& a) const;
  /// Explicit x^l dependence only.
  Expression partial_base(int l) const { return partial(Atom::base(l)); }
  Expression partial_jet(int field, const MultiIndex& idx) const {
    return partial(Atom::jet({field, idx}));
  }
  Expression partial_jet(const JetVariable& v) const { return partial(Atom::jet(v)); }

  /// Simultaneous substitution of base or jet atoms, then canonicalisation.
  Expression substitute(const std::map<Atom, Expression>& bindings) const;

  /// Exact on the polynomial core. Opaque atoms are evaluated to an
  /// absolute accuracy better than 1e-40 for arguments of modulus <= 50.
  /// Throws MissingBinding when a symbol has no value.
  Rational eval(const std::map<Atom, Rational>& point) const;
  double eval_double(const std::map<Atom, double>& point) const;

  bool operator==(const Expression& o) const;
  std::strong_ordering operator<=>(const Expression& o) const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  Terms terms_;
};

Expression int_pow(const Expression& e, int k);

/// Value of an opaque function at a rational point, see Expression::eval.
Rational eval_fn(Fn f, const Rational& x);

}  // namespace jetvar

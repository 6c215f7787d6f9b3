#include "jetvar/expression.hpp"

#include <algorithm>
#include <cmath>

namespace jetvar {

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Exp: return "exp";
  }
  return "?";
}

namespace {

std::strong_ordering cmp_rational(const Rational& a, const Rational& b) {
  int c = cmp(a, b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace

// ---------------------------------------------------------------- Atom

Atom Atom::base(int l) {
  Atom a;
  a.kind_ = Kind::Base;
  a.base_ = l;
  return a;
}

Atom Atom::jet(JetVariable v) {
  Atom a;
  a.kind_ = Kind::Jet;
  a.jet_ = std::move(v);
  return a;
}

Atom Atom::func(Fn f, const Expression& arg) {
  Atom a;
  a.kind_ = Kind::Func;
  a.fn_ = f;
  a.arg_ = std::make_shared<const Expression>(arg);
  return a;
}

std::strong_ordering Atom::operator<=>(const Atom& o) const {
  if (kind_ != o.kind_) return static_cast<int>(kind_) <=> static_cast<int>(o.kind_);
  switch (kind_) {
    case Kind::Base: return base_ <=> o.base_;
    case Kind::Jet: return jet_ <=> o.jet_;
    case Kind::Func:
      if (fn_ != o.fn_) return static_cast<int>(fn_) <=> static_cast<int>(o.fn_);
      if (arg_ == o.arg_) return std::strong_ordering::equal;
      return *arg_ <=> *o.arg_;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(const Atom& a, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  if (exponent > 0) factors_.emplace_back(a, exponent);
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

int Monomial::exponent_of(const Atom& a) const {
  for (const auto& f : factors_)
    if (f.first == a) return f.second;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + o.factors_.size());
  auto i = factors_.begin();
  auto j = o.factors_.begin();
  while (i != factors_.end() && j != o.factors_.end()) {
    auto c = i->first <=> j->first;
    if (c < 0) {
      r.factors_.push_back(*i++);
    } else if (c > 0) {
      r.factors_.push_back(*j++);
    } else {
      r.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  r.factors_.insert(r.factors_.end(), i, factors_.end());
  r.factors_.insert(r.factors_.end(), j, o.factors_.end());
  return r;
}

Monomial Monomial::without_one(const Atom& a) const {
  Monomial r = *this;
  for (auto it = r.factors_.begin(); it != r.factors_.end(); ++it) {
    if (it->first == a) {
      if (--it->second == 0) r.factors_.erase(it);
      return r;
    }
  }
  throw std::logic_error("atom not present in monomial");
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
  if (auto c = o.degree() <=> degree(); c != 0) return c;
  const std::size_t n = std::min(factors_.size(), o.factors_.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (auto c = factors_[k].first <=> o.factors_[k].first; c != 0) return c;
    if (auto c = o.factors_[k].second <=> factors_[k].second; c != 0) return c;
  }
  return factors_.size() <=> o.factors_.size();
}

// ---------------------------------------------------------------- Expression

Expression::Expression(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Expression Expression::atom(const Atom& a) {
  if (a.kind() == Atom::Kind::Func) return func(a.fn(), a.arg());
  return term(Monomial(a), 1);
}

Expression Expression::func(Fn f, const Expression& arg) {
  if (arg.is_zero()) {
    switch (f) {
      case Fn::Sin: return Expression();
      case Fn::Cos:
      case Fn::Exp: return Expression(1);
    }
  }
  Expression e;
  e.terms_.emplace(Monomial(Atom::func(f, arg)), Rational(1));
  return e;
}

Expression Expression::term(const Monomial& m, const Rational& c) {
  Expression e;
  e.add_term(m, c);
  return e;
}

void Expression::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Expression::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Expression::constant() const {
  if (!is_constant()) throw std::logic_error("expression is not constant");
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int Expression::jet_order() const {
  int r = 0;
  for (const auto& v : jet_variables()) r = std::max(r, v.order());
  return r;
}

int Expression::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

bool Expression::has_opaque() const {
  for (const auto& [m, c] : terms_)
    for (const auto& [a, e] : m.factors())
      if (a.kind() == Atom::Kind::Func) return true;
  return false;
}

std::set<JetVariable> Expression::jet_variables() const {
  std::set<JetVariable> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [a, e] : m.factors()) {
      if (a.kind() == Atom::Kind::Jet) {
        out.insert(a.jet());
      } else if (a.kind() == Atom::Kind::Func) {
        auto inner = a.arg().jet_variables();
        out.insert(inner.begin(), inner.end());
      }
    }
  }
  return out;
}

std::set<int> Expression::base_variables() const {
  std::set<int> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [a, e] : m.factors()) {
      if (a.kind() == Atom::Kind::Base) {
        out.insert(a.base_index());
      } else if (a.kind() == Atom::Kind::Func) {
        auto inner = a.arg().base_variables();
        out.insert(inner.begin(), inner.end());
      }
    }
  }
  return out;
}

Expression& Expression::operator+=(const Expression& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Expression& Expression::operator-=(const Expression& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Expression operator*(const Expression& a, const Expression& b) {
  Expression r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Expression& Expression::operator*=(const Expression& o) { return *this = *this * o; }

Expression& Expression::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
  } else {
    for (auto& [m, c] : terms_) c *= q;
  }
  return *this;
}

Expression Expression::operator-() const {
  Expression r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

namespace {

Expression fn_derivative(Fn f, const Expression& arg) {
  switch (f) {
    case Fn::Sin: return Expression::func(Fn::Cos, arg);
    case Fn::Cos: return -Expression::func(Fn::Sin, arg);
    case Fn::Exp: return Expression::func(Fn::Exp, arg);
  }
  return {};
}

}  // namespace

Expression Expression::partial(const Atom& a) const {
  Expression r;
  for (const auto& [m, c] : terms_) {
    for (const auto& [b, e] : m.factors()) {
      if (b == a) {
        r.add_term(m.without_one(b), c * e);
      } else if (b.kind() == Atom::Kind::Func) {
        Expression inner = b.arg().partial(a);
        if (inner.is_zero()) continue;
        r += term(m.without_one(b), c * e) * fn_derivative(b.fn(), b.arg()) * inner;
      }
    }
  }
  return r;
}

Expression Expression::substitute(const std::map<Atom, Expression>& bindings) const {
  Expression r;
  for (const auto& [m, c] : terms_) {
    Expression prod(c);
    for (const auto& [a, e] : m.factors()) {
      Expression base;
      if (auto it = bindings.find(a); it != bindings.end()) {
        base = it->second;
      } else if (a.kind() == Atom::Kind::Func) {
        base = func(a.fn(), a.arg().substitute(bindings));
      } else {
        base = atom(a);
      }
      prod *= int_pow(base, e);
    }
    r += prod;
  }
  return r;
}

Rational Expression::eval(const std::map<Atom, Rational>& point) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational prod = c;
    for (const auto& [a, e] : m.factors()) {
      Rational v;
      if (a.kind() == Atom::Kind::Func) {
        v = eval_fn(a.fn(), a.arg().eval(point));
      } else {
        auto it = point.find(a);
        if (it == point.end()) throw MissingBinding("no value bound for a symbol");
        v = it->second;
      }
      for (int k = 0; k < e; ++k) prod *= v;
    }
    total += prod;
  }
  return total;
}

double Expression::eval_double(const std::map<Atom, double>& point) const {
  double total = 0;
  for (const auto& [m, c] : terms_) {
    double prod = c.get_d();
    for (const auto& [a, e] : m.factors()) {
      double v = 0;
      if (a.kind() == Atom::Kind::Func) {
        double x = a.arg().eval_double(point);
        switch (a.fn()) {
          case Fn::Sin: v = std::sin(x); break;
          case Fn::Cos: v = std::cos(x); break;
          case Fn::Exp: v = std::exp(x); break;
        }
      } else {
        auto it = point.find(a);
        if (it == point.end()) throw MissingBinding("no value bound for a symbol");
        v = it->second;
      }
      prod *= std::pow(v, e);
    }
    total += prod;
  }
  return total;
}

bool Expression::operator==(const Expression& o) const {
  return (*this <=> o) == 0;
}

std::strong_ordering Expression::operator<=>(const Expression& o) const {
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  for (; i != terms_.end() && j != o.terms_.end(); ++i, ++j) {
    if (auto c = i->first <=> j->first; c != 0) return c;
    if (auto c = cmp_rational(i->second, j->second); c != 0) return c;
  }
  return terms_.size() <=> o.terms_.size();
}

Expression int_pow(const Expression& e, int k) {
  if (k < 0) throw std::invalid_argument("negative exponent");
  Expression r(1);
  Expression b = e;
  while (k > 0) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b *= b;
  }
  return r;
}

namespace {

constexpr mp_bitcnt_t kFnPrecisionBits = 448;
constexpr long kFnResultBits = 160;

Rational round_binary(const mpf_class& v) {
  mpf_class scaled = v;
  mpf_mul_2exp(scaled.get_mpf_t(), scaled.get_mpf_t(), kFnResultBits);
  mpf_class fl(0, kFnPrecisionBits);
  mpf_floor(fl.get_mpf_t(), scaled.get_mpf_t());
  mpz_class num;
  mpz_set_f(num.get_mpz_t(), fl.get_mpf_t());
  mpz_class den = 1;
  den <<= kFnResultBits;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Alternating or positive Taylor series of sin/cos/exp in extended precision.
mpf_class taylor(Fn f, const mpf_class& x) {
  mpf_class eps(1, kFnPrecisionBits);
  mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), kFnPrecisionBits - 32);
  mpf_class sum(0, kFnPrecisionBits), term(0, kFnPrecisionBits);
  mpf_class x2 = x * x;
  switch (f) {
    case Fn::Sin: {
      term = x;
      sum = term;
      for (long k = 1; abs(term) > eps || k < 4; ++k) {
        term = -term * x2 / ((2 * k) * (2 * k + 1));
        sum += term;
      }
      break;
    }
    case Fn::Cos: {
      term = 1;
      sum = term;
      for (long k = 1; abs(term) > eps || k < 4; ++k) {
        term = -term * x2 / ((2 * k - 1) * (2 * k));
        sum += term;
      }
      break;
    }
    case Fn::Exp: {
      term = 1;
      sum = term;
      for (long k = 1; abs(term) > eps || k < 4; ++k) {
        term = term * x / k;
        sum += term;
      }
      break;
    }
  }
  return sum;
}

}  // namespace

Rational eval_fn(Fn f, const Rational& x) {
  mpf_class xf(x, kFnPrecisionBits);
  if (f == Fn::Exp && x < 0) {
    mpf_class one(1, kFnPrecisionBits);
    return round_binary(one / taylor(Fn::Exp, -xf));
  }
  return round_binary(taylor(f, xf));
}

}  // namespace jetvar

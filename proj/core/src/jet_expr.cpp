#include "jetlie/jet_expr.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "jetlie/errors.hpp"

namespace jetlie {

namespace {

/// Scale n/d so that d is a primitive integer polynomial with positive leading coefficient.
void normalize_denominator(Polynomial& n, Polynomial& d) {
  Rational c = d.rational_content();
  if (c != 1) {
    Rational inv = 1 / c;
    n = n * inv;
    d = d * inv;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Canonical construction and arithmetic

JetExpr JetExpr::fraction(Polynomial n, Polynomial d) {
  if (d.is_zero()) throw DivisionByZero("division by an identically zero expression");
  if (n.is_zero()) return JetExpr();
  if (d.is_constant()) return JetExpr(n * (1 / d.constant_value()));
  Polynomial g = gcd(n, d);
  if (!g.is_constant()) {
    n = *Polynomial::divide_exact(n, g);
    d = *Polynomial::divide_exact(d, g);
  }
  normalize_denominator(n, d);
  if (d.is_one()) return JetExpr(std::move(n));
  return JetExpr(std::move(n), std::move(d), true);
}

JetExpr JetExpr::operator-() const { return JetExpr(-num_, den_, true); }

JetExpr operator+(const JetExpr& a, const JetExpr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_polynomial() && b.is_polynomial()) return JetExpr(a.num_ + b.num_);
  if (a.den_ == b.den_) return JetExpr::fraction(a.num_ + b.num_, a.den_);
  if (a.is_polynomial()) return JetExpr(a.num_ * b.den_ + b.num_, b.den_, true);
  if (b.is_polynomial()) return JetExpr(b.num_ * a.den_ + a.num_, a.den_, true);
  // Henrici: only the common part g of the denominators can cancel.
  Polynomial g = gcd(a.den_, b.den_);
  if (g.is_constant()) {
    Polynomial n = a.num_ * b.den_ + b.num_ * a.den_;
    if (n.is_zero()) return JetExpr();
    Polynomial d = a.den_ * b.den_;
    normalize_denominator(n, d);
    return JetExpr(std::move(n), std::move(d), true);
  }
  Polynomial ad = *Polynomial::divide_exact(a.den_, g);
  Polynomial bd = *Polynomial::divide_exact(b.den_, g);
  Polynomial n = a.num_ * bd + b.num_ * ad;
  if (n.is_zero()) return JetExpr();
  Polynomial d = ad * b.den_;
  Polynomial h = gcd(n, g);
  if (!h.is_constant()) {
    n = *Polynomial::divide_exact(n, h);
    d = *Polynomial::divide_exact(d, h);
  }
  normalize_denominator(n, d);
  if (d.is_one()) return JetExpr(std::move(n));
  return JetExpr(std::move(n), std::move(d), true);
}

JetExpr operator-(const JetExpr& a, const JetExpr& b) { return a + (-b); }

JetExpr operator*(const JetExpr& a, const JetExpr& b) {
  if (a.is_zero() || b.is_zero()) return JetExpr();
  if (a.is_polynomial() && b.is_polynomial()) return JetExpr(a.num_ * b.num_);
  Polynomial an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (!bd.is_one()) {
    Polynomial g = gcd(an, bd);
    if (!g.is_constant()) {
      an = *Polynomial::divide_exact(an, g);
      bd = *Polynomial::divide_exact(bd, g);
    }
  }
  if (!ad.is_one()) {
    Polynomial g = gcd(bn, ad);
    if (!g.is_constant()) {
      bn = *Polynomial::divide_exact(bn, g);
      ad = *Polynomial::divide_exact(ad, g);
    }
  }
  Polynomial n = an * bn;
  Polynomial d = ad * bd;
  normalize_denominator(n, d);
  if (d.is_one()) return JetExpr(std::move(n));
  return JetExpr(std::move(n), std::move(d), true);
}

JetExpr operator/(const JetExpr& a, const JetExpr& b) {
  if (b.is_zero()) throw DivisionByZero("division by an identically zero expression");
  Polynomial n = b.den_, d = b.num_;
  normalize_denominator(n, d);
  JetExpr inv = d.is_one() ? JetExpr(std::move(n)) : JetExpr(std::move(n), std::move(d), true);
  return a * inv;
}

JetExpr JetExpr::pow(int n) const {
  if (n < 0) return JetExpr(1) / pow(-n);
  if (n == 0) return JetExpr(1);
  if (is_polynomial()) return JetExpr(num_.pow(n));
  return JetExpr(num_.pow(n), den_.pow(n), true);
}

// ---------------------------------------------------------------------------
// Applications

const Application* intern_application(std::string_view name, std::vector<JetExpr> args) {
  if (args.empty()) throw PreconditionError("function symbol " + std::string(name) + " needs arguments");
  if (args.size() > static_cast<std::size_t>(kMaxArity)) {
    throw PreconditionError("function symbol " + std::string(name) + " exceeds maximal arity");
  }
  std::string key(name);
  key += '(';
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (k) key += ", ";
    key += args[k].str();
  }
  key += ')';
  static std::mutex mutex;
  static std::unordered_map<std::string, std::unique_ptr<Application>> table;
  std::lock_guard lock(mutex);
  auto it = table.find(key);
  if (it != table.end()) return it->second.get();
  auto rec = std::make_unique<Application>(Application{std::string(name), std::move(args), key});
  const Application* ptr = rec.get();
  table.emplace(std::move(key), std::move(rec));
  return ptr;
}

Variable apply_function(std::string_view name, std::vector<JetExpr> args) {
  return Variable::func_deriv(intern_application(name, std::move(args)), DerivIndex{});
}

Variable apply_function_deriv(std::string_view name, std::vector<JetExpr> args, std::initializer_list<int> slots) {
  Variable v = apply_function(name, std::move(args));
  for (int s : slots) v = v.with_extra_deriv(s);
  return v;
}

// ---------------------------------------------------------------------------
// Structural queries

namespace {

void gather_variables(const Polynomial& p, bool through_args, std::vector<Variable>& out) {
  for (const auto& v : p.variables()) {
    out.push_back(v);
    if (through_args && v.is_func_deriv()) {
      for (const auto& arg : v.application()->args) {
        gather_variables(arg.numerator(), true, out);
        gather_variables(arg.denominator(), true, out);
      }
    }
  }
}

}  // namespace

std::vector<Variable> variables(const JetExpr& e, bool through_args) {
  std::vector<Variable> out;
  gather_variables(e.numerator(), through_args, out);
  gather_variables(e.denominator(), through_args, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int jet_order(const JetExpr& e) {
  int order = -1;
  for (const auto& v : variables(e, true)) {
    if (v.is_jet()) order = std::max(order, v.order());
  }
  return order;
}

bool depends_on(const JetExpr& e, const Variable& v) {
  const auto vs = variables(e, true);
  return std::binary_search(vs.begin(), vs.end(), v);
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

JetExpr variable_derivative(const Variable& w, const Variable& v) {
  if (w == v) return JetExpr(1);
  if (!w.is_func_deriv()) return JetExpr();
  const Application* app = w.application();
  JetExpr total;
  for (std::size_t k = 0; k < app->args.size(); ++k) {
    JetExpr da = differentiate(app->args[k], v);
    if (!da.is_zero()) total += da * JetExpr(w.with_extra_deriv(static_cast<int>(k)));
  }
  return total;
}

/// dp/dw treating w as a plain indeterminate.
Polynomial formal_partial(const Polynomial& p, const Variable& w) {
  std::vector<Polynomial::Term> ts;
  for (const auto& t : p.terms()) {
    int e = t.monomial.exponent(w);
    if (e == 0) continue;
    ts.push_back({t.monomial / Monomial(w), t.coeff * e});
  }
  return Polynomial::from_terms(std::move(ts));
}

JetExpr differentiate_polynomial(const Polynomial& p, const Variable& v) {
  JetExpr result;
  for (const auto& w : p.variables()) {
    JetExpr dw = variable_derivative(w, v);
    if (dw.is_zero()) continue;
    result += JetExpr(formal_partial(p, w)) * dw;
  }
  return result;
}

}  // namespace

JetExpr differentiate(const JetExpr& e, const Variable& v) {
  JetExpr dn = differentiate_polynomial(e.numerator(), v);
  if (e.is_polynomial()) return dn;
  JetExpr dd = differentiate_polynomial(e.denominator(), v);
  if (dd.is_zero()) return dn / JetExpr(e.denominator());
  JetExpr den(e.denominator());
  return (dn * den - JetExpr(e.numerator()) * dd) / (den * den);
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

JetExpr substitute_polynomial(const Polynomial& p, const std::unordered_map<Variable, JetExpr, VariableHash>& images) {
  // Common denominator: product of image denominators at their maximal exponent.
  std::unordered_map<Variable, int, VariableHash> max_exp;
  bool rational = false;
  for (const auto& t : p.terms()) {
    for (const auto& [w, e] : t.monomial.factors()) {
      auto it = images.find(w);
      if (it != images.end() && !it->second.is_polynomial()) {
        rational = true;
        int& m = max_exp[w];
        m = std::max(m, e);
      }
    }
  }
  std::unordered_map<Variable, std::vector<Polynomial>, VariableHash> num_pows, den_pows;
  auto power = [](std::vector<Polynomial>& cache, const Polynomial& base, int e) -> const Polynomial& {
    if (cache.empty()) cache.emplace_back(1);
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * base);
    return cache[static_cast<std::size_t>(e)];
  };
  Polynomial total;
  std::vector<Polynomial::Term> plain_terms;
  for (const auto& t : p.terms()) {
    Polynomial term(t.coeff);
    std::vector<Monomial::Factor> untouched;
    for (const auto& [w, e] : t.monomial.factors()) {
      auto it = images.find(w);
      if (it == images.end()) {
        untouched.emplace_back(w, e);
        continue;
      }
      term = term * power(num_pows[w], it->second.numerator(), e);
    }
    // Bring the term onto the common denominator, including images absent from it.
    for (const auto& [w, m] : max_exp) {
      const int e = t.monomial.exponent(w);
      if (m > e) term = term * power(den_pows[w], images.at(w).denominator(), m - e);
    }
    if (!untouched.empty()) term = term * Monomial::from_factors(std::move(untouched));
    total += term;
  }
  if (!rational) return JetExpr(std::move(total));
  Polynomial den(1);
  for (const auto& [w, m] : max_exp) den = den * power(den_pows[w], images.at(w).denominator(), m);
  return JetExpr::fraction(std::move(total), std::move(den));
}

JetExpr function_image(const Variable& w, const Substitution& s) {
  const Application* app = w.application();
  std::vector<JetExpr> new_args;
  new_args.reserve(app->args.size());
  bool changed = false;
  for (const auto& a : app->args) {
    new_args.push_back(substitute(a, s));
    changed = changed || !(new_args.back() == a);
  }
  auto fit = s.functions.find(app->name);
  if (fit != s.functions.end()) {
    const FunctionBinding& b = fit->second;
    if (b.formals.size() != app->args.size()) {
      throw PreconditionError("binding for " + app->name + " has wrong number of formal arguments");
    }
    JetExpr body = b.body;
    for (std::size_t k = 0; k < b.formals.size(); ++k) {
      for (int c = 0; c < w.deriv()[k]; ++c) body = differentiate(body, b.formals[k]);
    }
    Substitution formals;
    for (std::size_t k = 0; k < b.formals.size(); ++k) formals.bind(b.formals[k], new_args[k]);
    return substitute(body, formals);
  }
  if (!changed) return JetExpr(w);
  return JetExpr(Variable::func_deriv(intern_application(app->name, std::move(new_args)), w.deriv()));
}

}  // namespace

JetExpr substitute(const JetExpr& e, const Substitution& s) {
  if (s.empty()) return e;
  std::unordered_map<Variable, JetExpr, VariableHash> images;
  for (const auto& w : variables(e, false)) {
    auto it = s.variables.find(w);
    if (it != s.variables.end()) {
      images.emplace(w, it->second);
    } else if (w.is_func_deriv()) {
      JetExpr img = function_image(w, s);
      if (!(img == JetExpr(w))) images.emplace(w, std::move(img));
    }
  }
  if (images.empty()) return e;
  JetExpr n = substitute_polynomial(e.numerator(), images);
  if (e.is_polynomial()) return n;
  return n / substitute_polynomial(e.denominator(), images);
}

// ---------------------------------------------------------------------------
// Coefficient collection

std::map<Monomial, JetExpr> collect(const JetExpr& e, std::span<const Variable> vars) {
  auto in_vars = [&](const Variable& v) { return std::find(vars.begin(), vars.end(), v) != vars.end(); };
  for (const auto& v : e.denominator().variables()) {
    if (in_vars(v)) throw PreconditionError("denominator depends on collected variable " + v.str());
  }
  for (const auto& v : variables(e, false)) {
    if (!v.is_func_deriv()) continue;
    for (const auto& arg : v.application()->args) {
      for (const auto& w : variables(arg, true)) {
        if (in_vars(w)) throw PreconditionError("function argument of " + v.str() + " depends on collected variable");
      }
    }
  }
  std::map<Monomial, std::vector<Polynomial::Term>> groups;
  for (const auto& t : e.numerator().terms()) {
    std::vector<Monomial::Factor> in, out;
    for (const auto& f : t.monomial.factors()) (in_vars(f.first) ? in : out).push_back(f);
    groups[Monomial::from_factors(std::move(in))].push_back({Monomial::from_factors(std::move(out)), t.coeff});
  }
  std::map<Monomial, JetExpr> result;
  for (auto& [key, ts] : groups) {
    result.emplace(key, JetExpr::fraction(Polynomial::from_terms(std::move(ts)), e.denominator()));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Numerics

const FunctionTable& standard_functions() {
  static const FunctionTable table = [] {
    FunctionTable t;
    t.emplace("sqrt", [](std::span<const double> args, std::span<const int> deriv) {
      const double z = args[0];
      if (!(z > 0.0)) throw EvaluationError("sqrt of non-positive argument");
      const int n = deriv.empty() ? 0 : deriv[0];
      double c = 1.0;
      for (int k = 0; k < n; ++k) c *= 0.5 - k;
      return c * std::pow(z, 0.5 - n);
    });
    t.emplace("exp", [](std::span<const double> args, std::span<const int>) { return std::exp(args[0]); });
    return t;
  }();
  return table;
}

namespace {

class Evaluator {
 public:
  Evaluator(const NumericAssignment& a, const FunctionTable& f) : assignment_(a), funcs_(f) {}

  double value(const JetExpr& e) {
    const double n = value(e.numerator());
    if (e.is_polynomial()) return n;
    const double d = value(e.denominator());
    if (!(std::fabs(d) >= DBL_MIN)) throw EvaluationError("denominator underflow");
    return n / d;
  }

 private:
  double value(const Polynomial& p) {
    double sum = 0.0;
    for (const auto& t : p.terms()) {
      double term = t.coeff.get_d();
      for (const auto& [w, e] : t.monomial.factors()) {
        const double base = variable(w);
        term *= e == 1 ? base : std::pow(base, e);
      }
      sum += term;
    }
    return sum;
  }

  double variable(const Variable& w) {
    if (auto it = assignment_.find(w); it != assignment_.end()) return it->second;
    if (auto it = cache_.find(w); it != cache_.end()) return it->second;
    if (!w.is_func_deriv()) throw EvaluationError("missing numeric binding for " + w.str());
    const Application* app = w.application();
    auto fit = funcs_.find(app->name);
    if (fit == funcs_.end()) throw EvaluationError("no numeric model for function " + app->name);
    std::vector<double> args;
    std::vector<int> deriv;
    for (std::size_t k = 0; k < app->args.size(); ++k) {
      args.push_back(value(app->args[k]));
      deriv.push_back(w.deriv()[k]);
    }
    double v = fit->second(args, deriv);
    cache_.emplace(w, v);
    return v;
  }

  const NumericAssignment& assignment_;
  const FunctionTable& funcs_;
  std::unordered_map<Variable, double, VariableHash> cache_;
};

}  // namespace

double eval_numeric(const JetExpr& e, const NumericAssignment& assignment, const FunctionTable& funcs) {
  Evaluator ev(assignment, funcs);
  return ev.value(e);
}

}  // namespace jetlie

#include "jetlie/polynomial.hpp"

#include <algorithm>
#include <unordered_map>

#include "jetlie/errors.hpp"

namespace jetlie {

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(const Variable& v, int exponent) {
  if (exponent < 0) throw PreconditionError("negative monomial exponent");
  if (exponent > 0) f_.emplace_back(v, exponent);
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
  Monomial m;
  for (auto& [v, e] : factors) {
    if (e < 0) throw PreconditionError("negative monomial exponent");
    if (e == 0) continue;
    if (!m.f_.empty() && m.f_.back().first == v) {
      m.f_.back().second += e;
    } else {
      m.f_.emplace_back(v, e);
    }
  }
  return m;
}

int Monomial::degree() const noexcept {
  int d = 0;
  for (const auto& f : f_) d += f.second;
  return d;
}

int Monomial::exponent(const Variable& v) const noexcept {
  for (const auto& f : f_) {
    if (f.first == v) return f.second;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.f_.reserve(f_.size() + o.f_.size());
  auto a = f_.begin(), b = o.f_.begin();
  while (a != f_.end() && b != o.f_.end()) {
    auto c = a->first <=> b->first;
    if (c < 0) {
      r.f_.push_back(*a++);
    } else if (c > 0) {
      r.f_.push_back(*b++);
    } else {
      r.f_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  r.f_.insert(r.f_.end(), a, f_.end());
  r.f_.insert(r.f_.end(), b, o.f_.end());
  return r;
}

bool Monomial::divides(const Monomial& o) const noexcept {
  auto b = o.f_.begin();
  for (const auto& f : f_) {
    while (b != o.f_.end() && b->first < f.first) ++b;
    if (b == o.f_.end() || !(b->first == f.first) || b->second < f.second) return false;
  }
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  auto b = o.f_.begin();
  for (const auto& f : f_) {
    if (b != o.f_.end() && b->first == f.first) {
      int e = f.second - b->second;
      if (e < 0) throw PreconditionError("monomial division is not exact");
      if (e > 0) r.f_.emplace_back(f.first, e);
      ++b;
    } else {
      r.f_.push_back(f);
    }
  }
  if (b != o.f_.end()) throw PreconditionError("monomial division is not exact");
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto p = a.f_.begin(), q = b.f_.begin();
  while (p != a.f_.end() && q != b.f_.end()) {
    auto c = p->first <=> q->first;
    if (c < 0) {
      ++p;
    } else if (c > 0) {
      ++q;
    } else {
      r.f_.emplace_back(p->first, std::min(p->second, q->second));
      ++p;
      ++q;
    }
  }
  return r;
}

std::pair<Monomial, int> Monomial::split(const Variable& v) const {
  Monomial r;
  int e = 0;
  r.f_.reserve(f_.size());
  for (const auto& f : f_) {
    if (f.first == v) {
      e = f.second;
    } else {
      r.f_.push_back(f);
    }
  }
  return {std::move(r), e};
}

std::size_t Monomial::hash() const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const auto& [v, e] : f_) {
    h ^= v.hash() + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h = h * 1099511628211ull + static_cast<std::size_t>(e);
  }
  return h;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da <=> db;
  auto p = a.f_.begin(), q = b.f_.begin();
  while (p != a.f_.end() && q != b.f_.end()) {
    auto c = p->first <=> q->first;
    if (c < 0) return std::strong_ordering::greater;  // a has an earlier variable
    if (c > 0) return std::strong_ordering::less;
    if (p->second != q->second) return p->second <=> q->second;
    ++p;
    ++q;
  }
  if (p != a.f_.end()) return std::strong_ordering::greater;
  if (q != b.f_.end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial(), c});
}

Polynomial::Polynomial(const Variable& v, int exponent) { terms_.push_back({Monomial(v, exponent), Rational(1)}); }

Polynomial::Polynomial(const Monomial& m, const Rational& c) {
  if (c != 0) terms_.push_back({m, c});
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.monomial > b.monomial; });
  Polynomial p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

bool Polynomial::is_one() const noexcept {
  return terms_.size() == 1 && terms_[0].monomial.is_one() && terms_[0].coeff == 1;
}

Rational Polynomial::constant_value() const {
  if (!is_constant()) throw PreconditionError("polynomial is not constant");
  return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

int Polynomial::total_degree() const noexcept {
  // Terms are sorted by graded order, so the first one has maximal degree.
  return terms_.empty() ? -1 : terms_.front().monomial.degree();
}

int Polynomial::degree_in(const Variable& v) const noexcept {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.exponent(v));
  return d;
}

std::vector<Variable> Polynomial::variables() const {
  std::vector<Variable> vs;
  for (const auto& t : terms_) {
    for (const auto& f : t.monomial.factors()) vs.push_back(f.first);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  Polynomial r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    auto c = a->monomial <=> b->monomial;
    if (c > 0) {
      r.terms_.push_back(*a++);
    } else if (c < 0) {
      r.terms_.push_back(*b++);
    } else {
      Rational s = a->coeff + b->coeff;
      if (s != 0) r.terms_.push_back({a->monomial, std::move(s)});
      ++a;
      ++b;
    }
  }
  r.terms_.insert(r.terms_.end(), a, terms_.end());
  r.terms_.insert(r.terms_.end(), b, o.terms_.end());
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Rational& c) const {
  if (c == 0) return {};
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::operator*(const Monomial& m) const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.monomial = t.monomial * m;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (o.terms_.size() == 1) return (*this * o.terms_[0].monomial) * o.terms_[0].coeff;
  if (terms_.size() == 1) return (o * terms_[0].monomial) * terms_[0].coeff;
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      auto [it, inserted] = acc.try_emplace(a.monomial * b.monomial, a.coeff * b.coeff);
      if (!inserted) it->second += a.coeff * b.coeff;
    }
  }
  std::vector<Term> ts;
  ts.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) ts.push_back({m, std::move(c)});
  }
  return from_terms(std::move(ts));
}

Polynomial Polynomial::pow(int n) const {
  if (n < 0) throw PreconditionError("negative polynomial power");
  Polynomial result(1);
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.is_zero()) return Polynomial();
  if (b.is_constant()) return a * (1 / b.constant_value());
  const Term& lb = b.terms_.front();
  const Term& tb = b.terms_.back();
  if (!lb.monomial.divides(a.terms_.front().monomial) || !tb.monomial.divides(a.terms_.back().monomial)) {
    return std::nullopt;
  }
  if (b.terms_.size() == 1) {
    Polynomial q;
    q.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_) {
      if (!lb.monomial.divides(t.monomial)) return std::nullopt;
      q.terms_.push_back({t.monomial / lb.monomial, t.coeff / lb.coeff});
    }
    return q;
  }
  for (const auto& [v, e] : lb.monomial.factors()) {
    (void)e;
    if (b.degree_in(v) > a.degree_in(v)) return std::nullopt;
  }
  std::vector<Term> q;
  Polynomial r = a;
  while (!r.is_zero()) {
    const Term& lr = r.terms_.front();
    if (!lb.monomial.divides(lr.monomial)) return std::nullopt;
    Term t{lr.monomial / lb.monomial, lr.coeff / lb.coeff};
    r = r - (b * t.monomial) * t.coeff;
    q.push_back(std::move(t));
  }
  // Quotient terms are produced in decreasing order.
  Polynomial quotient;
  quotient.terms_ = std::move(q);
  return quotient;
}

std::vector<Polynomial> Polynomial::coefficients_in(const Variable& v) const {
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(degree_in(v)) + 1);
  for (const auto& t : terms_) {
    auto [rest, e] = t.monomial.split(v);
    buckets[static_cast<std::size_t>(e)].push_back({std::move(rest), t.coeff});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) {
    // Dividing by a common power of v preserves the graded order.
    Polynomial p;
    p.terms_ = std::move(b);
    out.push_back(std::move(p));
  }
  return out;
}

Polynomial Polynomial::from_coefficients(const std::vector<Polynomial>& coeffs, const Variable& v) {
  std::vector<Term> ts;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Monomial vk(v, static_cast<int>(k));
    for (const auto& t : coeffs[k].terms_) ts.push_back({t.monomial * vk, t.coeff});
  }
  return from_terms(std::move(ts));
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_.front().monomial;
  for (const auto& t : terms_) {
    if (g.is_one()) break;
    g = Monomial::gcd(g, t.monomial);
  }
  return g;
}

Rational Polynomial::rational_content() const {
  if (terms_.empty()) return Rational(1);
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational c(num_gcd, den_lcm);
  c.canonicalize();
  if (terms_.front().coeff < 0) c = -c;
  return c;
}

Polynomial Polynomial::primitive() const {
  if (terms_.empty()) return {};
  return *this * (1 / rational_content());
}

std::size_t Polynomial::hash() const noexcept {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) {
    h ^= t.monomial.hash() + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h ^= std::hash<double>{}(t.coeff.get_d()) + (h << 3);
  }
  return h;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (a.terms_[k].coeff != b.terms_[k].coeff || !(a.terms_[k].monomial == b.terms_[k].monomial)) return false;
  }
  return true;
}

}  // namespace jetlie

// Multivariate polynomial gcd over Q.
//
// Strategy: strip monomial content, eliminate variables that occur in only
// one operand (the gcd cannot contain them), use modular univariate images to
// prove that the gcd is free of a variable, and fall back to a primitive
// pseudo-remainder sequence in the cheapest shared variable.

#include <algorithm>
#include <cstdint>
#include <random>
#include <unordered_map>

#include "jetlie/errors.hpp"
#include "jetlie/polynomial.hpp"

namespace jetlie {
namespace {

// Arithmetic modulo the Mersenne prime 2^61 - 1.
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t s = lo + hi;
  while (s >= kPrime) s -= kPrime;
  return s;
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, a);
    a = mul_mod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kPrime - 2); }

bool rational_mod(const Rational& q, std::uint64_t& out) {
  std::uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), kPrime);
  if (d == 0) return false;
  std::uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), kPrime);
  out = mul_mod(n, inv_mod(d));
  return true;
}

using UniPoly = std::vector<std::uint64_t>;

void trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int uni_gcd_degree(UniPoly a, UniPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a <- a mod b
    std::uint64_t inv_lc = inv_mod(b.back());
    while (a.size() >= b.size() && !a.empty()) {
      std::uint64_t f = mul_mod(a.back(), inv_lc);
      std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] = sub_mod(a[k + shift], mul_mod(f, b[k]));
      trim(a);
    }
    std::swap(a, b);
  }
  return a.empty() ? -1 : static_cast<int>(a.size()) - 1;
}

class ModularImage {
 public:
  explicit ModularImage(std::uint64_t seed) : rng_(seed) {}

  /// Image of p in Z_p[v] with every other variable at a random point.
  bool image(const Polynomial& p, const Variable& v, UniPoly& out) {
    out.assign(static_cast<std::size_t>(p.degree_in(v)) + 1, 0);
    for (const auto& t : p.terms()) {
      std::uint64_t c;
      if (!rational_mod(t.coeff, c)) return false;
      int e = 0;
      for (const auto& [w, k] : t.monomial.factors()) {
        if (w == v) {
          e = k;
        } else {
          c = mul_mod(c, pow_mod(value(w), static_cast<std::uint64_t>(k)));
        }
      }
      out[static_cast<std::size_t>(e)] = add_mod(out[static_cast<std::size_t>(e)], c);
    }
    return true;
  }

 private:
  std::uint64_t value(const Variable& w) {
    auto it = values_.find(w);
    if (it != values_.end()) return it->second;
    std::uint64_t r = 2 + rng_() % (kPrime - 3);
    values_.emplace(w, r);
    return r;
  }

  std::mt19937_64 rng_;
  std::unordered_map<Variable, std::uint64_t, VariableHash> values_;
};

/// Upper bound on deg_v gcd(a, b), or -1 when the image is inconclusive.
int gcd_degree_bound(const Polynomial& a, const Polynomial& b, const Variable& v) {
  const int da = a.degree_in(v), db = b.degree_in(v);
  for (std::uint64_t attempt = 0; attempt < 3; ++attempt) {
    ModularImage img(0x5eed0000u + attempt * 7919u + static_cast<std::uint64_t>(da * 131 + db));
    UniPoly ia, ib;
    if (!img.image(a, v, ia) || !img.image(b, v, ib)) continue;
    // A vanishing leading coefficient would make the bound unsound.
    if (ia.back() == 0 || ib.back() == 0) continue;
    return uni_gcd_degree(std::move(ia), std::move(ib));
  }
  return -1;
}

Polynomial divide_by_monomial(const Polynomial& p, const Monomial& m) {
  if (m.is_one()) return p;
  std::vector<Polynomial::Term> ts;
  ts.reserve(p.size());
  for (const auto& t : p.terms()) ts.push_back({t.monomial / m, t.coeff});
  return Polynomial::from_terms(std::move(ts));
}

Polynomial exact(const Polynomial& a, const Polynomial& b) {
  auto q = Polynomial::divide_exact(a, b);
  if (!q) throw PreconditionError("internal: expected exact polynomial division");
  return std::move(*q);
}

Polynomial gcd_core(Polynomial a, Polynomial b);

/// gcd(seed, c_0, c_1, ...) folding from the smallest polynomial.
Polynomial fold_gcd(std::vector<Polynomial> polys) {
  polys.erase(std::remove_if(polys.begin(), polys.end(), [](const Polynomial& p) { return p.is_zero(); }),
              polys.end());
  if (polys.empty()) return {};
  std::sort(polys.begin(), polys.end(), [](const Polynomial& x, const Polynomial& y) { return x.size() < y.size(); });
  Polynomial g = polys.front().primitive();
  for (std::size_t k = 1; k < polys.size(); ++k) {
    if (g.is_constant()) return Polynomial(1);
    g = gcd_core(std::move(g), polys[k]);
  }
  return g.is_constant() ? Polynomial(1) : g;
}

Polynomial content_in(const Polynomial& p, const Variable& v) { return fold_gcd(p.coefficients_in(v)); }

Polynomial lead_coeff_in(const Polynomial& p, const Variable& v, int& degree) {
  degree = p.degree_in(v);
  std::vector<Polynomial::Term> ts;
  for (const auto& t : p.terms()) {
    auto [rest, e] = t.monomial.split(v);
    if (e == degree) ts.push_back({std::move(rest), t.coeff});
  }
  return Polynomial::from_terms(std::move(ts));
}

/// Sparse pseudo-remainder of a by b in v, up to a factor lc(b)^k.
Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, const Variable& v) {
  int db = 0;
  const Polynomial lcb = lead_coeff_in(b, v, db);
  const bool monic = lcb.is_constant();
  while (!a.is_zero()) {
    int da = 0;
    Polynomial lca = lead_coeff_in(a, v, da);
    if (da < db) break;
    Polynomial shifted = b * Monomial(v, da - db);
    if (monic) {
      a = a - shifted * lca * (1 / lcb.constant_value());
    } else {
      a = a * lcb - shifted * lca;
    }
    if (!a.is_zero()) a = a.primitive();
  }
  return a;
}

Polynomial prs_gcd(Polynomial a, Polynomial b, const Variable& v) {
  Polynomial ca = content_in(a, v);
  Polynomial cb = content_in(b, v);
  Polynomial c = gcd_core(ca, cb);
  a = exact(a, ca);
  b = exact(b, cb);
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  while (true) {
    Polynomial r = pseudo_remainder(a, b, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) return c;
    a = std::move(b);
    b = exact(r, content_in(r, v));
  }
  return (b * c).primitive();
}

std::vector<Variable> set_difference(const std::vector<Variable>& a, const std::vector<Variable>& b) {
  std::vector<Variable> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Polynomial gcd_core(Polynomial a, Polynomial b) {
  {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    if (a.is_constant() || b.is_constant()) return Polynomial(1);

    const Monomial ma = a.monomial_content();
    const Monomial mb = b.monomial_content();
    const Monomial mg = Monomial::gcd(ma, mb);
    if (!ma.is_one() || !mb.is_one()) {
      return (gcd_core(divide_by_monomial(a, ma), divide_by_monomial(b, mb)) * mg).primitive();
    }

    a = a.primitive();
    b = b.primitive();
    if (a == b) return a;

    const auto va = a.variables();
    const auto vb = b.variables();
    if (auto only_a = set_difference(va, vb); !only_a.empty()) {
      auto coeffs = a.coefficients_in(only_a.front());
      coeffs.push_back(b);
      return fold_gcd(std::move(coeffs));
    }
    if (auto only_b = set_difference(vb, va); !only_b.empty()) {
      auto coeffs = b.coefficients_in(only_b.front());
      coeffs.push_back(a);
      return fold_gcd(std::move(coeffs));
    }

    if (b.size() <= a.size()) {
      if (Polynomial::divide_exact(a, b)) return b;
    } else if (Polynomial::divide_exact(b, a)) {
      return a;
    }

    const Variable* best = nullptr;
    int best_cost = 0;
    for (const auto& v : va) {
      if (gcd_degree_bound(a, b, v) == 0) {
        auto coeffs = a.coefficients_in(v);
        auto cb = b.coefficients_in(v);
        coeffs.insert(coeffs.end(), cb.begin(), cb.end());
        return fold_gcd(std::move(coeffs));
      }
      int cost = std::min(a.degree_in(v), b.degree_in(v)) * 4 + std::max(a.degree_in(v), b.degree_in(v));
      int dummy = 0;
      if (lead_coeff_in(a, v, dummy).is_constant() || lead_coeff_in(b, v, dummy).is_constant()) cost -= 2;
      if (best == nullptr || cost < best_cost) {
        best = &v;
        best_cost = cost;
      }
    }
    return prs_gcd(std::move(a), std::move(b), *best);
  }
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) return {};
  return gcd_core(a, b).primitive();
}

}  // namespace jetlie

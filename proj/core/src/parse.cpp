#include "jetlie/parse.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "jetlie/errors.hpp"

namespace jetlie {

const ParseContext& ParseContext::standard() {
  static const ParseContext ctx = [] {
    ParseContext c;
    for (const char* p : {"alpha", "a", "C", "eps", "t"}) c.add_parameter(p);
    for (int k = 1; k <= 8; ++k) c.add_parameter("C" + std::to_string(k));
    for (const char* f : {"zeta", "eta", "phi"}) c.add_function(f, 3);
    c.add_function("H1", 4).add_function("H2", 4).add_function("H3", 2).add_function("H4", 1);
    c.add_function("f", 5);
    for (const char* f : {"F1", "psi", "h", "sqrt", "exp"}) c.add_function(f, 1);
    return c;
  }();
  return ctx;
}

ParseContext& ParseContext::add_parameter(std::string name) {
  parameters.insert(std::move(name));
  return *this;
}

ParseContext& ParseContext::add_function(std::string name, int arity) {
  functions.insert_or_assign(std::move(name), arity);
  return *this;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseContext& ctx) : s_(text), ctx_(ctx) {}

  JetExpr run() {
    JetExpr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  JetExpr expr() {
    JetExpr e = accept('-') ? -term() : term();
    while (true) {
      if (accept('+')) {
        e += term();
      } else if (accept('-')) {
        e -= term();
      } else {
        return e;
      }
    }
  }

  JetExpr term() {
    JetExpr e = factor();
    while (true) {
      if (accept('*')) {
        e *= factor();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        JetExpr d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        e /= d;
      } else {
        return e;
      }
    }
  }

  JetExpr factor() {
    JetExpr b = base();
    if (!accept('^')) return b;
    bool paren = accept('(');
    bool neg = accept('-');
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    if (pos_ - start > 6) fail("exponent too large");
    int n = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (paren) expect(')');
    if (neg && b.is_zero()) fail("zero raised to a negative power");
    return b.pow(neg ? -n : n);
  }

  JetExpr base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      JetExpr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  JetExpr number() {
    const std::size_t start = pos_;
    std::string digits;
    std::size_t frac = 0;
    bool dot = false;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        if (dot) ++frac;
      } else if (c == '.' && !dot) {
        dot = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) throw ParseError("malformed number", start);
    Rational r(Integer(digits, 10), 1);
    if (frac) r /= Rational(Integer(std::string("1") + std::string(frac, '0'), 10), 1);
    r.canonicalize();
    return JetExpr(r);
  }

  JetExpr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string name(s_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '(') return application(name, start);
    if (name == "x") return JetExpr(Variable::x());
    if (name == "y") return JetExpr(Variable::y());
    if (name == "u") return JetExpr(Variable::u());
    if (name.size() > 2 && name.compare(0, 2, "u_") == 0 &&
        name.find_first_not_of("xy", 2) == std::string::npos) {
      int i = 0, j = 0;
      for (std::size_t k = 2; k < name.size(); ++k) (name[k] == 'x' ? i : j) += 1;
      if (i + j > kMaxJetOrder) {
        throw OrderOverflow("jet order " + std::to_string(i + j) + " exceeds " + std::to_string(kMaxJetOrder) +
                            " at position " + std::to_string(start));
      }
      return JetExpr(Variable::jet(i, j));
    }
    if (ctx_.parameters.contains(name)) return JetExpr(Variable::parameter(name));
    throw ParseError("unknown identifier '" + name + "'", start);
  }

  JetExpr application(const std::string& name, std::size_t start) {
    std::string fname = name;
    std::string slots;
    auto it = ctx_.functions.find(fname);
    if (it == ctx_.functions.end()) {
      const auto us = name.rfind('_');
      if (us != std::string::npos && us + 1 < name.size() &&
          name.find_first_not_of("123456789", us + 1) == std::string::npos) {
        fname = name.substr(0, us);
        slots = name.substr(us + 1);
        it = ctx_.functions.find(fname);
      }
    }
    if (it == ctx_.functions.end()) throw ParseError("unknown function '" + name + "'", start);
    expect('(');
    std::vector<JetExpr> args;
    args.push_back(expr());
    while (accept(',')) args.push_back(expr());
    expect(')');
    if (static_cast<int>(args.size()) != it->second) {
      throw ParseError(fname + " expects " + std::to_string(it->second) + " arguments", start);
    }
    Variable v = apply_function(fname, std::move(args));
    for (char d : slots) {
      const int slot = d - '1';
      if (slot >= it->second) throw ParseError("derivative slot out of range in '" + name + "'", start);
      v = v.with_extra_deriv(slot);
    }
    return JetExpr(v);
  }

  std::string_view s_;
  const ParseContext& ctx_;
  std::size_t pos_ = 0;
};

std::string coefficient_text(const Rational& c) { return c.get_str(); }

std::string polynomial_text(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool neg = sgn(t.coeff) < 0;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    const Rational mag = abs(t.coeff);
    bool need_star = false;
    if (mag != 1 || t.monomial.is_one()) {
      out += coefficient_text(mag);
      need_star = true;
    }
    for (const auto& [v, e] : t.monomial.factors()) {
      if (need_star) out += '*';
      out += v.str();
      if (e != 1) out += "^" + std::to_string(e);
      need_star = true;
    }
  }
  return out;
}

}  // namespace

JetExpr parse(std::string_view text, const ParseContext& ctx) { return Parser(text, ctx).run(); }

std::string JetExpr::str() const {
  if (is_polynomial()) return polynomial_text(num_);
  std::string n = polynomial_text(num_);
  if (num_.size() > 1) n = "(" + n + ")";
  std::string d = polynomial_text(den_);
  const bool bare = den_.is_monomial() && den_.leading_term().coeff == 1 &&
                    den_.leading_term().monomial.factors().size() == 1 &&
                    den_.leading_term().monomial.factors().front().second == 1;
  if (!bare) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace jetlie

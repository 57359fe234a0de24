#pragma once

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pdm/error.hpp"
#include "pdm/params.hpp"

namespace pdm {

// Independent variables an expression may be differentiated against.
enum class Var : unsigned char { x1, x2, x3, t, xi };

// Leaf symbols. r, rt and phi are derived from x1..x3 but kept as leaves so printed forms stay readable.
enum class Sym : unsigned char { x1, x2, x3, t, xi, r, rt, phi };

struct Point {
  double x1 = 0, x2 = 0, x3 = 0, t = 0, xi = 0;
};

class Expr;
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& a, const Expr& b);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr sqrt(const Expr& a);

// Immutable complex-valued expression tree (CoefficientExpr). Cheap to copy; safe to share across threads.
class Expr {
 public:
  enum class Op : unsigned char { constant, symbol, param, neg, add, sub, mul, div, pow, exp, log, sin, cos };

  struct Node {
    Op op;
    cplx value{};
    Sym sym{};
    std::string name;
    std::shared_ptr<const Node> a, b;
  };

  Expr() : Expr(cplx(0.0)) {}
  Expr(double v) : Expr(cplx(v)) {}
  Expr(int v) : Expr(cplx(double(v))) {}
  Expr(cplx v) {
    if (v.real() == 0.0) v.real(0.0);
    if (v.imag() == 0.0) v.imag(0.0);
    n_ = std::make_shared<const Node>(Node{Op::constant, v, {}, {}, nullptr, nullptr});
  }

  static Expr symbol(Sym s) { return Expr(std::make_shared<const Node>(Node{Op::symbol, {}, s, {}, nullptr, nullptr})); }
  static Expr var(Var v) { return symbol(static_cast<Sym>(v)); }
  static Expr param(std::string_view name) {
    if (!ParameterSet::known(name)) throw DomainError("unknown parameter '" + std::string(name) + "'");
    return Expr(std::make_shared<const Node>(Node{Op::param, {}, {}, std::string(name), nullptr, nullptr}));
  }
  static Expr x1() { return symbol(Sym::x1); }
  static Expr x2() { return symbol(Sym::x2); }
  static Expr x3() { return symbol(Sym::x3); }
  static Expr t() { return symbol(Sym::t); }
  static Expr xi() { return symbol(Sym::xi); }
  static Expr r() { return symbol(Sym::r); }
  static Expr rt() { return symbol(Sym::rt); }
  static Expr phi() { return symbol(Sym::phi); }
  static Expr x(int a) { return symbol(static_cast<Sym>(a)); }
  static Expr i() { return Expr(cplx(0.0, 1.0)); }

  Op op() const { return n_->op; }
  const Node& node() const { return *n_; }
  bool is_constant() const { return n_->op == Op::constant; }
  bool is_zero() const { return is_constant() && n_->value == cplx(0.0); }
  bool is_one() const { return is_constant() && n_->value == cplx(1.0); }
  cplx constant_value() const { return n_->value; }

  cplx eval(const Point& p, const ParameterSet* params = nullptr) const { return eval_node(*n_, p, params); }

  double eval_real(const Point& p, const ParameterSet* params = nullptr) const { return eval(p, params).real(); }

  bool depends_on(Var v) const { return depends(*n_, v); }

  bool depends_on_time() const { return depends_on(Var::t); }

  bool has_params() const { return has_param(*n_); }

  std::set<std::string> param_names() const {
    std::set<std::string> out;
    collect_params(*n_, out);
    return out;
  }

  Expr diff(Var v) const { return diff_node(*this, v); }

  // Replaces every occurrence of leaf symbol s. Derived leaves (r, rt, phi) are not expanded.
  Expr substitute(Sym s, const Expr& e) const {
    return rebuild(*this, [&](const Expr& leaf) -> std::optional<Expr> {
      if (leaf.op() == Op::symbol && leaf.node().sym == s) return e;
      return std::nullopt;
    });
  }

  // Replaces set parameters by constants; unset ones stay symbolic.
  Expr bind(const ParameterSet& ps) const {
    return rebuild(*this, [&](const Expr& leaf) -> std::optional<Expr> {
      if (leaf.op() == Op::param) {
        auto v = ps.get(leaf.node().name);
        if (v) return Expr(*v);
      }
      return std::nullopt;
    });
  }

  std::string str() const {
    std::string out;
    print(*this, out, true);
    return out;
  }

  static Expr parse(std::string_view text);

  friend bool operator==(const Expr& x, const Expr& y) { return same(x.n_.get(), y.n_.get()); }

  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static Expr make(Op op, const Expr& a) {
    return Expr(std::make_shared<const Node>(Node{op, {}, {}, {}, a.n_, nullptr}));
  }
  static Expr make(Op op, const Expr& a, const Expr& b) {
    return Expr(std::make_shared<const Node>(Node{op, {}, {}, {}, a.n_, b.n_}));
  }
  Expr child(int k) const { return Expr(k == 0 ? n_->a : n_->b); }

  static cplx cpow(cplx a, cplx b) {
    if (a.imag() == 0.0 && b.imag() == 0.0) {
      double x = a.real(), y = b.real();
      if (x > 0.0 || y == std::floor(y) || x == 0.0) return std::pow(x, y);
    }
    return std::pow(a, b);
  }
  static cplx clog(cplx a) {
    if (a.imag() == 0.0 && a.real() > 0.0) return std::log(a.real());
    return std::log(a);
  }

 private:
  std::shared_ptr<const Node> n_;

  static bool same(const Node* x, const Node* y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->op != y->op) return false;
    switch (x->op) {
      case Op::constant: return x->value == y->value;
      case Op::symbol: return x->sym == y->sym;
      case Op::param: return x->name == y->name;
      default: return same(x->a.get(), y->a.get()) && same(x->b.get(), y->b.get());
    }
  }

  static cplx eval_node(const Node& n, const Point& p, const ParameterSet* ps) {
    switch (n.op) {
      case Op::constant: return n.value;
      case Op::symbol:
        switch (n.sym) {
          case Sym::x1: return p.x1;
          case Sym::x2: return p.x2;
          case Sym::x3: return p.x3;
          case Sym::t: return p.t;
          case Sym::xi: return p.xi;
          case Sym::r: return std::sqrt(p.x1 * p.x1 + p.x2 * p.x2 + p.x3 * p.x3);
          case Sym::rt: return std::hypot(p.x1, p.x2);
          case Sym::phi: return std::atan2(p.x2, p.x1);
        }
        return 0.0;
      case Op::param: {
        if (!ps) throw DomainError("parameter '" + n.name + "' is not bound");
        auto v = ps->get(n.name);
        if (!v) throw DomainError("parameter '" + n.name + "' is not set");
        return *v;
      }
      case Op::neg: return -eval_node(*n.a, p, ps);
      case Op::add: return eval_node(*n.a, p, ps) + eval_node(*n.b, p, ps);
      case Op::sub: return eval_node(*n.a, p, ps) - eval_node(*n.b, p, ps);
      case Op::mul: {
        cplx u = eval_node(*n.a, p, ps), v = eval_node(*n.b, p, ps);
        if (u.imag() == 0.0 && v.imag() == 0.0) return u.real() * v.real();
        return u * v;
      }
      case Op::div: {
        cplx u = eval_node(*n.a, p, ps), v = eval_node(*n.b, p, ps);
        if (u.imag() == 0.0 && v.imag() == 0.0) return u.real() / v.real();
        return u / v;
      }
      case Op::pow: return cpow(eval_node(*n.a, p, ps), eval_node(*n.b, p, ps));
      case Op::exp: {
        cplx u = eval_node(*n.a, p, ps);
        return u.imag() == 0.0 ? cplx(std::exp(u.real())) : std::exp(u);
      }
      case Op::log: return clog(eval_node(*n.a, p, ps));
      case Op::sin: {
        cplx u = eval_node(*n.a, p, ps);
        return u.imag() == 0.0 ? cplx(std::sin(u.real())) : std::sin(u);
      }
      case Op::cos: {
        cplx u = eval_node(*n.a, p, ps);
        return u.imag() == 0.0 ? cplx(std::cos(u.real())) : std::cos(u);
      }
    }
    return 0.0;
  }

  static bool depends(const Node& n, Var v) {
    switch (n.op) {
      case Op::constant:
      case Op::param: return false;
      case Op::symbol:
        switch (n.sym) {
          case Sym::r: return v == Var::x1 || v == Var::x2 || v == Var::x3;
          case Sym::rt:
          case Sym::phi: return v == Var::x1 || v == Var::x2;
          default: return static_cast<int>(n.sym) == static_cast<int>(v);
        }
      default: return depends(*n.a, v) || (n.b && depends(*n.b, v));
    }
  }

  static bool has_param(const Node& n) {
    if (n.op == Op::param) return true;
    if (n.op == Op::constant || n.op == Op::symbol) return false;
    return has_param(*n.a) || (n.b && has_param(*n.b));
  }

  static void collect_params(const Node& n, std::set<std::string>& out) {
    if (n.op == Op::param) out.insert(n.name);
    if (n.a) collect_params(*n.a, out);
    if (n.b) collect_params(*n.b, out);
  }

  template <class F>
  static Expr rebuild(const Expr& e, const F& leaf_map) {
    switch (e.op()) {
      case Op::constant:
      case Op::symbol:
      case Op::param: {
        auto m = leaf_map(e);
        return m ? *m : e;
      }
      case Op::neg: return -rebuild(e.child(0), leaf_map);
      case Op::add: return rebuild(e.child(0), leaf_map) + rebuild(e.child(1), leaf_map);
      case Op::sub: return rebuild(e.child(0), leaf_map) - rebuild(e.child(1), leaf_map);
      case Op::mul: return rebuild(e.child(0), leaf_map) * rebuild(e.child(1), leaf_map);
      case Op::div: return rebuild(e.child(0), leaf_map) / rebuild(e.child(1), leaf_map);
      case Op::pow: return pdm::pow(rebuild(e.child(0), leaf_map), rebuild(e.child(1), leaf_map));
      case Op::exp: return pdm::exp(rebuild(e.child(0), leaf_map));
      case Op::log: return pdm::log(rebuild(e.child(0), leaf_map));
      case Op::sin: return pdm::sin(rebuild(e.child(0), leaf_map));
      case Op::cos: return pdm::cos(rebuild(e.child(0), leaf_map));
    }
    return e;
  }

  static Expr diff_node(const Expr& e, Var v) {
    if (!e.depends_on(v)) return Expr(0.0);
    const Expr a = e.n_->a ? e.child(0) : Expr();
    const Expr b = e.n_->b ? e.child(1) : Expr();
    switch (e.op()) {
      case Op::constant:
      case Op::param: return Expr(0.0);
      case Op::symbol: {
        Sym s = e.node().sym;
        int k = static_cast<int>(v);
        if (s == Sym::r) return x(k) / r();
        if (s == Sym::rt) return x(k) / rt();
        if (s == Sym::phi) return v == Var::x1 ? -x2() / pdm::pow(rt(), 2) : x1() / pdm::pow(rt(), 2);
        return Expr(1.0);
      }
      case Op::neg: return -a.diff(v);
      case Op::add: return a.diff(v) + b.diff(v);
      case Op::sub: return a.diff(v) - b.diff(v);
      case Op::mul: return a.diff(v) * b + a * b.diff(v);
      case Op::div: return a.diff(v) / b - a * b.diff(v) / pdm::pow(b, 2);
      case Op::pow:
        if (!b.depends_on(v)) return b * pdm::pow(a, b - 1.0) * a.diff(v);
        return e * (b.diff(v) * pdm::log(a) + b * a.diff(v) / a);
      case Op::exp: return e * a.diff(v);
      case Op::log: return a.diff(v) / a;
      case Op::sin: return pdm::cos(a) * a.diff(v);
      case Op::cos: return -(pdm::sin(a) * a.diff(v));
    }
    return Expr(0.0);
  }

  static std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

  static int prec(const Expr& e) {
    switch (e.op()) {
      case Op::add:
      case Op::sub: return 1;
      case Op::mul:
      case Op::div: return 2;
      case Op::neg: return 3;
      case Op::pow: return 4;
      case Op::constant: {
        cplx c = e.constant_value();
        return (c.imag() == 0.0 && c.real() >= 0.0) || c == cplx(0.0, 1.0) ? 5 : 0;
      }
      default: return 5;
    }
  }

  static void print_const(cplx c, std::string& out) {
    if (c.imag() == 0.0) {
      out += number(c.real());
      return;
    }
    if (c.real() != 0.0) {
      out += number(c.real());
      out += c.imag() < 0.0 ? "-" : "+";
    } else if (c.imag() < 0.0) {
      out += "-";
    }
    double im = std::abs(c.imag());
    if (im != 1.0) out += number(im) + "*";
    out += "i";
  }

  // Non-atomic constants are always parenthesized when they appear as operands.
  static void print_child(const Expr& c, std::string& out, bool parens) {
    if (c.is_constant() && prec(c) == 0) parens = true;
    if (parens) out += "(";
    print(c, out, parens);
    if (parens) out += ")";
  }

  static void print(const Expr& e, std::string& out, bool top) {
    const Node& n = e.node();
    switch (n.op) {
      case Op::constant: {
        bool wrap = !top && prec(e) == 0;
        if (wrap) out += "(";
        print_const(n.value, out);
        if (wrap) out += ")";
        return;
      }
      case Op::symbol: {
        static const char* names[] = {"x1", "x2", "x3", "t", "xi", "r", "rt", "phi"};
        out += names[static_cast<int>(n.sym)];
        return;
      }
      case Op::param: out += n.name; return;
      case Op::neg:
        out += "-";
        print_child(e.child(0), out, prec(e.child(0)) < 4);
        return;
      case Op::add:
      case Op::sub:
      case Op::mul:
      case Op::div: {
        int p = prec(e);
        const char* sym = n.op == Op::add ? "+" : n.op == Op::sub ? "-" : n.op == Op::mul ? "*" : "/";
        print_child(e.child(0), out, prec(e.child(0)) < p);
        out += sym;
        print_child(e.child(1), out, prec(e.child(1)) <= p);
        return;
      }
      case Op::pow:
        print_child(e.child(0), out, prec(e.child(0)) < 5);
        out += "^";
        print_child(e.child(1), out, prec(e.child(1)) < 5);
        return;
      case Op::exp:
      case Op::log:
      case Op::sin:
      case Op::cos: {
        out += n.op == Op::exp ? "exp(" : n.op == Op::log ? "log(" : n.op == Op::sin ? "sin(" : "cos(";
        print(e.child(0), out, true);
        out += ")";
        return;
      }
    }
  }
};

namespace detail {
inline cplx fold_mul(cplx u, cplx v) {
  if (u.imag() == 0.0 && v.imag() == 0.0) return u.real() * v.real();
  return u * v;
}
}  // namespace detail

inline Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.constant_value() + b.constant_value());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Expr::make(Expr::Op::add, a, b);
}

inline Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.constant_value() - b.constant_value());
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  return Expr::make(Expr::Op::sub, a, b);
}

inline Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr(-a.constant_value());
  if (a.op() == Expr::Op::neg) return a.child(0);
  return Expr::make(Expr::Op::neg, a);
}

inline Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(detail::fold_mul(a.constant_value(), b.constant_value()));
  if (a.is_zero() || b.is_zero()) return Expr(0.0);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return Expr::make(Expr::Op::mul, a, b);
}

inline Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DomainError("division by a zero constant");
  if (a.is_constant() && b.is_constant()) {
    cplx u = a.constant_value(), v = b.constant_value();
    return Expr(u.imag() == 0.0 && v.imag() == 0.0 ? cplx(u.real() / v.real()) : u / v);
  }
  if (a.is_zero()) return Expr(0.0);
  if (b.is_one()) return a;
  return Expr::make(Expr::Op::div, a, b);
}

inline Expr pow(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(Expr::cpow(a.constant_value(), b.constant_value()));
  if (b.is_zero()) return Expr(1.0);
  if (b.is_one()) return a;
  return Expr::make(Expr::Op::pow, a, b);
}

inline Expr exp(const Expr& a) {
  if (a.is_constant()) {
    cplx u = a.constant_value();
    return Expr(u.imag() == 0.0 ? cplx(std::exp(u.real())) : std::exp(u));
  }
  return Expr::make(Expr::Op::exp, a);
}

inline Expr log(const Expr& a) {
  if (a.is_constant()) return Expr(Expr::clog(a.constant_value()));
  return Expr::make(Expr::Op::log, a);
}

inline Expr sin(const Expr& a) {
  if (a.is_constant()) {
    cplx u = a.constant_value();
    return Expr(u.imag() == 0.0 ? cplx(std::sin(u.real())) : std::sin(u));
  }
  return Expr::make(Expr::Op::sin, a);
}

inline Expr cos(const Expr& a) {
  if (a.is_constant()) {
    cplx u = a.constant_value();
    return Expr(u.imag() == 0.0 ? cplx(std::cos(u.real())) : std::cos(u));
  }
  return Expr::make(Expr::Op::cos, a);
}

inline Expr sqrt(const Expr& a) { return pow(a, Expr(0.5)); }

namespace detail {

// Recursive-descent parser for the manifest grammar (see docs/manifest.md).
class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr run() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  std::string_view s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw DomainError("expression parse error at " + std::to_string(pos_) + ": " + msg + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+')) e = e + term();
      else if (accept('-')) e = e - term();
      else return e;
    }
  }
  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) e = e * unary();
      else if (accept('/')) e = e / unary();
      else return e;
    }
  }
  Expr unary() {
    if (accept('-')) return -unary();
    return power();
  }
  Expr power() {
    Expr base = primary();
    if (accept('^')) return pow(base, unary());
    return base;
  }
  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        size_t save = pos_++;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      std::string tok(s_.substr(start, pos_ - start));
      char* end = nullptr;
      double v = std::strtod(tok.c_str(), &end);
      if (end != tok.c_str() + tok.size()) fail("bad number '" + tok + "'");
      return Expr(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id(s_.substr(start, pos_ - start));
      if (id == "exp" || id == "log" || id == "sin" || id == "cos" || id == "sqrt") {
        if (!accept('(')) fail("expected '(' after " + id);
        Expr arg = expr();
        if (!accept(')')) fail("expected ')'");
        if (id == "exp") return pdm::exp(arg);
        if (id == "log") return pdm::log(arg);
        if (id == "sin") return pdm::sin(arg);
        if (id == "cos") return pdm::cos(arg);
        return pdm::sqrt(arg);
      }
      if (id == "i") return Expr::i();
      if (id == "pi") return Expr(std::numbers::pi);
      if (id == "x1") return Expr::x1();
      if (id == "x2") return Expr::x2();
      if (id == "x3") return Expr::x3();
      if (id == "t") return Expr::t();
      if (id == "xi") return Expr::xi();
      if (id == "r") return Expr::r();
      if (id == "rt") return Expr::rt();
      if (id == "phi") return Expr::phi();
      if (ParameterSet::known(id)) return Expr::param(id);
      fail("unknown identifier '" + id + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace detail

inline Expr Expr::parse(std::string_view text) { return detail::Parser(text).run(); }

}  // namespace pdm

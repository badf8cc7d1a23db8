#include "tsconv/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "tsconv/numeric.hpp"

namespace tsconv {

using Op = ExprNode::Op;

namespace ex {

namespace {

Expr make(Op op, std::vector<Expr> args) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->args = std::move(args);
  return n;
}

bool is_value(const Expr& e, double v) { return e->op == Op::Const && e->value == v; }

const char* func_name(Op op) {
  switch (op) {
    case Op::Sin:
      return "sin";
    case Op::Cos:
      return "cos";
    case Op::Exp:
      return "exp";
    case Op::Log:
      return "log";
    case Op::Abs:
      return "abs";
    default:
      return nullptr;
  }
}

char op_symbol(Op op) {
  switch (op) {
    case Op::Add:
      return '+';
    case Op::Sub:
      return '-';
    case Op::Mul:
      return '*';
    case Op::Div:
      return '/';
    case Op::Pow:
      return '^';
    default:
      return '?';
  }
}

std::string render(const Expr& e, bool keys) {
  auto set_name = [&](std::size_t i) {
    if (!keys && i < e->labels.size() && !e->labels[i].empty()) return e->labels[i];
    return e->sets[i].key();
  };
  switch (e->op) {
    case Op::Const:
      return format_number(e->value);
    case Op::Var:
      return "t";
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
    case Op::Pow:
      return "(" + render(e->args[0], keys) + op_symbol(e->op) + render(e->args[1], keys) + ")";
    case Op::Neg:
      return "(-" + render(e->args[0], keys) + ")";
    case Op::Ind:
      return "ind(" + set_name(0) + ")";
    case Op::Piecewise: {
      std::string s = "piecewise(";
      for (std::size_t i = 0; i < e->sets.size(); ++i) s += set_name(i) + ": " + render(e->args[i], keys) + ", ";
      return s + "else: " + render(e->args.back(), keys) + ")";
    }
    default:
      return std::string(func_name(e->op)) + "(" + render(e->args[0], keys) + ")";
  }
}

void collect_guards(const Expr& e, std::vector<TsSet>& out, std::vector<std::string>& seen) {
  for (const auto& s : e->sets) {
    const std::string k = s.key();
    if (std::find(seen.begin(), seen.end(), k) == seen.end()) {
      seen.push_back(k);
      out.push_back(s);
    }
  }
  for (const auto& a : e->args) collect_guards(a, out, seen);
}

}  // namespace

Expr constant(double c) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Const;
  n->value = c;
  return n;
}

Expr var() { return make(Op::Var, {}); }

Expr unary(Op op, Expr a) {
  if (op == Op::Neg && a->op == Op::Neg) return a->args[0];
  Expr e = make(op, {std::move(a)});
  if (e->args[0]->op == Op::Const) return constant(eval(e, 0.0));
  return e;
}

Expr binary(Op op, Expr a, Expr b) {
  switch (op) {
    case Op::Add:
      if (is_value(a, 0.0)) return b;
      if (is_value(b, 0.0)) return a;
      break;
    case Op::Sub:
      if (is_value(b, 0.0)) return a;
      if (!uses_sets(a) && key(a) == key(b)) return constant(0.0);
      break;
    case Op::Mul:
      if (is_value(a, 1.0)) return b;
      if (is_value(b, 1.0)) return a;
      if (is_value(a, 0.0) || is_value(b, 0.0)) return constant(0.0);
      break;
    case Op::Div:
      if (is_value(b, 1.0)) return a;
      break;
    case Op::Pow:
      if (is_value(b, 1.0)) return a;
      if (is_value(b, 0.0)) return constant(1.0);
      break;
    default:
      break;
  }
  Expr e = make(op, {std::move(a), std::move(b)});
  if (e->args[0]->op == Op::Const && e->args[1]->op == Op::Const) return constant(eval(e, 0.0));
  return e;
}

Expr indicator(const TsSet& S, std::string label) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Ind;
  n->sets.push_back(S);
  n->labels.push_back(std::move(label));
  return n;
}

Expr piecewise(std::vector<TsSet> guards, std::vector<Expr> pieces, Expr fallback, std::vector<std::string> labels) {
  if (guards.size() != pieces.size()) throw DomainError("piecewise needs one expression per guard");
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Piecewise;
  n->sets = std::move(guards);
  n->args = std::move(pieces);
  n->args.push_back(std::move(fallback));
  n->labels = std::move(labels);
  return n;
}

bool is_constant(const Expr& e) { return e->op == Op::Const; }

double eval(const Expr& e, double t) {
  switch (e->op) {
    case Op::Const:
      return e->value;
    case Op::Var:
      return t;
    case Op::Add:
      return eval(e->args[0], t) + eval(e->args[1], t);
    case Op::Sub:
      return eval(e->args[0], t) - eval(e->args[1], t);
    case Op::Mul:
      return eval(e->args[0], t) * eval(e->args[1], t);
    case Op::Div: {
      const double d = eval(e->args[1], t);
      if (d == 0.0) throw DomainError("division by zero at t = " + format_number(t));
      return eval(e->args[0], t) / d;
    }
    case Op::Pow: {
      const double b = eval(e->args[0], t);
      const double x = eval(e->args[1], t);
      if (b < 0.0 && x != std::round(x)) throw DomainError("negative base to a fractional power");
      if (b == 0.0 && x < 0.0) throw DomainError("zero to a negative power");
      return std::pow(b, x);
    }
    case Op::Neg:
      return -eval(e->args[0], t);
    case Op::Sin:
      return std::sin(eval(e->args[0], t));
    case Op::Cos:
      return std::cos(eval(e->args[0], t));
    case Op::Exp:
      return std::exp(eval(e->args[0], t));
    case Op::Log: {
      const double x = eval(e->args[0], t);
      if (!(x > 0.0)) throw DomainError("log of nonpositive value at t = " + format_number(t));
      return std::log(x);
    }
    case Op::Abs:
      return std::abs(eval(e->args[0], t));
    case Op::Ind:
      return e->sets[0].contains(t) ? 1.0 : 0.0;
    case Op::Piecewise:
      for (std::size_t i = 0; i < e->sets.size(); ++i) {
        if (e->sets[i].contains(t)) return eval(e->args[i], t);
      }
      return eval(e->args.back(), t);
  }
  return 0.0;
}

Interval enclose(const Expr& e, Interval x) {
  switch (e->op) {
    case Op::Const:
      return Interval::point(e->value);
    case Op::Var:
      return x;
    case Op::Add:
      return ia::add(enclose(e->args[0], x), enclose(e->args[1], x));
    case Op::Sub:
      return ia::sub(enclose(e->args[0], x), enclose(e->args[1], x));
    case Op::Mul:
      return ia::mul(enclose(e->args[0], x), enclose(e->args[1], x));
    case Op::Div:
      return ia::div(enclose(e->args[0], x), enclose(e->args[1], x));
    case Op::Pow:
      return ia::pow(enclose(e->args[0], x), enclose(e->args[1], x));
    case Op::Neg:
      return ia::neg(enclose(e->args[0], x));
    case Op::Sin:
      return ia::sin(enclose(e->args[0], x));
    case Op::Cos:
      return ia::cos(enclose(e->args[0], x));
    case Op::Exp:
      return ia::exp(enclose(e->args[0], x));
    case Op::Log:
      return ia::log(enclose(e->args[0], x));
    case Op::Abs:
      return ia::abs(enclose(e->args[0], x));
    case Op::Ind:
      return {0.0, 1.0};
    case Op::Piecewise: {
      Interval r = enclose(e->args[0], x);
      for (std::size_t i = 1; i < e->args.size(); ++i) {
        const Interval p = enclose(e->args[i], x);
        r = {std::min(r.lo, p.lo), std::max(r.hi, p.hi)};
      }
      return r;
    }
  }
  return Interval::entire();
}

Expr substitute(const Expr& outer, const Expr& inner) {
  switch (outer->op) {
    case Op::Const:
      return outer;
    case Op::Var:
      return inner;
    case Op::Ind:
    case Op::Piecewise:
      throw DomainError("outer functions of a composition cannot reference sets");
    default:
      break;
  }
  if (outer->args.size() == 1) return unary(outer->op, substitute(outer->args[0], inner));
  return binary(outer->op, substitute(outer->args[0], inner), substitute(outer->args[1], inner));
}

std::vector<TsSet> guards(const Expr& e) {
  std::vector<TsSet> out;
  std::vector<std::string> seen;
  collect_guards(e, out, seen);
  return out;
}

Expr specialize(const Expr& e, const std::map<std::string, bool>& in_guard) {
  switch (e->op) {
    case Op::Const:
    case Op::Var:
      return e;
    case Op::Ind:
      return constant(in_guard.at(e->sets[0].key()) ? 1.0 : 0.0);
    case Op::Piecewise:
      for (std::size_t i = 0; i < e->sets.size(); ++i) {
        if (in_guard.at(e->sets[i].key())) return specialize(e->args[i], in_guard);
      }
      return specialize(e->args.back(), in_guard);
    default:
      break;
  }
  if (e->args.size() == 1) return unary(e->op, specialize(e->args[0], in_guard));
  return binary(e->op, specialize(e->args[0], in_guard), specialize(e->args[1], in_guard));
}

bool uses_sets(const Expr& e) {
  if (!e->sets.empty()) return true;
  for (const auto& a : e->args) {
    if (uses_sets(a)) return true;
  }
  return false;
}

std::string to_string(const Expr& e) { return render(e, false); }
std::string key(const Expr& e) { return render(e, true); }

}  // namespace ex

// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(const std::string& text, const SetEnv& env) : s_(text), env_(env) {}

  Expr parse() {
    Expr e = expression();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at column " + std::to_string(pos_ + 1) + " in '" + s_ + "'");
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

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  TsSet lookup(const std::string& name) {
    auto it = env_.find(name);
    if (it == env_.end()) fail("unknown set '" + name + "'");
    return it->second;
  }

  Expr expression() {
    Expr e = term();
    for (;;) {
      if (accept('+')) {
        e = ex::binary(Op::Add, e, term());
      } else if (accept('-')) {
        e = ex::binary(Op::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) {
        e = ex::binary(Op::Mul, e, unary());
      } else if (accept('/')) {
        e = ex::binary(Op::Div, e, unary());
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return ex::unary(Op::Neg, unary());
    if (accept('+')) return unary();
    Expr base = primary();
    if (accept('^')) return ex::binary(Op::Pow, base, unary());
    return base;
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return ex::constant(v);
    }
    if (accept('(')) {
      Expr e = expression();
      expect(')');
      return e;
    }
    const std::string name = identifier();
    if (name.empty()) fail("unexpected '" + std::string(1, c) + "'");
    if (name == "t") return ex::var();
    if (name == "pi") return ex::constant(std::numbers::pi);
    if (name == "ind") {
      expect('(');
      const std::string set = identifier();
      TsSet S = lookup(set);
      expect(')');
      return ex::indicator(S, set);
    }
    if (name == "piecewise") return piecewise();
    expect('(');
    Expr a = expression();
    if (name == "pow") {
      expect(',');
      Expr b = expression();
      expect(')');
      return ex::binary(Op::Pow, a, b);
    }
    expect(')');
    if (name == "sin") return ex::unary(Op::Sin, a);
    if (name == "cos") return ex::unary(Op::Cos, a);
    if (name == "exp") return ex::unary(Op::Exp, a);
    if (name == "log") return ex::unary(Op::Log, a);
    if (name == "abs") return ex::unary(Op::Abs, a);
    if (name == "sqrt") return ex::binary(Op::Pow, a, ex::constant(0.5));
    fail("unknown function '" + name + "'");
  }

  Expr piecewise() {
    expect('(');
    std::vector<TsSet> guards;
    std::vector<Expr> pieces;
    std::vector<std::string> labels;
    for (;;) {
      const std::string name = identifier();
      if (name.empty()) fail("expected a set name or 'else'");
      expect(':');
      Expr e = expression();
      if (name == "else") {
        expect(')');
        return ex::piecewise(std::move(guards), std::move(pieces), e, std::move(labels));
      }
      guards.push_back(lookup(name));
      labels.push_back(name);
      pieces.push_back(e);
      expect(',');
    }
  }

  const std::string& s_;
  const SetEnv& env_;
  std::size_t pos_ = 0;
};

void check_domain(const Expr& e, Interval range_t) {
  for (const auto& a : e->args) check_domain(a, range_t);
  if (e->op == Op::Div) {
    const Interval d = ex::enclose(e->args[1], range_t);
    if (d.lo == 0.0 && d.hi == 0.0) throw DomainError("division by an identically zero term");
  }
  if (e->op == Op::Log) {
    const Interval a = ex::enclose(e->args[0], range_t);
    if (a.hi <= 0.0) throw DomainError("log of a term that is never positive on T");
  }
}

}  // namespace

Expr parse_expr(const std::string& text, const SetEnv& env) { return Parser(text, env).parse(); }

MeasurableFn::MeasurableFn(TimeScale T, Expr e) : T_(std::move(T)), e_(std::move(e)) {
  for (const auto& s : ex::guards(e_)) require_same_scale(T_, s.scale(), "function guard");
  check_domain(e_, {T_.t0(), std::numeric_limits<double>::infinity()});
}

MeasurableFn MeasurableFn::parse(const TimeScale& T, const std::string& text, const SetEnv& env) {
  return MeasurableFn(T, parse_expr(text, env));
}

MeasurableFn MeasurableFn::constant(const TimeScale& T, double c) { return MeasurableFn(T, ex::constant(c)); }
MeasurableFn MeasurableFn::identity(const TimeScale& T) { return MeasurableFn(T, ex::var()); }
MeasurableFn MeasurableFn::indicator(const TsSet& S, std::string label) {
  return MeasurableFn(S.scale(), ex::indicator(S, std::move(label)));
}

double MeasurableFn::eval(double t) const {
  if (!T_.contains(t)) throw NotInTimeScale(format_number(t) + " is not a point of " + T_.describe());
  return ex::eval(e_, t);
}

MeasurableFn combine(const MeasurableFn& f, const MeasurableFn& g, CombineOp op, double alpha) {
  switch (op) {
    case CombineOp::Add:
      require_same_scale(f.scale(), g.scale(), "function sum");
      return MeasurableFn(f.scale(), ex::binary(Op::Add, f.expr(), g.expr()));
    case CombineOp::Mul:
      require_same_scale(f.scale(), g.scale(), "function product");
      return MeasurableFn(f.scale(), ex::binary(Op::Mul, f.expr(), g.expr()));
    case CombineOp::Scale:
      return MeasurableFn(f.scale(), ex::binary(Op::Mul, ex::constant(alpha), f.expr()));
    case CombineOp::ComposeOuter:
      return compose(g.expr(), f);
  }
  return f;
}

MeasurableFn operator+(const MeasurableFn& f, const MeasurableFn& g) { return combine(f, g, CombineOp::Add); }
MeasurableFn operator-(const MeasurableFn& f, const MeasurableFn& g) {
  require_same_scale(f.scale(), g.scale(), "function difference");
  return MeasurableFn(f.scale(), ex::binary(Op::Sub, f.expr(), g.expr()));
}
MeasurableFn operator*(const MeasurableFn& f, const MeasurableFn& g) { return combine(f, g, CombineOp::Mul); }
MeasurableFn operator*(double alpha, const MeasurableFn& f) { return combine(f, f, CombineOp::Scale, alpha); }

MeasurableFn compose(const Expr& outer, const MeasurableFn& f) {
  return MeasurableFn(f.scale(), ex::substitute(outer, f.expr()));
}

}  // namespace tsconv

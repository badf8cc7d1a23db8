#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tsconv/interval.hpp"
#include "tsconv/tsset.hpp"

namespace tsconv {

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

/// Expression tree over the variable t.
struct ExprNode {
  enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Log, Abs, Ind, Piecewise };
  Op op = Op::Const;
  double value = 0.0;
  std::vector<Expr> args;   // Piecewise: one per guard, then the default
  std::vector<TsSet> sets;  // Ind: the indicated set; Piecewise: guards
  std::vector<std::string> labels;  // display names of `sets`, when known
};

namespace ex {

Expr constant(double c);
Expr var();
Expr unary(ExprNode::Op op, Expr a);
Expr binary(ExprNode::Op op, Expr a, Expr b);
Expr indicator(const TsSet& S, std::string label = {});
Expr piecewise(std::vector<TsSet> guards, std::vector<Expr> pieces, Expr fallback,
               std::vector<std::string> labels = {});

bool is_constant(const Expr& e);
/// Evaluates at any real t (no membership check). Throws DomainError.
double eval(const Expr& e, double t);
/// Enclosure over [x.lo, x.hi]; indicators count as [0, 1].
Interval enclose(const Expr& e, Interval x);
/// Replaces every occurrence of t by `inner`.
Expr substitute(const Expr& outer, const Expr& inner);
/// Guard sets (indicators and piecewise guards), deduplicated by key.
std::vector<TsSet> guards(const Expr& e);
/// Resolves indicators and piecewise choices given membership in each guard.
Expr specialize(const Expr& e, const std::map<std::string, bool>& in_guard);
bool uses_sets(const Expr& e);

std::string to_string(const Expr& e);
/// Like to_string but identifies sets by their structural key.
std::string key(const Expr& e);

}  // namespace ex

using SetEnv = std::map<std::string, TsSet>;

/// Infix grammar: numbers, t, pi, + - * / ^, sin cos exp log abs sqrt pow,
/// ind(name), piecewise(name: expr, ..., else: expr).
Expr parse_expr(const std::string& text, const SetEnv& env = {});

/// Δ-measurable function T → ℝ given by an expression tree.
class MeasurableFn {
 public:
  /// Rejects division by an identically zero term and logs of nonpositive
  /// ranges over [t0, ∞). Throws DomainError.
  MeasurableFn(TimeScale T, Expr e);

  static MeasurableFn parse(const TimeScale& T, const std::string& text, const SetEnv& env = {});
  static MeasurableFn constant(const TimeScale& T, double c);
  static MeasurableFn identity(const TimeScale& T);
  static MeasurableFn indicator(const TsSet& S, std::string label = {});

  const TimeScale& scale() const { return T_; }
  const Expr& expr() const { return e_; }

  /// Throws NotInTimeScale or DomainError.
  double eval(double t) const;
  Interval enclose(Interval x) const { return ex::enclose(e_, x); }
  std::string to_string() const { return ex::to_string(e_); }
  std::string key() const { return ex::key(e_); }

 private:
  TimeScale T_;
  Expr e_;
};

enum class CombineOp { Add, Mul, Scale, ComposeOuter };

/// Add/Mul combine f and g pointwise; Scale returns alpha·f; ComposeOuter
/// returns g∘f where g's variable t stands for the value of f.
MeasurableFn combine(const MeasurableFn& f, const MeasurableFn& g, CombineOp op, double alpha = 1.0);

MeasurableFn operator+(const MeasurableFn& f, const MeasurableFn& g);
MeasurableFn operator-(const MeasurableFn& f, const MeasurableFn& g);
MeasurableFn operator*(const MeasurableFn& f, const MeasurableFn& g);
MeasurableFn operator*(double alpha, const MeasurableFn& f);
/// outer(f(t)); outer must not reference sets.
MeasurableFn compose(const Expr& outer, const MeasurableFn& f);

}  // namespace tsconv

#include "surgery/expr.hpp"

#include <stdexcept>

namespace surgery {

Expr Expr::number(Integer v) {
  Expr e;
  e.kind = Kind::Number;
  e.value = std::move(v);
  return e;
}

Expr Expr::var(std::string name) {
  Expr e;
  e.kind = Kind::Var;
  e.name = std::move(name);
  return e;
}

namespace {

Expr make(Expr::Kind kind, std::vector<Expr> args) {
  Expr e;
  e.kind = kind;
  e.args = std::move(args);
  return e;
}

class ExprParser {
 public:
  ExprParser(TokenCursor& cur, const std::set<std::string>& vars) : cur_(cur), vars_(vars) {}

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (cur_.accept_punct("+")) {
        lhs = make(Expr::Kind::Add, {std::move(lhs), term()});
      } else if (cur_.accept_punct("-")) {
        lhs = make(Expr::Kind::Sub, {std::move(lhs), term()});
      } else {
        return lhs;
      }
    }
  }

 private:
  bool starts_atom() const {
    const Token& t = cur_.peek();
    if (t.kind == TokenKind::Number) return true;
    if (t.kind == TokenKind::Ident) return vars_.contains(t.text) && !cur_.at_keyword_arg();
    return cur_.peek_punct("(");
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (cur_.accept_punct("*")) {
        lhs = make(Expr::Kind::Mul, {std::move(lhs), unary()});
      } else if (starts_atom()) {
        lhs = make(Expr::Kind::Mul, {std::move(lhs), power()});
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (cur_.accept_punct("-")) return make(Expr::Kind::Neg, {unary()});
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (!cur_.accept_punct("^")) return base;
    const bool negative = cur_.accept_punct("-");
    const Token& t = cur_.peek();
    if (t.kind != TokenKind::Number) throw cur_.error_at(t, "expected an integer exponent");
    Expr exponent = Expr::number(Integer::from_string(cur_.next().text));
    if (negative) exponent = make(Expr::Kind::Neg, {std::move(exponent)});
    return make(Expr::Kind::Pow, {std::move(base), std::move(exponent)});
  }

  Expr atom() {
    const Token& t = cur_.peek();
    if (t.kind == TokenKind::Number) return Expr::number(Integer::from_string(cur_.next().text));
    if (t.kind == TokenKind::Ident) {
      if (!vars_.contains(t.text)) throw cur_.error_at(t, "unknown variable '" + t.text + "'");
      return Expr::var(cur_.next().text);
    }
    if (cur_.accept_punct("(")) {
      Expr inner = expr();
      cur_.expect_punct(")");
      return inner;
    }
    throw cur_.error_at(t, t.kind == TokenKind::End ? "expected an expression" : "unexpected '" + t.text + "' in expression");
  }

  TokenCursor& cur_;
  const std::set<std::string>& vars_;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string wrap(const Expr& e, bool parens) {
  const std::string s = print_expr(e);
  return parens ? "(" + s + ")" : s;
}

Laurent normalize(Laurent l) {
  for (auto it = l.begin(); it != l.end();) {
    it = it->second.is_zero() ? l.erase(it) : std::next(it);
  }
  return l;
}

Laurent add(const Laurent& a, const Laurent& b, int sign) {
  Laurent out = a;
  for (const auto& [d, c] : b) out[d] += sign > 0 ? c : -c;
  return normalize(std::move(out));
}

Laurent multiply(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [da, ca] : a) {
    for (const auto& [db, cb] : b) out[da + db] += ca * cb;
  }
  return normalize(std::move(out));
}

}  // namespace

Expr parse_expr(TokenCursor& cursor, const std::set<std::string>& vars) { return ExprParser(cursor, vars).expr(); }

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: return e.value.str();
    case Expr::Kind::Var: return e.name;
    case Expr::Kind::Neg: return "-" + wrap(e.args[0], precedence(e.args[0]) < 3);
    case Expr::Kind::Add:
      return print_expr(e.args[0]) + " + " + wrap(e.args[1], precedence(e.args[1]) <= 1);
    case Expr::Kind::Sub:
      return print_expr(e.args[0]) + " - " + wrap(e.args[1], precedence(e.args[1]) <= 1);
    case Expr::Kind::Mul:
      return wrap(e.args[0], precedence(e.args[0]) < 2) + "*" + wrap(e.args[1], precedence(e.args[1]) <= 2);
    case Expr::Kind::Pow: return wrap(e.args[0], precedence(e.args[0]) < 5) + "^" + print_expr(e.args[1]);
  }
  return "?";
}

Laurent evaluate_laurent(const Expr& e, const std::map<std::string, Integer>& bindings, const std::string& laurent_var) {
  switch (e.kind) {
    case Expr::Kind::Number: return normalize({{0, e.value}});
    case Expr::Kind::Var: {
      if (e.name == laurent_var) return {{1, Integer(1)}};
      auto it = bindings.find(e.name);
      if (it == bindings.end()) throw std::invalid_argument("unbound variable " + e.name);
      return normalize({{0, it->second}});
    }
    case Expr::Kind::Neg: return add({}, evaluate_laurent(e.args[0], bindings, laurent_var), -1);
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return add(evaluate_laurent(e.args[0], bindings, laurent_var), evaluate_laurent(e.args[1], bindings, laurent_var),
                 e.kind == Expr::Kind::Add ? 1 : -1);
    case Expr::Kind::Mul:
      return multiply(evaluate_laurent(e.args[0], bindings, laurent_var), evaluate_laurent(e.args[1], bindings, laurent_var));
    case Expr::Kind::Pow: {
      const Laurent base = evaluate_laurent(e.args[0], bindings, laurent_var);
      const Laurent ex = evaluate_laurent(e.args[1], bindings, laurent_var);
      if (ex.size() > 1 || (ex.size() == 1 && ex.begin()->first != 0)) throw std::invalid_argument("non-constant exponent");
      const Integer k = ex.empty() ? Integer(0) : ex.begin()->second;
      if (abs(k) > Integer(4096)) throw std::invalid_argument("exponent " + k.str() + " out of range");
      const auto n = static_cast<int>(k.to_int64());
      if (n >= 0) {
        Laurent out{{0, Integer(1)}};
        for (int i = 0; i < n; ++i) out = multiply(out, base);
        return out;
      }
      if (base.size() != 1 || abs(base.begin()->second) != 1) {
        throw std::invalid_argument("negative power of " + print_expr(e.args[0]));
      }
      const auto [d, c] = *base.begin();
      return {{d * n, (n % 2 != 0) ? c : Integer(1)}};
    }
  }
  return {};
}

Integer evaluate_int(const Expr& e, const std::map<std::string, Integer>& bindings) {
  const Laurent l = evaluate_laurent(e, bindings, "");
  if (l.empty()) return Integer(0);
  if (l.size() != 1 || l.begin()->first != 0) throw std::invalid_argument("expression is not an integer");
  return l.begin()->second;
}

std::set<std::string> expr_vars(const Expr& e) {
  std::set<std::string> out;
  if (e.kind == Expr::Kind::Var) out.insert(e.name);
  for (const Expr& a : e.args) out.merge(expr_vars(a));
  return out;
}

}  // namespace surgery

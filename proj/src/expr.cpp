#include "sigchev/expr.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace sigchev {

std::string shifted_name(const std::string& var, unsigned j) {
  if (j == 0) return var;
  return "s" + std::to_string(j) + "(" + var + ")";
}

std::pair<std::string, unsigned> split_shifted_name(const std::string& name) {
  if (name.size() > 4 && name[0] == 's' && name.back() == ')') {
    const auto open = name.find('(');
    if (open != std::string::npos && open > 1) {
      const std::string digits = name.substr(1, open - 1);
      if (std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return {name.substr(open + 1, name.size() - open - 2), static_cast<unsigned>(std::stoul(digits))};
    }
  }
  return {name, 0};
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t offset) : s_(text), offset_(offset) {}

  ExprPtr parse() {
    ExprPtr e = sum();
    skip();
    if (pos_ != s_.size()) error("end of expression");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& expected) const {
    fail(ErrorKind::SyntaxError,
         "column " + std::to_string(offset_ + pos_ + 1) + ": expected " + expected + " in '" + std::string(s_) + "'");
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

  static ExprPtr node(Expr::Kind k, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->args = std::move(args);
    return e;
  }

  ExprPtr sum() {
    ExprPtr lhs = product();
    while (true) {
      if (accept('+')) lhs = node(Expr::Kind::Add, {lhs, product()});
      else if (accept('-')) lhs = node(Expr::Kind::Sub, {lhs, product()});
      else return lhs;
    }
  }

  ExprPtr product() {
    ExprPtr lhs = unary();
    while (true) {
      if (accept('*')) lhs = node(Expr::Kind::Mul, {lhs, unary()});
      else if (accept('/')) lhs = node(Expr::Kind::Div, {lhs, unary()});
      else return lhs;
    }
  }

  ExprPtr unary() {
    if (accept('-')) return node(Expr::Kind::Neg, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (accept('^')) {
      skip();
      bool negative = accept('-');
      skip();
      const Integer n = integer();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Pow;
      e->number = negative ? Integer(-n) : n;
      e->args = {base};
      return e;
    }
    return base;
  }

  Integer integer() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
      ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  ExprPtr atom() {
    skip();
    if (pos_ >= s_.size()) error("operand");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = sum();
      if (!accept(')')) error("')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Number;
      e->number = integer();
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id = identifier();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Name;
      // shift notation: s^j(x), sj(x), s(x)
      if (id[0] == 's') {
        const std::string digits = id.substr(1);
        const bool numeric =
            std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
        std::size_t save = pos_;
        unsigned shift = 0;
        bool shifted = false;
        if (numeric && !digits.empty() && peek('(')) {
          shift = static_cast<unsigned>(std::stoul(digits));
          shifted = true;
        } else if (id == "s" && peek('^')) {
          accept('^');
          skip();
          shift = static_cast<unsigned>(integer().get_ui());
          shifted = peek('(');
        } else if (id == "s" && peek('(')) {
          shift = 1;
          shifted = true;
        }
        if (shifted) {
          accept('(');
          skip();
          std::string inner = identifier();
          if (inner.empty()) error("variable name");
          if (!accept(')')) error("')'");
          e->name = shifted_name(inner, shift);
          return e;
        }
        pos_ = save;
      }
      e->name = id;
      return e;
    }
    error("operand");
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  std::string_view s_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

void collect_names(const ExprPtr& e, std::vector<std::string>& out) {
  if (e->kind == Expr::Kind::Name) {
    if (std::find(out.begin(), out.end(), e->name) == out.end()) out.push_back(e->name);
    return;
  }
  for (const auto& a : e->args) collect_names(a, out);
}

long exponent_of(const Expr& e) {
  if (!e.number.fits_slong_p() || e.number > 100000 || e.number < -100000)
    fail(ErrorKind::InvalidArgument, "exponent out of range");
  return e.number.get_si();
}

}  // namespace

ExprPtr parse_expr(std::string_view text, std::size_t offset) { return Parser(text, offset).parse(); }

std::vector<std::string> expr_names(const ExprPtr& e) {
  std::vector<std::string> out;
  collect_names(e, out);
  return out;
}

Elem eval_elem(const Field& f, const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Number: return f.from_rational(Rational(e->number));
    case Expr::Kind::Name: {
      auto i = f.generator_index(e->name);
      if (!i) fail(ErrorKind::UnknownName, e->name);
      return f.generator(*i);
    }
    case Expr::Kind::Add: return f.add(eval_elem(f, e->args[0]), eval_elem(f, e->args[1]));
    case Expr::Kind::Sub: return f.sub(eval_elem(f, e->args[0]), eval_elem(f, e->args[1]));
    case Expr::Kind::Mul: return f.mul(eval_elem(f, e->args[0]), eval_elem(f, e->args[1]));
    case Expr::Kind::Div: {
      const Elem d = eval_elem(f, e->args[1]);
      if (f.is_zero(d)) fail(ErrorKind::InvalidArgument, "division by zero");
      return f.div(eval_elem(f, e->args[0]), d);
    }
    case Expr::Kind::Pow: {
      const Elem b = eval_elem(f, e->args[0]);
      const long n = exponent_of(*e);
      if (n < 0 && f.is_zero(b)) fail(ErrorKind::InvalidArgument, "division by zero");
      return f.pow(b, n);
    }
    case Expr::Kind::Neg: return f.neg(eval_elem(f, e->args[0]));
  }
  return f.zero();
}

Poly eval_poly(const PolyRing& r, const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Number: return r.constant(r.field().from_rational(Rational(e->number)));
    case Expr::Kind::Name: {
      if (auto i = r.var_index(e->name)) return r.var(*i);
      if (auto g = r.field().generator_index(e->name)) return r.constant(r.field().generator(*g));
      fail(ErrorKind::UnknownName, e->name);
    }
    case Expr::Kind::Add: return r.add(eval_poly(r, e->args[0]), eval_poly(r, e->args[1]));
    case Expr::Kind::Sub: return r.sub(eval_poly(r, e->args[0]), eval_poly(r, e->args[1]));
    case Expr::Kind::Mul: return r.mul(eval_poly(r, e->args[0]), eval_poly(r, e->args[1]));
    case Expr::Kind::Div: {
      const Poly d = eval_poly(r, e->args[1]);
      if (!r.is_constant(d) || r.is_zero(d)) fail(ErrorKind::TypeMismatch, "division by a non-constant polynomial");
      return r.scale(eval_poly(r, e->args[0]), r.field().inv(r.lc(d)));
    }
    case Expr::Kind::Pow: {
      const long n = exponent_of(*e);
      const Poly b = eval_poly(r, e->args[0]);
      if (n >= 0) return r.pow(b, static_cast<unsigned>(n));
      if (!r.is_constant(b) || r.is_zero(b)) fail(ErrorKind::TypeMismatch, "negative power of a non-constant polynomial");
      return r.constant(r.field().pow(r.lc(b), n));
    }
    case Expr::Kind::Neg: return r.neg(eval_poly(r, e->args[0]));
  }
  return r.zero();
}

Poly parse_poly(const PolyRing& r, std::string_view text) { return eval_poly(r, parse_expr(text)); }

Elem parse_elem(const Field& f, std::string_view text) { return eval_elem(f, parse_expr(text)); }

UPoly parse_upoly(const Field& f, std::string_view text, const std::string& var) {
  const PolyRing r(f, {var}, MonomialOrder::lex());
  const Poly p = parse_poly(r, text);
  UPoly out(p.terms.empty() ? 0 : r.degree_in(p, 0) + 1, f.zero());
  for (const auto& t : p.terms) out[t.mono[0]] = t.coeff;
  upoly::trim(f, out);
  return out;
}

}  // namespace sigchev

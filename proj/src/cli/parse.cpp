#include "cosmo/cli/parse.hpp"

#include <cctype>
#include <optional>

#include "cosmo/error.hpp"
#include "json.hpp"

namespace cosmo::cli {

using ops::ShiftContext;
using ops::ShiftOp;
using ops::WeylContext;
using ops::WeylOp;
using sym::MPoly;
using sym::RatFun;
using sym::Rational;

namespace {

struct Pos {
  int line = 1;
  int column = 1;
};

enum class Tok { Number, Name, Op, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Pos pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void bump() {
    if (text_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  void advance() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) bump();
    current_ = Token{Tok::End, "", pos_};
    if (i_ >= text_.size()) return;
    auto at = [&](size_t k) { return static_cast<unsigned char>(text_[k]); };
    size_t start = i_;
    if (std::isdigit(at(i_))) {
      while (i_ < text_.size() && std::isdigit(at(i_))) bump();
      if (i_ + 1 < text_.size() && text_[i_] == '.' && std::isdigit(at(i_ + 1))) {
        bump();
        while (i_ < text_.size() && std::isdigit(at(i_))) bump();
      }
      current_.kind = Tok::Number;
    } else if (std::isalpha(at(i_)) || text_[i_] == '_') {
      while (i_ < text_.size() && (std::isalnum(at(i_)) || text_[i_] == '_')) bump();
      current_.kind = Tok::Name;
    } else if (std::string("+-*/^()").find(text_[i_]) != std::string::npos) {
      bump();
      current_.kind = Tok::Op;
    } else {
      throw ParseError(std::string("unexpected character '") + text_[i_] + "'", pos_.line, pos_.column);
    }
    current_.text = text_.substr(start, i_ - start);
  }

  const std::string& text_;
  size_t i_ = 0;
  Pos pos_;
  Token current_;
};

[[noreturn]] void fail(const std::string& what, Pos p) { throw ParseError(what, p.line, p.column); }

template <class Alg>
class Parser {
 public:
  using Value = typename Alg::Value;

  Parser(const std::string& text, const Alg& alg) : lex_(text), alg_(alg) {
    if (lex_.peek().kind == Tok::End) fail("empty expression", lex_.peek().pos);
  }

  Value run() {
    Value v = sum();
    if (lex_.peek().kind != Tok::End) fail("unexpected '" + lex_.peek().text + "'", lex_.peek().pos);
    return v;
  }

 private:
  bool at_op(const char* op) const { return lex_.peek().kind == Tok::Op && lex_.peek().text == op; }

  Value sum() {
    Value v = product();
    while (at_op("+") || at_op("-")) {
      bool plus = lex_.take().text == "+";
      Value rhs = product();
      v = plus ? alg_.add(v, rhs) : alg_.add(v, alg_.neg(rhs));
    }
    return v;
  }

  Value product() {
    Value v = unary();
    while (at_op("*") || at_op("/")) {
      Token op = lex_.take();
      Value rhs = unary();
      v = op.text == "*" ? alg_.mul(v, rhs) : alg_.div(v, rhs, op.pos);
    }
    return v;
  }

  Value unary() {
    if (at_op("-")) {
      lex_.take();
      return alg_.neg(unary());
    }
    return power();
  }

  Value power() {
    Value base = atom();
    if (!at_op("^")) return base;
    Token caret = lex_.take();
    bool negative = false;
    if (at_op("-")) {
      lex_.take();
      negative = true;
    }
    Token e = lex_.take();
    if (e.kind != Tok::Number || e.text.find('.') != std::string::npos) fail("expected an integer exponent", e.pos);
    if (e.text.size() > 6) fail("exponent too large", e.pos);
    int k = std::stoi(e.text);
    return alg_.pow(base, negative ? -k : k, caret.pos);
  }

  Value atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Number: return alg_.number(sym::parse_rational(t.text));
      case Tok::Name: return alg_.name(t.text, t.pos);
      case Tok::Op:
        if (t.text == "(") {
          Value v = sum();
          if (!at_op(")")) fail("expected ')'", lex_.peek().pos);
          lex_.take();
          return v;
        }
        fail("unexpected '" + t.text + "'", t.pos);
      case Tok::End: fail("unexpected end of input", t.pos);
    }
    fail("unexpected token", t.pos);
  }

  Lexer lex_;
  const Alg& alg_;
};

int variable_index(const sym::VarTable& table, const std::string& name) {
  auto i = table.find(name);
  if (!i) throw Error(ErrorKind::UnknownVariable, "unknown variable '" + name + "'");
  return *i;
}

struct PolyAlg {
  using Value = MPoly;
  const sym::VarTable& table;

  Value number(const Rational& q) const { return MPoly(q); }
  Value name(const std::string& n, Pos) const { return MPoly::variable(variable_index(table, n)); }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value neg(const Value& a) const { return -a; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value div(const Value& a, const Value& b, Pos p) const {
    if (!b.is_constant() || b.is_zero()) fail("polynomials divide only by nonzero numbers", p);
    return a * Rational(1 / b.constant_value());
  }
  Value pow(const Value& a, int k, Pos p) const {
    if (k < 0) fail("negative power of a polynomial", p);
    return a.pow(static_cast<unsigned>(k));
  }
};

struct RatAlg {
  using Value = RatFun;
  const sym::VarTable& table;

  Value number(const Rational& q) const { return RatFun(q); }
  Value name(const std::string& n, Pos) const { return MPoly::variable(variable_index(table, n)); }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value neg(const Value& a) const { return -a; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value div(const Value& a, const Value& b, Pos p) const {
    if (b.is_zero()) fail("division by zero", p);
    return a / b;
  }
  Value pow(const Value& a, int k, Pos p) const {
    if (k < 0 && a.is_zero()) fail("negative power of zero", p);
    return a.pow(k);
  }
};

RatFun weyl_scalar(const WeylOp& w) { return w.is_zero() ? RatFun() : w.terms().begin()->second; }

struct WeylAlg {
  using Value = WeylOp;
  const WeylContext& ctx;

  Value number(const Rational& q) const { return WeylOp::scalar(ctx, RatFun(q)); }
  Value name(const std::string& n, Pos) const {
    const auto& table = *ctx.table;
    if (auto i = table.find(n)) {
      int slot = ctx.slot(*i);
      return slot >= 0 ? WeylOp::variable(ctx, slot) : WeylOp::scalar(ctx, MPoly::variable(*i));
    }
    if (n.size() > 1 && n[0] == 'd') {
      std::string rest = n.substr(1);
      for (const std::string& target : {rest, "a" + rest}) {
        auto i = table.find(target);
        if (i && ctx.slot(*i) >= 0) return WeylOp::derivative(ctx, ctx.slot(*i));
      }
    }
    throw Error(ErrorKind::UnknownVariable, "unknown variable '" + n + "'");
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value neg(const Value& a) const { return -a; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value div(const Value& a, const Value& b, Pos p) const {
    if (!b.is_scalar() || b.is_zero()) fail("operators divide only by nonzero scalars", p);
    return a * weyl_scalar(b).inverse();
  }
  Value pow(const Value& a, int k, Pos p) const {
    if (a.is_scalar()) {
      if (k < 0 && a.is_zero()) fail("negative power of zero", p);
      return WeylOp::scalar(ctx, weyl_scalar(a).pow(k));
    }
    if (k < 0) {
      // only a bare variable x_i may be inverted
      if (a.terms().size() != 1 || !(a.terms().begin()->second == RatFun(1))) fail("negative power of an operator", p);
      const auto& key = a.terms().begin()->first;
      int slot = -1;
      for (size_t i = 0; i < key.x.size(); ++i) {
        if (key.d[i] != 0 || (key.x[i] != 0 && (slot >= 0 || key.x[i] != 1))) fail("negative power of an operator", p);
        if (key.x[i] == 1) slot = static_cast<int>(i);
      }
      return WeylOp::variable(ctx, slot, k);
    }
    WeylOp r = WeylOp::scalar(ctx, 1);
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
  }
};

RatFun shift_scalar(const ShiftOp& s) { return s.is_zero() ? RatFun() : s.terms().begin()->second; }

struct ShiftAlg {
  using Value = ShiftOp;
  const ShiftContext& ctx;

  Value number(const Rational& q) const { return ShiftOp::scalar(ctx, RatFun(q)); }
  Value name(const std::string& n, Pos) const {
    if (auto i = ctx.table->find(n)) return ShiftOp::scalar(ctx, MPoly::variable(*i));
    if (n.size() > 1 && n[0] == 's' && n.find_first_not_of("0123456789", 1) == std::string::npos && n.size() < 6) {
      int k = std::stoi(n.substr(1));
      if (k >= 1 && k <= ctx.size()) return ShiftOp::sigma(ctx, k - 1);
    }
    throw Error(ErrorKind::UnknownVariable, "unknown variable '" + n + "'");
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value neg(const Value& a) const { return -a; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value div(const Value& a, const Value& b, Pos p) const {
    if (!b.is_scalar() || b.is_zero()) fail("shift operators divide only by nonzero scalars", p);
    return a * shift_scalar(b).inverse();
  }
  Value pow(const Value& a, int k, Pos p) const {
    if (a.is_scalar()) {
      if (k < 0 && a.is_zero()) fail("negative power of zero", p);
      return ShiftOp::scalar(ctx, shift_scalar(a).pow(k));
    }
    if (k < 0) {
      // a bare shift monomial sigma^a inverts to sigma^-a
      if (a.terms().size() != 1 || !(a.terms().begin()->second == RatFun(1))) fail("negative power of an operator", p);
      std::vector<int> shift = a.terms().begin()->first;
      for (int& e : shift) e *= k;
      ShiftOp r(ctx);
      r.add_term(shift, 1);
      return r;
    }
    ShiftOp r = ShiftOp::scalar(ctx, 1);
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
  }
};

}  // namespace

MPoly parse_poly(const std::string& text, const sym::VarTable& table) {
  PolyAlg alg{table};
  return Parser<PolyAlg>(text, alg).run();
}

RatFun parse_ratfun(const std::string& text, const sym::VarTable& table) {
  RatAlg alg{table};
  return Parser<RatAlg>(text, alg).run();
}

WeylOp parse_weyl(const std::string& text, const WeylContext& ctx) {
  WeylAlg alg{ctx};
  return Parser<WeylAlg>(text, alg).run();
}

ShiftOp parse_shift(const std::string& text, const ShiftContext& ctx) {
  ShiftAlg alg{ctx};
  return Parser<ShiftAlg>(text, alg).run();
}

const WeylOp& OperatorSet::at(const std::string& name) const {
  for (const auto& [n, op] : operators) {
    if (n == name) return op;
  }
  throw Error(ErrorKind::UnknownVariable, "no operator named '" + name + "'");
}

namespace {

// "D1 + D3 - H": a signed sum of operator names from the set.
ops::WeylOp combine(const OperatorSet& set, const std::string& text) {
  ops::WeylOp out(set.context);
  size_t i = 0;
  int sign = 1;
  bool expect_name = true;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (expect_name && c == '-') {
      sign = -sign;
      ++i;
    } else if (!expect_name && (c == '+' || c == '-')) {
      sign = c == '+' ? 1 : -1;
      expect_name = true;
      ++i;
    } else if (expect_name && (std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
      size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      const auto& op = set.at(text.substr(start, i - start));
      out += sign > 0 ? op : -op;
      sign = 1;
      expect_name = false;
    } else {
      throw ParseError("unexpected '" + std::string(1, c) + "' in generator list", 1, static_cast<int>(i) + 1);
    }
  }
  if (expect_name) throw ParseError("generator ends without an operator name", 1, static_cast<int>(text.size()) + 1);
  return out;
}

}  // namespace

OperatorSet parse_operator_set(const std::string& json_text, const std::vector<std::string>* differential) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 1, static_cast<int>(e.byte));
  }
  try {
    auto table = sym::make_table(j.at("variables").get<std::vector<std::string>>());
    auto vars = differential ? *differential : j.at("differential").get<std::vector<std::string>>();
    OperatorSet set{WeylContext::make(table, vars), {}, {}};
    for (const auto& [name, text] : j.at("operators").items()) {
      set.operators.emplace_back(name, parse_weyl(text.get<std::string>(), set.context));
    }
    if (j.contains("ideal")) {
      for (const auto& g : j.at("ideal")) set.generators.push_back(combine(set, g.get<std::string>()));
    } else {
      for (const auto& [name, op] : set.operators) set.generators.push_back(op);
    }
    return set;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed operator set: ") + e.what(), 1, 1);
  }
}

sym::FracMatrix parse_matrix(const std::string& json_text, const sym::VarTable& table) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 1, static_cast<int>(e.byte));
  }
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    throw ParseError("matrix must be a nonempty array of rows", 1, 1);
  }
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  sym::FracMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw ParseError("row " + std::to_string(r + 1) + " has the wrong length", 1, 1);
    }
    for (int c = 0; c < cols; ++c) {
      const auto& cell = row[static_cast<size_t>(c)];
      if (!cell.is_string()) throw ParseError("matrix entries must be strings", 1, 1);
      m(r, c) = parse_ratfun(cell.get<std::string>(), table);
    }
  }
  return m;
}

}  // namespace cosmo::cli

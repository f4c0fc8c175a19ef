#include "rlab/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "rlab/errors.hpp"

namespace rlab {

enum class Op { Constant, Variable, Negate, Add, Sub, Mul, Div, Pow, Min, Max, Exp, Log, Abs, Sqrt };

struct Expression::Node {
  Op op = Op::Constant;
  double value = 0.0;
  int variable = -1;
  std::unique_ptr<const Node> lhs;
  std::unique_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::unique_ptr<const Expression::Node>;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_unique<Expression::Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

struct FunctionInfo {
  std::string_view name;
  Op op;
  int args;
};

constexpr FunctionInfo kFunctions[] = {
    {"min", Op::Min, 2}, {"max", Op::Max, 2},   {"exp", Op::Exp, 1},
    {"log", Op::Log, 1}, {"abs", Op::Abs, 1},   {"sqrt", Op::Sqrt, 1},
};

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& variables) : text_(text), vars_(variables) {}

  NodePtr parse() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    auto e = expression();
    skip();
    if (pos_ < text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

  int max_var() const { return max_var_; }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  NodePtr expression() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Op::Add, std::move(lhs), term());
      } else if (accept('-')) {
        lhs = make(Op::Sub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Op::Mul, std::move(lhs), unary());
      } else if (accept('/')) {
        lhs = make(Op::Div, std::move(lhs), unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::Negate, unary());
    return power();
  }

  NodePtr power() {
    auto base = primary();
    if (accept('^')) return make(Op::Pow, std::move(base), unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr number() {
    std::size_t start = pos_;
    auto digits = [this] {
      std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - s;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) throw ParseError("malformed number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || ptr != text_.data() + pos_) throw ParseError("malformed number", start);
    auto n = std::make_unique<Expression::Node>();
    n->op = Op::Constant;
    n->value = v;
    return n;
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string_view name = text_.substr(start, pos_ - start);

    for (const auto& f : kFunctions) {
      if (f.name != name) continue;
      expect('(');
      auto a = expression();
      NodePtr b;
      if (f.args == 2) {
        if (!accept(',')) throw ParseError(std::string(name) + " expects 2 arguments", pos_);
        b = expression();
      }
      if (!accept(')')) {
        throw ParseError(std::string(name) + " expects " + std::to_string(f.args) +
                             (f.args == 1 ? " argument" : " arguments"),
                         pos_);
      }
      return make(f.op, std::move(a), std::move(b));
    }

    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) {
      bool looks_indexed = name.size() > 1 && name[0] == 'x' &&
                           std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(ch); });
      if (looks_indexed) {
        throw ParseError("variable " + std::string(name) + " exceeds arity " + std::to_string(vars_.size()), start);
      }
      throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }
    auto n = std::make_unique<Expression::Node>();
    n->op = Op::Variable;
    n->variable = static_cast<int>(it - vars_.begin());
    max_var_ = std::max(max_var_, n->variable);
    return n;
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
  int max_var_ = -1;
};

[[noreturn]] void fail(const std::string& what) { throw EvaluationError(what); }

double eval(const Expression::Node& n, std::span<const double> v) {
  double r = 0.0;
  switch (n.op) {
    case Op::Constant:
      return n.value;
    case Op::Variable:
      if (n.variable >= static_cast<int>(v.size())) {
        fail("variable index " + std::to_string(n.variable + 1) + " not bound (" + std::to_string(v.size()) +
             " values supplied)");
      }
      return v[n.variable];
    case Op::Negate:
      return -eval(*n.lhs, v);
    case Op::Add:
      r = eval(*n.lhs, v) + eval(*n.rhs, v);
      break;
    case Op::Sub:
      r = eval(*n.lhs, v) - eval(*n.rhs, v);
      break;
    case Op::Mul:
      r = eval(*n.lhs, v) * eval(*n.rhs, v);
      break;
    case Op::Div: {
      double den = eval(*n.rhs, v);
      if (den == 0.0) fail("division by zero");
      r = eval(*n.lhs, v) / den;
      break;
    }
    case Op::Pow: {
      double b = eval(*n.lhs, v);
      double e = eval(*n.rhs, v);
      if (b == 0.0 && e < 0.0) fail("zero raised to a negative power");
      if (b < 0.0 && e != std::floor(e)) fail("negative base raised to a non-integer power");
      r = std::pow(b, e);
      break;
    }
    case Op::Min:
      r = std::min(eval(*n.lhs, v), eval(*n.rhs, v));
      break;
    case Op::Max:
      r = std::max(eval(*n.lhs, v), eval(*n.rhs, v));
      break;
    case Op::Exp:
      r = std::exp(eval(*n.lhs, v));
      break;
    case Op::Log: {
      double a = eval(*n.lhs, v);
      if (!(a > 0.0)) fail("log of nonpositive value " + std::to_string(a));
      r = std::log(a);
      break;
    }
    case Op::Abs:
      return std::abs(eval(*n.lhs, v));
    case Op::Sqrt: {
      double a = eval(*n.lhs, v);
      if (a < 0.0) fail("sqrt of negative value " + std::to_string(a));
      r = std::sqrt(a);
      break;
    }
  }
  if (!std::isfinite(r)) fail("non-finite intermediate result");
  return r;
}

std::string literal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print(const Expression::Node& n, const std::vector<std::string>& vars, std::string& out) {
  auto binary = [&](const char* sym) {
    out += '(';
    print(*n.lhs, vars, out);
    out += sym;
    print(*n.rhs, vars, out);
    out += ')';
  };
  auto call = [&](const char* name) {
    out += name;
    out += '(';
    print(*n.lhs, vars, out);
    if (n.rhs) {
      out += ", ";
      print(*n.rhs, vars, out);
    }
    out += ')';
  };
  switch (n.op) {
    case Op::Constant:
      out += literal(n.value);
      break;
    case Op::Variable:
      out += vars[n.variable];
      break;
    case Op::Negate:
      out += "(-";
      print(*n.lhs, vars, out);
      out += ')';
      break;
    case Op::Add:
      binary(" + ");
      break;
    case Op::Sub:
      binary(" - ");
      break;
    case Op::Mul:
      binary(" * ");
      break;
    case Op::Div:
      binary(" / ");
      break;
    case Op::Pow:
      binary("^");
      break;
    case Op::Min:
      call("min");
      break;
    case Op::Max:
      call("max");
      break;
    case Op::Exp:
      call("exp");
      break;
    case Op::Log:
      call("log");
      break;
    case Op::Abs:
      call("abs");
      break;
    case Op::Sqrt:
      call("sqrt");
      break;
  }
}

}  // namespace

Expression Expression::parse(std::string_view text, const std::vector<std::string>& variables) {
  Parser p(text, variables);
  Expression e;
  e.root_ = p.parse();
  e.source_ = std::string(text);
  e.variables_ = variables;
  e.max_var_ = p.max_var();
  return e;
}

double Expression::operator()(std::span<const double> values) const { return eval(*root_, values); }

std::string Expression::to_string() const {
  std::string out;
  print(*root_, variables_, out);
  return out;
}

std::vector<std::string> indexed_variables(std::size_t count) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= count; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

}  // namespace rlab

#include "varinterp/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <variant>

#include "varinterp/error.hpp"

namespace varinterp {

enum class Op { add, sub, mul, div, log, exp, min, max };

struct Expression::Node {
  struct Number {
    double value;
  };
  struct Variable {};
  struct Apply {
    Op op;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;  // null for unary ops
  };
  std::variant<Number, Variable, Apply> data;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_number(double v) {
  return std::make_shared<const Expression::Node>(Expression::Node{Expression::Node::Number{v}});
}

NodePtr make_apply(Op op, NodePtr lhs, NodePtr rhs = nullptr) {
  return std::make_shared<const Expression::Node>(
      Expression::Node{Expression::Node::Apply{op, std::move(lhs), std::move(rhs)}});
}

double eval(const Expression::Node& node, double t) {
  return std::visit(
      [t](const auto& n) -> double {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Expression::Node::Number>) {
          return n.value;
        } else if constexpr (std::is_same_v<N, Expression::Node::Variable>) {
          return t;
        } else {
          const double a = eval(*n.lhs, t);
          switch (n.op) {
            case Op::log: return std::log(a);
            case Op::exp: return std::exp(a);
            default: break;
          }
          const double b = eval(*n.rhs, t);
          switch (n.op) {
            case Op::add: return a + b;
            case Op::sub: return a - b;
            case Op::mul: return a * b;
            case Op::div: return a / b;
            case Op::min: return std::fmin(a, b);
            case Op::max: return std::fmax(a, b);
            default: return std::numeric_limits<double>::quiet_NaN();
          }
        }
      },
      node.data);
}

void render(const Expression::Node& node, std::ostringstream& os) {
  std::visit(
      [&os](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Expression::Node::Number>) {
          os.precision(17);
          os << n.value;
        } else if constexpr (std::is_same_v<N, Expression::Node::Variable>) {
          os << 't';
        } else {
          auto fn = [&](const char* name) {
            os << name << '(';
            render(*n.lhs, os);
            if (n.rhs) {
              os << ", ";
              render(*n.rhs, os);
            }
            os << ')';
          };
          auto bin = [&](char sym) {
            os << '(';
            render(*n.lhs, os);
            os << ' ' << sym << ' ';
            render(*n.rhs, os);
            os << ')';
          };
          switch (n.op) {
            case Op::add: bin('+'); break;
            case Op::sub: bin('-'); break;
            case Op::mul: bin('*'); break;
            case Op::div: bin('/'); break;
            case Op::log: fn("log"); break;
            case Op::exp: fn("exp"); break;
            case Op::min: fn("min"); break;
            case Op::max: fn("max"); break;
          }
        }
      },
      node.data);
}

bool has_variable(const Expression::Node& node) {
  return std::visit(
      [](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Expression::Node::Number>) {
          return false;
        } else if constexpr (std::is_same_v<N, Expression::Node::Variable>) {
          return true;
        } else {
          return has_variable(*n.lhs) || (n.rhs && has_variable(*n.rhs));
        }
      },
      node.data);
}

}  // namespace

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view src) : src_(src) {}

  Expression run() {
    NodePtr root = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return Expression(std::move(root));
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      skip_ws();
      fail(std::string("expected '") + c + "'");
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_apply(Op::add, lhs, term());
      } else if (accept('-')) {
        lhs = make_apply(Op::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = make_apply(Op::mul, lhs, factor());
      } else if (accept('/')) {
        lhs = make_apply(Op::div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    skip_ws();
    if (pos_ >= src_.size()) fail("expected operand");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      const std::string_view word = src_.substr(start, pos_ - start);
      if (word == "t") {
        return std::make_shared<const Expression::Node>(Expression::Node{Expression::Node::Variable{}});
      }
      if (word == "e") return make_number(std::numbers::e);
      if (word == "log" || word == "exp") {
        expect('(');
        NodePtr arg = expr();
        expect(')');
        return make_apply(word == "log" ? Op::log : Op::exp, std::move(arg));
      }
      if (word == "min" || word == "max") {
        expect('(');
        NodePtr a = expr();
        expect(',');
        NodePtr b = expr();
        expect(')');
        return make_apply(word == "min" ? Op::min : Op::max, std::move(a), std::move(b));
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(word) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    // Exponent part only when followed by digits, so "2e" stays 2 then e.
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc() || ptr != src_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return make_number(value);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

Expression Expression::parse(std::string_view source) { return ExpressionParser(source).run(); }

Expression Expression::number(double value) { return Expression(make_number(value)); }

Expression Expression::variable() {
  return Expression(std::make_shared<const Node>(Node{Node::Variable{}}));
}

double Expression::operator()(double t) const { return eval(*root_, t); }

bool Expression::depends_on_t() const { return has_variable(*root_); }

std::string Expression::to_string() const {
  std::ostringstream os;
  render(*root_, os);
  return os.str();
}

Expression operator+(const Expression& a, const Expression& b) {
  return Expression(make_apply(Op::add, a.root_, b.root_));
}
Expression operator-(const Expression& a, const Expression& b) {
  return Expression(make_apply(Op::sub, a.root_, b.root_));
}
Expression operator*(const Expression& a, const Expression& b) {
  return Expression(make_apply(Op::mul, a.root_, b.root_));
}
Expression operator/(const Expression& a, const Expression& b) {
  return Expression(make_apply(Op::div, a.root_, b.root_));
}
Expression log(const Expression& a) { return Expression(make_apply(Op::log, a.root_)); }
Expression exp(const Expression& a) { return Expression(make_apply(Op::exp, a.root_)); }
Expression min(const Expression& a, const Expression& b) {
  return Expression(make_apply(Op::min, a.root_, b.root_));
}
Expression max(const Expression& a, const Expression& b) {
  return Expression(make_apply(Op::max, a.root_, b.root_));
}

}  // namespace varinterp

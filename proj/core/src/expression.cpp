#include "morrey/expression.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "morrey/errors.hpp"

namespace morrey {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view src) : src_(src) {}

  Expression run() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
    out_.root_ = expr();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError("unexpected character '" + std::string(1, src_[pos_]) + "'", pos_);
    return std::move(out_);
  }

 private:
  using Op = Expression::Op;

  std::int32_t push(Expression::Node n) {
    out_.nodes_.push_back(n);
    return static_cast<std::int32_t>(out_.nodes_.size() - 1);
  }

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
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  std::int32_t expr() {
    std::int32_t lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = push({Op::Add, 0, 0, lhs, term()});
      } else if (accept('-')) {
        lhs = push({Op::Sub, 0, 0, lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  std::int32_t term() {
    std::int32_t lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = push({Op::Mul, 0, 0, lhs, factor()});
      } else if (accept('/')) {
        lhs = push({Op::Div, 0, 0, lhs, factor()});
      } else {
        return lhs;
      }
    }
  }

  std::int32_t factor() {
    if (accept('-')) return push({Op::Neg, 0, 0, factor(), -1});
    std::int32_t base = atom();
    if (accept('^')) {
      skip_ws();
      double sign = 1.0;
      if (accept('-')) {
        sign = -1.0;
      } else {
        accept('+');
      }
      double e = sign * number();
      return push({Op::Pow, e, 0, base, -1});
    }
    return base;
  }

  double number() {
    skip_ws();
    const char* first = src_.data() + pos_;
    const char* last = src_.data() + src_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) throw ParseError("expected number", pos_);
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  std::int32_t atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      std::int32_t inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return push({Op::Num, number(), 0, -1, -1});
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      std::string id = identifier();
      if (id == "t") return push({Op::Var, 0, 0, -1, -1});
      if (id == "exp" || id == "log") {
        expect('(');
        std::int32_t arg = expr();
        expect(')');
        return push({id == "exp" ? Op::Exp : Op::Log, 0, 0, arg, -1});
      }
      if (id == "min" || id == "max") {
        expect('(');
        std::int32_t x = expr();
        expect(',');
        std::int32_t y = expr();
        expect(')');
        return push({id == "min" ? Op::Min : Op::Max, 0, 0, x, y});
      }
      if (id == "chi") {
        expect('(');
        double a = signed_number();
        expect(',');
        double b = signed_number();
        expect(')');
        if (!(a < b)) throw ParseError("chi(a,b) requires a < b", start);
        return push({Op::Chi, a, b, -1, -1});
      }
      throw ParseError("unknown identifier '" + id + "'", start);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  double signed_number() {
    if (accept('-')) return -number();
    accept('+');
    skip_ws();
    if (src_.substr(pos_, 3) == "inf") {
      pos_ += 3;
      return std::numeric_limits<double>::infinity();
    }
    return number();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Expression out_;
};

Expression Expression::parse(std::string_view src) { return ExpressionParser(src).run(); }

Expression Expression::constant(double c) {
  Expression e;
  e.nodes_.push_back({Op::Num, c, 0, -1, -1});
  e.root_ = 0;
  return e;
}

double Expression::eval(std::int32_t idx, double t) const {
  const Node& n = nodes_[static_cast<std::size_t>(idx)];
  switch (n.op) {
    case Op::Var:
      return t;
    case Op::Num:
      return n.a;
    case Op::Neg:
      return -eval(n.lhs, t);
    case Op::Add:
      return eval(n.lhs, t) + eval(n.rhs, t);
    case Op::Sub:
      return eval(n.lhs, t) - eval(n.rhs, t);
    case Op::Mul: {
      double x = eval(n.lhs, t);
      double y = eval(n.rhs, t);
      // 0 * inf = 0
      if (x == 0.0 || y == 0.0) return 0.0;
      return x * y;
    }
    case Op::Div:
      return eval(n.lhs, t) / eval(n.rhs, t);
    case Op::Pow:
      return std::pow(eval(n.lhs, t), n.a);
    case Op::Exp:
      return std::exp(eval(n.lhs, t));
    case Op::Log:
      return std::log(eval(n.lhs, t));
    case Op::Min:
      return std::min(eval(n.lhs, t), eval(n.rhs, t));
    case Op::Max:
      return std::max(eval(n.lhs, t), eval(n.rhs, t));
    case Op::Chi:
      return (t > n.a && t < n.b) ? 1.0 : 0.0;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

void Expression::print(std::int32_t idx, std::string& out) const {
  const Node& n = nodes_[static_cast<std::size_t>(idx)];
  auto binary = [&](const char* op) {
    out += '(';
    print(n.lhs, out);
    out += op;
    print(n.rhs, out);
    out += ')';
  };
  auto call = [&](const char* name) {
    out += name;
    out += '(';
    print(n.lhs, out);
    if (n.rhs >= 0) {
      out += ',';
      print(n.rhs, out);
    }
    out += ')';
  };
  switch (n.op) {
    case Op::Var:
      out += 't';
      break;
    case Op::Num:
      if (n.a < 0) {
        out += "(-" + format_double(-n.a) + ")";
      } else {
        out += format_double(n.a);
      }
      break;
    case Op::Neg:
      out += "(-";
      print(n.lhs, out);
      out += ')';
      break;
    case Op::Add:
      binary("+");
      break;
    case Op::Sub:
      binary("-");
      break;
    case Op::Mul:
      binary("*");
      break;
    case Op::Div:
      binary("/");
      break;
    case Op::Pow:
      out += '(';
      print(n.lhs, out);
      out += '^';
      out += format_double(n.a);
      out += ')';
      break;
    case Op::Exp:
      call("exp");
      break;
    case Op::Log:
      call("log");
      break;
    case Op::Min:
      call("min");
      break;
    case Op::Max:
      call("max");
      break;
    case Op::Chi:
      out += "chi(" + format_double(n.a) + "," + format_double(n.b) + ")";
      break;
  }
}

std::string Expression::to_string() const {
  std::string out;
  if (root_ >= 0) print(root_, out);
  return out;
}

bool Expression::nonsmooth() const {
  return std::any_of(nodes_.begin(), nodes_.end(), [](const Node& n) {
    return n.op == Op::Chi || n.op == Op::Min || n.op == Op::Max;
  });
}

std::vector<double> Expression::breakpoints() const {
  std::vector<double> pts;
  for (const Node& n : nodes_) {
    if (n.op != Op::Chi) continue;
    for (double x : {n.a, n.b}) {
      if (x > 0 && std::isfinite(x)) pts.push_back(x);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<double> Expression::singularities() const {
  bool at_zero = std::any_of(nodes_.begin(), nodes_.end(), [](const Node& n) {
    return (n.op == Op::Pow && n.a < 0) || n.op == Op::Log || n.op == Op::Div;
  });
  return at_zero ? std::vector<double>{0.0} : std::vector<double>{};
}

}  // namespace morrey

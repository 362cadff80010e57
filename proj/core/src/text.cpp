#include "bipara/text.hpp"

#include <cctype>
#include <charconv>
#include <climits>
#include <cmath>

#include "bipara/errors.hpp"
#include "bipara/number_format.hpp"

namespace bipara {

SyntaxError::SyntaxError(std::size_t column, std::vector<std::string> expected,
                         const std::string& found)
    : Error([&] {
        std::string msg = "syntax error at column " + std::to_string(column) + ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
          if (i != 0) msg += i + 1 == expected.size() ? " or " : ", ";
          msg += expected[i];
        }
        return msg + ", found " + found;
      }()),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const CoordinateChart& chart) : text_(text), chart_(chart) {}

  Expr parse_all() {
    Expr e = expression();
    skip_space();
    if (!at_end()) fail({"operator", "end of input"});
    return e;
  }

 private:
  std::string_view text_;
  const CoordinateChart& chart_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string found() const {
    if (at_end()) return "end of input";
    return "'" + std::string(1, text_[pos_]) + "'";
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(pos_ + 1, std::move(expected), found());
  }

  Expr expression() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(Expr::negate(term()));
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms.front() : Expr::sum(std::move(terms));
  }

  Expr term() {
    Expr lhs = factor();
    std::vector<Expr> factors{lhs};
    for (;;) {
      if (accept('*')) {
        factors.push_back(factor());
      } else if (accept('/')) {
        Expr num = factors.size() == 1 ? factors.front() : Expr::product(std::move(factors));
        factors = {Expr::quotient(num, factor())};
      } else {
        break;
      }
    }
    return factors.size() == 1 ? factors.front() : Expr::product(std::move(factors));
  }

  Expr factor() {
    if (accept('-')) return Expr::negate(factor());
    Expr base = atom();
    if (accept('^')) return Expr::power(base, integer_exponent());
    return base;
  }

  int integer_exponent() {
    skip_space();
    const std::size_t start = pos_;
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (digits == pos_) {
      pos_ = start;
      fail({"integer exponent"});
    }
    long value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, value);
    if (ec != std::errc() || value > INT_MAX) {
      pos_ = start;
      fail({"integer exponent in int range"});
    }
    if (value == 0) {
      pos_ = start;
      fail({"nonzero integer exponent"});
    }
    return static_cast<int>(negative ? -value : value);
  }

  Expr atom() {
    skip_space();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Expr inner = expression();
      if (!accept(')')) fail({"')'", "operator"});
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail({"number", "identifier", "'j'", "'('", "'-'"});
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (peek() == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) {
      pos_ = start;
      fail({"number"});
    }
    if (peek() == 'e' || peek() == 'E') {
      const std::size_t mark = pos_;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (digits() == 0) {
        pos_ = mark + 1;
        fail({"exponent digits"});
      }
    }
    double value = 0.0;
    if (!parse_double(text_.substr(start, pos_ - start), value)) {
      pos_ = start;
      fail({"number"});
    }
    return Expr::constant(value);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
    const std::string_view letters = text_.substr(start, pos_ - start);
    const std::size_t digit_start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    const std::string_view digits = text_.substr(digit_start, pos_ - digit_start);
    const std::string name(text_.substr(start, pos_ - start));

    if (digits.empty()) {
      if (letters == "j") return Expr::constant(pc::j);
      for (Function f : {Function::exp, Function::ln, Function::sin, Function::cos}) {
        if (letters == to_string(f)) {
          if (!accept('(')) fail({"'(' after " + name});
          Expr arg = expression();
          if (!accept(')')) fail({"')'", "operator"});
          return Expr::apply(f, arg);
        }
      }
      throw UnknownVariable("unknown identifier '" + name + "' at column " +
                            std::to_string(start + 1));
    }

    CoordKind kind;
    if (letters == "z") {
      kind = CoordKind::z;
    } else if (letters == "zb") {
      kind = CoordKind::zbar;
    } else {
      throw UnknownVariable("unknown variable '" + name + "' at column " +
                            std::to_string(start + 1));
    }
    long index = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    const Coord coord{kind, ec == std::errc() && index <= INT_MAX ? static_cast<int>(index) : 0};
    if (!chart_.contains(coord)) {
      throw IndexOutOfRange("variable '" + name + "' is outside the chart (n = " +
                            std::to_string(chart_.n()) + ")");
    }
    return Expr::variable(coord);
  }
};

// Binding strength of the printed form; larger binds tighter.
enum Level : int { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

std::string constant_text(ParaComplex v) {
  if (v.is_real()) return format_double(v.a());
  if (v.a() == 0.0) {
    if (v.b() == 1.0) return "j";
    return "(" + format_double(v.b()) + "*j)";
  }
  std::string s = "(" + format_double(v.a());
  s += v.b() < 0 ? "-" + format_double(-v.b()) : "+" + format_double(v.b());
  return s + "*j)";
}

int level(const Expr& e) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Constant>) {
          return n.value.is_real() && std::signbit(n.value.a()) ? kUnary : kAtom;
        } else if constexpr (std::is_same_v<T, node::Sum>) {
          return kSum;
        } else if constexpr (std::is_same_v<T, node::Product> ||
                             std::is_same_v<T, node::Quotient>) {
          return kProduct;
        } else if constexpr (std::is_same_v<T, node::Power>) {
          return kPower;
        } else if constexpr (std::is_same_v<T, node::Negate>) {
          // "-a*b" reads back as (-a)*b, so a negated product prints at
          // product level.
          return level(n.child) >= kUnary ? kUnary : kProduct;
        } else {
          return kAtom;
        }
      },
      e.node());
}

std::string print(const Expr& e);

std::string print_at(const Expr& e, int min_level) {
  std::string s = print(e);
  return level(e) < min_level ? "(" + s + ")" : s;
}

std::string print(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Constant>) {
          return constant_text(n.value);
        } else if constexpr (std::is_same_v<T, node::Variable>) {
          return to_string(n.coord);
        } else if constexpr (std::is_same_v<T, node::Sum>) {
          std::string s;
          for (std::size_t i = 0; i < n.terms.size(); ++i) {
            const Expr& t = n.terms[i];
            if (i == 0) {
              s += print_at(t, kSum);
            } else if (t.template is<node::Negate>()) {
              s += "-" + print_at(t.template as<node::Negate>()->child, kProduct);
            } else if (level(t) == kUnary) {
              // negative real constant: already starts with '-'
              s += print(t);
            } else {
              s += "+" + print_at(t, kSum);
            }
          }
          return s;
        } else if constexpr (std::is_same_v<T, node::Product>) {
          std::string s;
          for (std::size_t i = 0; i < n.factors.size(); ++i) {
            if (i != 0) s += "*";
            s += i == 0 ? print_at(n.factors[i], kProduct) : print_at(n.factors[i], kUnary);
          }
          return s;
        } else if constexpr (std::is_same_v<T, node::Quotient>) {
          return print_at(n.numerator, kProduct) + "/" + print_at(n.denominator, kUnary);
        } else if constexpr (std::is_same_v<T, node::Power>) {
          return print_at(n.base, kAtom) + "^" + std::to_string(n.exponent);
        } else if constexpr (std::is_same_v<T, node::Apply>) {
          return to_string(n.function) + "(" + print(n.argument) + ")";
        } else {
          return "-" + print_at(n.child, kProduct);
        }
      },
      e.node());
}

}  // namespace

Expr parse(std::string_view text, const CoordinateChart& chart) {
  return Parser(text, chart).parse_all();
}

std::string to_text(const Expr& e) { return print(e); }

}  // namespace bipara

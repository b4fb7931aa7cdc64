#include "subseries/spec_parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <vector>

namespace subseries {

namespace {

// ---------------------------------------------------------------------------
// Formula AST

struct Node {
  enum class Op { number, var, add, sub, mul, div, pow, neg, log, exp, sqrt, abs, sin, cos } op;
  double value = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;

  double eval(double n) const {
    switch (op) {
      case Op::number: return value;
      case Op::var: return n;
      case Op::add: return lhs->eval(n) + rhs->eval(n);
      case Op::sub: return lhs->eval(n) - rhs->eval(n);
      case Op::mul: return lhs->eval(n) * rhs->eval(n);
      case Op::div: return lhs->eval(n) / rhs->eval(n);
      case Op::pow: return std::pow(lhs->eval(n), rhs->eval(n));
      case Op::neg: return -lhs->eval(n);
      case Op::log: return std::log(lhs->eval(n));
      case Op::exp: return std::exp(lhs->eval(n));
      case Op::sqrt: return std::sqrt(lhs->eval(n));
      case Op::abs: return std::abs(lhs->eval(n));
      case Op::sin: return std::sin(lhs->eval(n));
      case Op::cos: return std::cos(lhs->eval(n));
    }
    return 0.0;
  }
};

using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0) {
  return std::make_shared<const Node>(Node{op, value, std::move(lhs), std::move(rhs)});
}

class FormulaParser {
 public:
  FormulaParser(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  NodePtr parse() {
    auto node = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SpecError(base_ + pos_, msg); }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expression() {
    auto node = product();
    for (;;) {
      if (accept('+')) node = make(Node::Op::add, node, product());
      else if (accept('-')) node = make(Node::Op::sub, node, product());
      else return node;
    }
  }

  NodePtr product() {
    auto node = unary();
    for (;;) {
      if (accept('*')) node = make(Node::Op::mul, node, unary());
      else if (accept('/')) node = make(Node::Op::div, node, unary());
      else return node;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Node::Op::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    auto base = primary();
    if (accept('^')) return make(Node::Op::pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto node = expression();
      if (!accept(')')) fail("expected ')'");
      return node;
    }
    if ((c >= '0' && c <= '9') || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "n") return make(Node::Op::var);
      static const std::pair<std::string_view, Node::Op> functions[] = {
          {"log", Node::Op::log}, {"ln", Node::Op::log},   {"exp", Node::Op::exp}, {"sqrt", Node::Op::sqrt},
          {"abs", Node::Op::abs}, {"sin", Node::Op::sin}, {"cos", Node::Op::cos}};
      for (const auto& [fname, op] : functions) {
        if (word == fname) {
          if (!accept('(')) fail("expected '(' after " + std::string(word));
          auto arg = expression();
          if (!accept(')')) fail("expected ')'");
          return make(op, arg);
        }
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(word) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' || text_[pos_] == 'e' ||
            text_[pos_] == 'E' ||
            ((text_[pos_] == '-' || text_[pos_] == '+') && pos_ > start &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
      ++pos_;
    double v = 0.0;
    const auto* first = text_.data() + start;
    const auto* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      pos_ = start;
      fail("malformed number");
    }
    return make(Node::Op::number, nullptr, nullptr, v);
  }

  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Spec scalars

double parse_real(std::string_view text, std::size_t offset, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw SpecError(offset, std::string("expected a real number for ") + what);
  return v;
}

Index parse_int(std::string_view text, std::size_t offset, const char* what) {
  Index v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw SpecError(offset, std::string("expected an integer for ") + what);
  return v;
}

struct Tagged {
  std::string_view tag;
  std::string_view rest;
  std::size_t rest_offset = 0;
  bool has_colon = false;
};

Tagged split_tag(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return {text, {}, text.size(), false};
  return {text.substr(0, colon), text.substr(colon + 1), colon + 1, true};
}

template <class Make>
auto wrap_domain(std::size_t offset, Make&& make) {
  try {
    return make();
  } catch (const std::domain_error& e) {
    throw SpecError(offset, e.what());
  } catch (const std::invalid_argument& e) {
    throw SpecError(offset, e.what());
  }
}

bool is_series_tag(std::string_view tag) {
  return tag == "harmonic" || tag == "pseries" || tag == "geometric" || tag == "const" || tag == "expr";
}

}  // namespace

TermRule compile_formula(std::string_view formula, std::size_t base_offset) {
  NodePtr root = FormulaParser(formula, base_offset).parse();
  return [root](Index n) { return root->eval(static_cast<double>(n)); };
}

MonotoneSeries parse_series(std::string_view text) {
  const auto t = split_tag(text);
  auto need_arg = [&] {
    if (!t.has_colon || t.rest.empty()) throw SpecError(t.rest_offset, "'" + std::string(t.tag) + "' needs an argument");
  };
  if (t.tag == "harmonic") {
    if (t.has_colon) throw SpecError(t.tag.size(), "'harmonic' takes no argument");
    return MonotoneSeries::harmonic();
  }
  if (t.tag == "pseries") {
    need_arg();
    const double p = parse_real(t.rest, t.rest_offset, "pseries exponent");
    return wrap_domain(t.rest_offset, [&] { return MonotoneSeries::pseries(p); });
  }
  if (t.tag == "geometric") {
    need_arg();
    const double r = parse_real(t.rest, t.rest_offset, "geometric ratio");
    return wrap_domain(t.rest_offset, [&] { return MonotoneSeries::geometric(r); });
  }
  if (t.tag == "const") {
    need_arg();
    const double c = parse_real(t.rest, t.rest_offset, "constant");
    return wrap_domain(t.rest_offset, [&] { return MonotoneSeries::constant(c); });
  }
  if (t.tag == "expr") {
    need_arg();
    return MonotoneSeries::from_rule(std::string(text), compile_formula(t.rest, t.rest_offset));
  }
  throw SpecError(0, "unknown series '" + std::string(t.tag) + "'");
}

Subsequence parse_subsequence(std::string_view text) {
  const auto t = split_tag(text);
  auto no_arg = [&](std::string_view tag) {
    if (t.has_colon) throw SpecError(tag.size(), "'" + std::string(tag) + "' takes no argument");
  };
  auto need_arg = [&] {
    if (!t.has_colon || t.rest.empty()) throw SpecError(t.rest_offset, "'" + std::string(t.tag) + "' needs an argument");
  };
  if (t.tag == "id") return no_arg("id"), Subsequence::identity();
  if (t.tag == "pow2") return no_arg("pow2"), Subsequence::powers_of_two();
  if (t.tag == "squares") return no_arg("squares"), Subsequence::squares();
  if (t.tag == "cubes") return no_arg("cubes"), Subsequence::cubes();
  if (t.tag == "geom") {
    need_arg();
    const Index r = parse_int(t.rest, t.rest_offset, "geom ratio");
    return wrap_domain(t.rest_offset, [&] { return Subsequence::geometric(r); });
  }
  if (t.tag == "poly") {
    need_arg();
    const double beta = parse_real(t.rest, t.rest_offset, "poly exponent");
    return wrap_domain(t.rest_offset, [&] { return Subsequence::polynomial(beta); });
  }
  if (t.tag == "affine") {
    need_arg();
    const auto colon = t.rest.find(':');
    if (colon == std::string_view::npos) throw SpecError(t.rest_offset + t.rest.size(), "affine needs <a>:<b>");
    const Index a = parse_int(t.rest.substr(0, colon), t.rest_offset, "affine slope");
    const Index b = parse_int(t.rest.substr(colon + 1), t.rest_offset + colon + 1, "affine offset");
    return wrap_domain(t.rest_offset, [&] { return Subsequence::affine(a, b); });
  }
  if (t.tag == "nodigit") {
    need_arg();
    const auto colon = t.rest.find(':');
    if (colon == std::string_view::npos) throw SpecError(t.rest_offset + t.rest.size(), "nodigit needs <d>:<base>");
    DigitRestriction restriction;
    restriction.base = static_cast<int>(parse_int(t.rest.substr(colon + 1), t.rest_offset + colon + 1, "base"));
    std::string_view digits = t.rest.substr(0, colon);
    std::size_t offset = t.rest_offset;
    while (true) {
      const auto comma = digits.find(',');
      const auto item = digits.substr(0, comma);
      restriction.forbidden.push_back(static_cast<int>(parse_int(item, offset, "forbidden digit")));
      if (comma == std::string_view::npos) break;
      digits.remove_prefix(comma + 1);
      offset += comma + 1;
    }
    return wrap_domain(t.rest_offset, [&] { return Subsequence::digit_restricted(restriction); });
  }
  if (t.tag == "list") {
    need_arg();
    std::string_view body = t.rest;
    if (body.front() != '[') throw SpecError(t.rest_offset, "list needs '['");
    if (body.back() != ']') throw SpecError(t.rest_offset + body.size(), "list needs a closing ']'");
    body = body.substr(1, body.size() - 2);
    std::size_t offset = t.rest_offset + 1;
    std::vector<Index> values;
    while (!body.empty()) {
      const auto comma = body.find(',');
      values.push_back(parse_int(body.substr(0, comma), offset, "list entry"));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
      offset += comma + 1;
    }
    if (values.empty()) throw SpecError(t.rest_offset + 1, "empty list");
    return wrap_domain(t.rest_offset, [&] { return Subsequence::explicit_list(std::move(values)); });
  }
  throw SpecError(0, "unknown subsequence '" + std::string(t.tag) + "'");
}

std::variant<MonotoneSeries, Subsequence> parse_spec(std::string_view text) {
  if (is_series_tag(split_tag(text).tag)) return parse_series(text);
  return parse_subsequence(text);
}

}  // namespace subseries

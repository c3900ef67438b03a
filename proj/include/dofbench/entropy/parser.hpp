#pragma once

#include "dofbench/entropy/expression.hpp"
#include "dofbench/rational.hpp"

#include <cctype>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dofbench::entropy {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::invalid_argument(message + " at column " + std::to_string(position + 1)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

enum class Relation { less_equal, greater_equal, equal };

/// One parsed line, normalized to `expression (>= | =) 0`.
struct Statement {
  EntropyExpression expression;
  Relation relation = Relation::greater_equal;
};

namespace detail {

/// Recursive-descent parser for
///   statement := expr ('<=' | '>=' | '=') expr
///   expr      := ['+'|'-'] term (('+'|'-') term)* | '0'
///   term      := [rational '*'] atom
///   atom      := 'H(' names ['|' names] ')' | 'I(' names ';' names ['|' names] ')'
class Parser {
 public:
  Parser(std::string_view text, GroundSet& ground, bool extend) : text_(text), ground_(ground), extend_(extend) {}

  EntropyExpression expression_only() {
    auto e = expression();
    skip_space();
    if (!at_end()) fail("unexpected trailing input");
    return e;
  }

  Statement statement() {
    auto lhs = expression();
    skip_space();
    Relation relation;
    if (consume("<=")) {
      relation = Relation::less_equal;
    } else if (consume(">=")) {
      relation = Relation::greater_equal;
    } else if (consume("=")) {
      relation = Relation::equal;
    } else {
      fail("expected '<=', '>=' or '='");
    }
    auto rhs = expression();
    skip_space();
    if (!at_end()) fail("unexpected trailing input");
    const GroundSet& g = ground_;
    lhs = lhs.rebased(g);
    rhs = rhs.rebased(g);
    if (relation == Relation::less_equal) return {rhs - lhs, Relation::greater_equal};
    return {lhs - rhs, relation};
  }

 private:
  EntropyExpression expression() {
    EntropyExpression acc{ground_};
    skip_space();
    bool first = true;
    while (true) {
      skip_space();
      Rational sign = 1;
      if (consume("+")) {
      } else if (consume("-")) {
        sign = -1;
      } else if (!first) {
        break;
      }
      skip_space();
      if (first && peek_literal_zero()) {
        ++pos_;
        first = false;
        continue;
      }
      auto t = term();
      acc = acc.rebased(ground_);
      acc += sign * t.rebased(ground_);
      first = false;
    }
    return acc;
  }

  bool peek_literal_zero() const {
    if (at_end() || text_[pos_] != '0') return false;
    const std::size_t next = pos_ + 1;
    return next == text_.size() || !(std::isdigit(static_cast<unsigned char>(text_[next])) || text_[next] == '/' ||
                                     text_[next] == '*');
  }

  EntropyExpression term() {
    Rational coefficient = 1;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t start = pos_;
      while (!at_end() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) ++pos_;
      try {
        coefficient = parse_rational(text_.substr(start, pos_ - start));
      } catch (const std::invalid_argument&) {
        pos_ = start;
        fail("malformed coefficient");
      }
      skip_space();
      if (!consume("*")) fail("expected '*' after coefficient");
      skip_space();
    }
    return coefficient * atom();
  }

  EntropyExpression atom() {
    if (consume("H(")) {
      const auto a = names();
      SubsetMask c = 0;
      if (consume("|")) c = names();
      expect(")");
      return EntropyExpression::conditional_entropy(ground_, a, c);
    }
    if (consume("I(")) {
      const auto a = names();
      expect(";");
      const auto b = names();
      SubsetMask c = 0;
      if (consume("|")) c = names();
      expect(")");
      return EntropyExpression::mutual_information(ground_, a, b, c);
    }
    fail("expected 'H(' or 'I('");
  }

  SubsetMask names() {
    SubsetMask mask = 0;
    do {
      skip_space();
      const std::size_t start = pos_;
      if (at_end() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        fail("expected variable name");
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      std::optional<std::size_t> index = ground_.find(name);
      if (!index) {
        if (!extend_) {
          pos_ = start;
          fail("unknown variable '" + name + "'");
        }
        try {
          index = ground_.add(name);
        } catch (const std::invalid_argument& e) {
          pos_ = start;
          fail(e.what());
        }
      }
      mask |= SubsetMask{1} << *index;
      skip_space();
    } while (consume(","));
    return mask;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  bool consume(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view token) {
    if (!consume(token)) fail("expected '" + std::string(token) + "'");
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  std::string_view text_;
  GroundSet& ground_;
  bool extend_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Ground set is taken from first appearance of each name.
inline EntropyExpression parse_expression(std::string_view text) {
  GroundSet ground;
  auto e = detail::Parser(text, ground, true).expression_only();
  return e.rebased(ground);
}

/// Names must belong to the declared ground set.
inline EntropyExpression parse_expression(std::string_view text, const GroundSet& declared) {
  GroundSet ground = declared;
  return detail::Parser(text, ground, false).expression_only();
}

/// A target `expr >= 0` plus equality constraints over one ground set.
struct InequalityProblem {
  GroundSet ground;
  EntropyExpression target;
  std::vector<EntropyExpression> constraints;
};

/// Line-oriented inequality file: one target statement, constraint lines
/// prefixed `given:`, an optional leading `vars:` declaration, `#` comments.
inline InequalityProblem parse_inequality_file(std::istream& in) {
  GroundSet ground;
  bool declared = false;
  std::optional<EntropyExpression> target;
  std::vector<EntropyExpression> constraints;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string_view view(line);
    while (!view.empty() && std::isspace(static_cast<unsigned char>(view.front()))) view.remove_prefix(1);
    while (!view.empty() && std::isspace(static_cast<unsigned char>(view.back()))) view.remove_suffix(1);
    if (view.empty()) continue;
    const auto where = "line " + std::to_string(line_number) + ": ";
    try {
      if (view.starts_with("vars:")) {
        if (declared || !ground.names().empty()) throw ParseError("'vars:' must be the first statement", 0);
        view.remove_prefix(5);
        std::string names(view);
        std::size_t start = 0;
        while (start <= names.size()) {
          auto comma = names.find(',', start);
          if (comma == std::string::npos) comma = names.size();
          std::string name = names.substr(start, comma - start);
          name.erase(0, name.find_first_not_of(" \t"));
          name.erase(name.find_last_not_of(" \t") + 1);
          if (name.empty()) throw ParseError("empty variable name in 'vars:'", start);
          ground.add(name);
          start = comma + 1;
        }
        declared = true;
        continue;
      }
      const bool given = view.starts_with("given:");
      if (given) view.remove_prefix(6);
      auto statement = detail::Parser(view, ground, !declared).statement();
      if (given) {
        if (statement.relation != Relation::equal) throw ParseError("constraints must be equalities", 0);
        constraints.push_back(std::move(statement.expression));
      } else {
        if (statement.relation == Relation::equal) throw ParseError("target must be an inequality", 0);
        if (target) throw ParseError("more than one target statement", 0);
        target = std::move(statement.expression);
      }
    } catch (const ParseError& e) {
      throw std::invalid_argument(where + e.what());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + e.what());
    }
  }
  if (!target) throw std::invalid_argument("no target statement");
  InequalityProblem problem{ground, target->rebased(ground), {}};
  for (const auto& c : constraints) problem.constraints.push_back(c.rebased(ground));
  return problem;
}

}  // namespace dofbench::entropy

#include "expzero/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace expzero {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket, RBracket, End };

struct Token {
  Tok type;
  std::string text;
  SourceSpan span;
  std::size_t line;
  std::size_t column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::End: return "end of input";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    unsigned char ch = static_cast<unsigned char>(s[i]);
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      advance(1);
      continue;
    }
    std::size_t start = i, l0 = line, c0 = col;
    if (std::isdigit(ch)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      advance(j - i);
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), {start, i}, l0, c0});
      continue;
    }
    if (std::isalpha(ch) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      advance(j - i);
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), {start, i}, l0, c0});
      continue;
    }
    Tok t;
    switch (ch) {
      case '+': t = Tok::Plus; break;
      case '-': t = Tok::Minus; break;
      case '*': t = Tok::Star; break;
      case '/': t = Tok::Slash; break;
      case '^': t = Tok::Caret; break;
      case '(': t = Tok::LParen; break;
      case ')': t = Tok::RParen; break;
      case '[': t = Tok::LBracket; break;
      case ']': t = Tok::RBracket; break;
      default: {
        std::string shown = std::isprint(ch) ? std::string(1, static_cast<char>(ch))
                                             : "byte 0x" + std::to_string(static_cast<int>(ch));
        throw ParseError(ParseError::Kind::Lexical, "unexpected character " + shown, l0, c0,
                         {start, start + 1});
      }
    }
    advance(1);
    out.push_back({t, std::string(1, static_cast<char>(ch)), {start, i}, l0, c0});
  }
  out.push_back({Tok::End, "", {s.size(), s.size()}, line, col});
  return out;
}

class Parser {
 public:
  Parser(std::string_view input, const ParseOptions& options)
      : input_(input), options_(options), toks_(tokenize(input)) {
    if (options_.declared_vars)
      declared_.insert(options_.declared_vars->begin(), options_.declared_vars->end());
  }

  SourceExpr run() {
    SourceExpr e = expr(false);
    if (peek().type == Tok::RParen) fail(ParseError::Kind::UnbalancedParen, "unbalanced ')'", peek());
    if (peek().type != Tok::End)
      fail(ParseError::Kind::Syntax, std::string("unexpected ") + describe(peek().type), peek());
    e.span = {0, input_.size()};
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(ParseError::Kind kind, const std::string& msg, const Token& at) {
    throw ParseError(kind, msg, at.line, at.column, at.span);
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.depth_ > p.options_.max_depth)
        p.fail(ParseError::Kind::Syntax, "expression nested too deeply", p.peek());
    }
    ~DepthGuard() { --p.depth_; }
    Parser& p;
  };

  static SourceExpr node(SourceExpr::Kind k, const Token& at) {
    SourceExpr e;
    e.kind = k;
    e.span = at.span;
    e.line = at.line;
    e.column = at.column;
    return e;
  }

  static SourceExpr binary(SourceExpr::Kind k, SourceExpr lhs, SourceExpr rhs) {
    SourceExpr e;
    e.kind = k;
    e.span = {lhs.span.begin, rhs.span.end};
    e.line = lhs.line;
    e.column = lhs.column;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
  }

  SourceExpr expr(bool constant) {
    DepthGuard guard(*this);
    SourceExpr lhs = term(constant);
    while (peek().type == Tok::Plus || peek().type == Tok::Minus) {
      auto kind = take().type == Tok::Plus ? SourceExpr::Kind::Add : SourceExpr::Kind::Sub;
      lhs = binary(kind, std::move(lhs), term(constant));
    }
    return lhs;
  }

  SourceExpr term(bool constant) {
    SourceExpr lhs = unary(constant);
    for (;;) {
      if (peek().type == Tok::Star) {
        take();
        lhs = binary(SourceExpr::Kind::Mul, std::move(lhs), unary(constant));
      } else if (peek().type == Tok::Slash) {
        if (!constant)
          fail(ParseError::Kind::Division,
               "division is only allowed in rational literals like 3/4 or x1/2", peek());
        take();
        lhs = binary(SourceExpr::Kind::Div, std::move(lhs), unary(constant));
      } else {
        return lhs;
      }
    }
  }

  SourceExpr unary(bool constant) {
    DepthGuard guard(*this);
    if (peek().type == Tok::Minus) {
      Token t = take();
      SourceExpr inner = unary(constant);
      SourceExpr e = node(SourceExpr::Kind::Neg, t);
      e.span.end = inner.span.end;
      e.children.push_back(std::move(inner));
      return e;
    }
    return factor(constant);
  }

  unsigned natural(const char* what) {
    if (peek().type != Tok::Number) fail(ParseError::Kind::Syntax, std::string("expected ") + what, peek());
    Token t = take();
    if (t.text.size() > 9) fail(ParseError::Kind::Syntax, "integer too large", t);
    return static_cast<unsigned>(std::stoul(t.text));
  }

  SourceExpr factor(bool constant) {
    SourceExpr b = base(constant);
    if (peek().type == Tok::Caret) {
      take();
      Token at = peek();
      unsigned k = natural("a natural exponent after '^'");
      if (k > 64) fail(ParseError::Kind::Syntax, "exponent larger than 64", at);
      SourceExpr e;
      e.kind = SourceExpr::Kind::Pow;
      e.power = k;
      e.span = {b.span.begin, at.span.end};
      e.line = b.line;
      e.column = b.column;
      e.children.push_back(std::move(b));
      return e;
    }
    return b;
  }

  // Optional "/ nat" suffix of a literal or variable; returns 1 if absent.
  unsigned denominator_suffix(bool constant, SourceSpan& span) {
    if (peek().type != Tok::Slash) return 1;
    // In constant context '/' is general division, handled by term().
    if (constant && toks_[pos_ + 1].type != Tok::Number) return 1;
    Token slash = take();
    if (peek().type != Tok::Number)
      fail(ParseError::Kind::Division, "expected a natural denominator after '/'", peek());
    Token d = peek();
    unsigned den = natural("a denominator");
    if (den == 0) fail(ParseError::Kind::Division, "zero denominator", d);
    (void)slash;
    span.end = d.span.end;
    return den;
  }

  SourceExpr paren_body(bool constant, const Token& open) {
    SourceExpr inner = expr(constant);
    if (peek().type != Tok::RParen) {
      if (peek().type == Tok::End)
        fail(ParseError::Kind::UnbalancedParen, "unbalanced '(' : expected ')'", peek());
      fail(ParseError::Kind::Syntax, std::string("expected ')' but found ") + describe(peek().type), peek());
    }
    Token close = take();
    (void)open;
    return inner;
  }

  SourceExpr base(bool constant) {
    const Token& t = peek();
    switch (t.type) {
      case Tok::LParen: {
        Token open = take();
        SourceExpr inner = paren_body(constant, open);
        inner.span = {open.span.begin, toks_[pos_ - 1].span.end};
        inner.line = open.line;
        inner.column = open.column;
        return inner;
      }
      case Tok::Number: {
        Token num = take();
        if (num.text.size() > 30) fail(ParseError::Kind::Syntax, "integer literal too long", num);
        SourceExpr e = node(SourceExpr::Kind::Number, num);
        Rational v(mpz_class(num.text));
        if (constant && peek().type == Tok::Slash) {
          e.value = v;  // general division in constant context
          return e;
        }
        unsigned den = denominator_suffix(constant, e.span);
        e.value = v / Rational(den);
        e.value.canonicalize();
        return e;
      }
      case Tok::Ident: return identifier(constant);
      case Tok::RParen: fail(ParseError::Kind::UnbalancedParen, "unbalanced ')'", t);
      case Tok::End: fail(ParseError::Kind::Syntax, "unexpected end of input", t);
      default: fail(ParseError::Kind::Syntax, std::string("unexpected ") + describe(t.type), t);
    }
  }

  SourceExpr identifier(bool constant) {
    Token id = take();
    if (id.text == "exp") {
      if (constant) fail(ParseError::Kind::Syntax, "exp is not allowed inside a log argument", id);
      if (peek().type != Tok::LParen) fail(ParseError::Kind::Syntax, "exp requires parentheses", peek());
      Token open = take();
      SourceExpr inner = paren_body(false, open);
      SourceExpr e = node(SourceExpr::Kind::Exp, id);
      e.span.end = toks_[pos_ - 1].span.end;
      e.children.push_back(std::move(inner));
      return e;
    }
    if (id.text == "log") {
      SourceExpr e = node(SourceExpr::Kind::Log, id);
      if (peek().type == Tok::LBracket) {
        take();
        bool negative = false;
        if (peek().type == Tok::Minus) {
          take();
          negative = true;
        }
        long b = static_cast<long>(natural("a branch index"));
        e.branch = negative ? -b : b;
        if (peek().type != Tok::RBracket) fail(ParseError::Kind::Syntax, "expected ']'", peek());
        take();
      }
      if (peek().type != Tok::LParen) fail(ParseError::Kind::Syntax, "log requires parentheses", peek());
      Token open = take();
      SourceExpr inner = paren_body(true, open);
      e.span.end = toks_[pos_ - 1].span.end;
      e.children.push_back(std::move(inner));
      return e;
    }
    if (id.text == "i") {
      SourceExpr e = node(SourceExpr::Kind::Imaginary, id);
      return e;
    }
    if (constant) fail(ParseError::Kind::Syntax, "variables are not allowed inside a log argument", id);
    if (options_.declared_vars && !declared_.count(id.text))
      fail(ParseError::Kind::UnknownIdentifier, "unknown identifier '" + id.text + "'", id);
    SourceExpr var = node(SourceExpr::Kind::Variable, id);
    var.name = id.text;
    SourceSpan span = var.span;
    unsigned den = denominator_suffix(false, span);
    if (den == 1) return var;
    SourceExpr coeff = node(SourceExpr::Kind::Number, id);
    coeff.value = Rational(1, den);
    coeff.span = span;
    SourceExpr e = binary(SourceExpr::Kind::Mul, std::move(coeff), std::move(var));
    e.span = span;
    return e;
  }

  std::string_view input_;
  const ParseOptions& options_;
  std::vector<Token> toks_;
  std::set<std::string> declared_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

void collect(const SourceExpr& e, std::set<std::string>& out) {
  if (e.kind == SourceExpr::Kind::Variable) out.insert(e.name);
  for (const auto& c : e.children) collect(c, out);
}

std::pair<Scalar, Scalar> constant_ratio(const SourceExpr& e) {
  using K = SourceExpr::Kind;
  switch (e.kind) {
    case K::Number: return {Scalar(e.value), Scalar(1)};
    case K::Imaginary: return {Scalar(GaussQ::imaginary_unit()), Scalar(1)};
    case K::Log: {
      auto [n, d] = constant_ratio(e.children.at(0));
      return {Scalar::log(LogConstant(n, d, e.branch)), Scalar(1)};
    }
    case K::Neg: {
      auto [n, d] = constant_ratio(e.children.at(0));
      return {-n, d};
    }
    case K::Pow: {
      auto [n, d] = constant_ratio(e.children.at(0));
      Scalar pn(1), pd(1);
      for (unsigned k = 0; k < e.power; ++k) {
        pn *= n;
        pd *= d;
      }
      return {pn, pd};
    }
    case K::Add:
    case K::Sub:
    case K::Mul:
    case K::Div: {
      auto [a, b] = constant_ratio(e.children.at(0));
      auto [c, d] = constant_ratio(e.children.at(1));
      if (e.kind == K::Add) return {a * d + c * b, b * d};
      if (e.kind == K::Sub) return {a * d - c * b, b * d};
      if (e.kind == K::Mul) return {a * c, b * d};
      if (c.is_zero()) throw MalformedTermError("division by zero in a constant");
      return {a * d, b * c};
    }
    default: throw MalformedTermError("a constant was expected");
  }
}

}  // namespace

SourceExpr parse(std::string_view input, const ParseOptions& options) {
  Parser p(input, options);
  return p.run();
}

bool natural_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    std::size_t k = s.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(s[k - 1]))) --k;
    return std::make_pair(s.substr(0, k), s.substr(k));
  };
  auto [pa, na] = split(a);
  auto [pb, nb] = split(b);
  if (pa != pb) return pa < pb;
  // Compare digit suffixes numerically without overflow.
  auto strip = [](const std::string& d) {
    std::size_t k = 0;
    while (k + 1 < d.size() && d[k] == '0') ++k;
    return d.substr(k);
  };
  std::string sa = strip(na), sb = strip(nb);
  if (sa.size() != sb.size()) return sa.size() < sb.size();
  if (sa != sb) return sa < sb;
  return a < b;
}

std::vector<std::string> collect_variables(const SourceExpr& e) {
  std::set<std::string> names;
  collect(e, names);
  std::vector<std::string> out(names.begin(), names.end());
  std::sort(out.begin(), out.end(), natural_less);
  return out;
}

ExpPoly normalize(const SourceExpr& e, const VarList& vars) {
  using K = SourceExpr::Kind;
  switch (e.kind) {
    case K::Number: return ExpPoly::constant(vars, Scalar(e.value));
    case K::Imaginary: return ExpPoly::constant(vars, Scalar(GaussQ::imaginary_unit()));
    case K::Variable: {
      auto it = std::find(vars->begin(), vars->end(), e.name);
      if (it == vars->end()) throw ContextError("variable '" + e.name + "' is not in the context");
      return ExpPoly::variable(vars, static_cast<std::size_t>(it - vars->begin()));
    }
    case K::Add: return normalize(e.children.at(0), vars) + normalize(e.children.at(1), vars);
    case K::Sub: return normalize(e.children.at(0), vars) - normalize(e.children.at(1), vars);
    case K::Mul: return normalize(e.children.at(0), vars) * normalize(e.children.at(1), vars);
    case K::Neg: return -normalize(e.children.at(0), vars);
    case K::Pow: return normalize(e.children.at(0), vars).pow(e.power);
    case K::Exp: return ExpPoly::exp(normalize(e.children.at(0), vars));
    case K::Log: {
      auto [n, d] = constant_ratio(e.children.at(0));
      return ExpPoly::constant(vars, Scalar::log(LogConstant(n, d, e.branch)));
    }
    case K::Div: {
      ExpPoly num = normalize(e.children.at(0), vars);
      ExpPoly den = normalize(e.children.at(1), vars);
      auto c = den.as_constant();
      if (!c) throw MalformedTermError("division by a non-constant is not a ring operation");
      if (c->is_zero()) throw MalformedTermError("division by zero");
      return c->inverse() * num;
    }
  }
  throw MalformedTermError("unknown node");
}

ExpPoly parse_exppoly(std::string_view text, const std::optional<std::vector<std::string>>& vars) {
  ParseOptions opts;
  opts.declared_vars = vars;
  SourceExpr tree = parse(text, opts);
  VarList ctx = make_vars(vars ? *vars : collect_variables(tree));
  return normalize(tree, ctx);
}

Scalar parse_scalar(std::string_view text) {
  ParseOptions opts;
  opts.declared_vars = std::vector<std::string>{};
  SourceExpr tree = parse(text, opts);
  auto [n, d] = constant_ratio(tree);
  return n * d.inverse();
}

std::string dump(const SourceExpr& e) {
  using K = SourceExpr::Kind;
  auto kids = [&e](const char* head) {
    std::string s = std::string("(") + head;
    for (const auto& c : e.children) s += " " + dump(c);
    return s + ")";
  };
  switch (e.kind) {
    case K::Number: return e.value.get_str();
    case K::Imaginary: return "i";
    case K::Variable: return e.name;
    case K::Add: return kids("+");
    case K::Sub: return kids("-");
    case K::Mul: return kids("*");
    case K::Div: return kids("/");
    case K::Neg: return kids("neg");
    case K::Pow: return "(^ " + dump(e.children.at(0)) + " " + std::to_string(e.power) + ")";
    case K::Exp: return kids("exp");
    case K::Log: return e.branch == 0 ? kids("log") : kids(("log[" + std::to_string(e.branch) + "]").c_str());
  }
  return "?";
}

}  // namespace expzero

#include "bosefock/expr.hpp"

#include "bosefock/ladder.hpp"
#include "bosefock/linalg.hpp"
#include "bosefock/toeplitz.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace bosefock {

ParseError::ParseError(const std::string& detail, int line, int column)
    : std::runtime_error("parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + detail),
      line_(line),
      column_(column) {}

namespace {

enum class TokKind { ident, lparen, rparen, star, number, end };

struct Token {
  TokKind kind = TokKind::end;
  std::string text;
  cplx value{0.0, 0.0};
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= text_.size()) {
      tok.kind = TokKind::end;
      return tok;
    }
    const char c = text_[pos_];
    if (c == '(') {
      advance();
      tok.kind = TokKind::lparen;
      tok.text = "(";
      return tok;
    }
    if (c == ')') {
      advance();
      tok.kind = TokKind::rparen;
      tok.text = ")";
      return tok;
    }
    if (c == '*') {
      advance();
      tok.kind = TokKind::star;
      tok.text = "*";
      return tok;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        advance();
      }
      tok.kind = TokKind::ident;
      tok.text = text_.substr(start, pos_ - start);
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '+' || c == '-') {
      tok.kind = TokKind::number;
      tok.value = lex_complex(tok);
      return tok;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
  }

 private:
  void advance() {
    if (pos_ < text_.size()) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
  }

  // One floating literal starting at pos_; no whitespace allowed inside.
  double lex_double(const Token& at) {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) {
      throw ParseError("malformed number", at.line, column_);
    }
    for (const char* p = begin; p != end; ++p) advance();
    return v;
  }

  // "2", "-0.5", "1.5e-3", "2i", "1+2i", "1-2i".  The imaginary unit always
  // carries an explicit coefficient.
  cplx lex_complex(const Token& at) {
    const double first = lex_double(at);
    if (pos_ < text_.size() && text_[pos_] == 'i') {
      advance();
      return cplx(0.0, first);
    }
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      // Imaginary part must follow with no space and end in 'i'.
      const double second = lex_double(at);
      if (pos_ >= text_.size() || text_[pos_] != 'i') {
        throw ParseError("expected 'i' after imaginary part of complex literal", line_,
                         column_);
      }
      advance();
      return cplx(first, second);
    }
    return cplx(first, 0.0);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_complex(cplx v) {
  if (v.imag() == 0.0) return format_double(v.real());
  if (v.real() == 0.0) return format_double(v.imag()) + "i";
  const std::string sign = v.imag() < 0.0 ? "-" : "+";
  return format_double(v.real()) + sign + format_double(std::abs(v.imag())) + "i";
}

} // namespace

ExprAst parse_expr(const std::string& text) {
  Lexer lexer(text);
  Token tok = lexer.next();
  if (tok.kind == TokKind::end) {
    throw ParseError("empty expression", tok.line, tok.column);
  }
  ExprAst ast;
  while (tok.kind != TokKind::end) {
    switch (tok.kind) {
      case TokKind::ident: {
        if (tok.text == "I") {
          ast.terms.push_back({ExprKind::identity, cplx(1.0, 0.0), ""});
          tok = lexer.next();
          break;
        }
        if (tok.text == "dGamma") {
          ast.terms.push_back({ExprKind::d_gamma_term, cplx(1.0, 0.0), ""});
          tok = lexer.next();
          break;
        }
        ExprKind kind;
        if (tok.text == "adag") {
          kind = ExprKind::create;
        } else if (tok.text == "a") {
          kind = ExprKind::annihilate;
        } else if (tok.text == "W") {
          kind = ExprKind::weyl;
        } else {
          throw ParseError("unknown identifier '" + tok.text + "'", tok.line, tok.column);
        }
        Token open = lexer.next();
        if (open.kind != TokKind::lparen) {
          throw ParseError("expected '(' after '" + tok.text + "'", open.line, open.column);
        }
        Token name = lexer.next();
        if (name.kind != TokKind::ident) {
          throw ParseError("expected a vector name inside '" + tok.text + "(...)'",
                           name.line, name.column);
        }
        Token close = lexer.next();
        if (close.kind != TokKind::rparen) {
          throw ParseError("expected ')' to close '" + tok.text + "(" + name.text + "'",
                           close.line, close.column);
        }
        ast.terms.push_back({kind, cplx(1.0, 0.0), name.text});
        tok = lexer.next();
        break;
      }
      case TokKind::number: {
        Token star = lexer.next();
        if (star.kind != TokKind::star) {
          throw ParseError("expected '*' after scalar literal", star.line, star.column);
        }
        ast.terms.push_back({ExprKind::scalar, tok.value, ""});
        tok = lexer.next();
        break;
      }
      case TokKind::lparen:
        throw ParseError("unexpected '('", tok.line, tok.column);
      case TokKind::rparen:
        throw ParseError("unexpected ')'", tok.line, tok.column);
      case TokKind::star:
        throw ParseError("unexpected '*'", tok.line, tok.column);
      case TokKind::end:
        break;
    }
  }
  return ast;
}

std::string print_expr(const ExprAst& ast) {
  std::string out;
  for (const ExprTerm& term : ast.terms) {
    if (!out.empty()) out += ' ';
    switch (term.kind) {
      case ExprKind::identity:
        out += 'I';
        break;
      case ExprKind::scalar:
        out += format_complex(term.scalar) + " *";
        break;
      case ExprKind::create:
        out += "adag(" + term.ref + ")";
        break;
      case ExprKind::annihilate:
        out += "a(" + term.ref + ")";
        break;
      case ExprKind::weyl:
        out += "W(" + term.ref + ")";
        break;
      case ExprKind::d_gamma_term:
        out += "dGamma";
        break;
    }
  }
  return out;
}

namespace {

const ModeVector& resolve_vector(const std::map<std::string, ModeVector>& vectors,
                                 const std::string& name, const TruncatedBasis& basis) {
  auto it = vectors.find(name);
  if (it == vectors.end()) {
    throw std::invalid_argument("unresolved vector reference '" + name +
                                "' (not in the config's vector table)");
  }
  if (static_cast<int>(it->second.size()) != basis.n_modes()) {
    throw std::invalid_argument("vector '" + name + "' has " +
                                std::to_string(it->second.size()) + " modes, basis has " +
                                std::to_string(basis.n_modes()));
  }
  return it->second;
}

} // namespace

SparseOperator eval_expr(const ExprAst& ast, const TruncatedBasis& basis,
                         const std::map<std::string, ModeVector>& vectors,
                         const OneBodyOperator* hamiltonian) {
  cplx scale(1.0, 0.0);
  SparseOperator acc = SparseOperator::identity(basis.dim());
  bool have_matrix = false;
  for (const ExprTerm& term : ast.terms) {
    SparseOperator factor(0);
    switch (term.kind) {
      case ExprKind::identity:
        continue;
      case ExprKind::scalar:
        scale *= term.scalar;
        continue;
      case ExprKind::create:
        factor = creation_smeared(basis, resolve_vector(vectors, term.ref, basis));
        break;
      case ExprKind::annihilate:
        factor = annihilation_smeared(basis, resolve_vector(vectors, term.ref, basis));
        break;
      case ExprKind::weyl:
        factor = weyl_operator(basis, resolve_vector(vectors, term.ref, basis));
        break;
      case ExprKind::d_gamma_term:
        if (hamiltonian == nullptr) {
          throw std::invalid_argument(
              "dGamma needs a hamiltonian, and the config does not provide one");
        }
        factor = d_gamma(basis, *hamiltonian);
        break;
    }
    acc = have_matrix ? sparse_matmul(acc, factor) : std::move(factor);
    have_matrix = true;
  }
  if (scale != cplx(1.0, 0.0)) acc = acc.scaled(scale);
  return acc;
}

int ladder_factor_count(const ExprAst& ast) {
  int count = 0;
  for (const ExprTerm& term : ast.terms) {
    if (term.kind == ExprKind::create || term.kind == ExprKind::annihilate) ++count;
    if (term.kind == ExprKind::d_gamma_term) count += 2;
  }
  return count;
}

std::optional<cplx> gibbs_closed_form(const ExprAst& ast,
                                      const ThermalSpectrum& spectrum,
                                      const std::map<std::string, ModeVector>& vectors) {
  cplx scale(1.0, 0.0);
  std::vector<const ExprTerm*> word;
  for (const ExprTerm& term : ast.terms) {
    if (term.kind == ExprKind::scalar) {
      scale *= term.scalar;
    } else if (term.kind != ExprKind::identity) {
      word.push_back(&term);
    }
  }
  if (word.empty()) return scale;

  auto lookup = [&](const std::string& name) -> const ModeVector* {
    auto it = vectors.find(name);
    if (it == vectors.end() || static_cast<int>(it->second.size()) != spectrum.n_modes()) {
      return nullptr;
    }
    return &it->second;
  };

  if (word.size() == 1 && word[0]->kind == ExprKind::weyl) {
    const ModeVector* f = lookup(word[0]->ref);
    if (f == nullptr) return std::nullopt;
    return scale * weyl_gibbs_closed(spectrum, *f);
  }

  // adag-block followed by a-block, nothing else.
  std::size_t i = 0;
  std::vector<ModeVector> fs, gs;
  for (; i < word.size() && word[i]->kind == ExprKind::create; ++i) {
    const ModeVector* f = lookup(word[i]->ref);
    if (f == nullptr) return std::nullopt;
    fs.push_back(*f);
  }
  for (; i < word.size() && word[i]->kind == ExprKind::annihilate; ++i) {
    const ModeVector* g = lookup(word[i]->ref);
    if (g == nullptr) return std::nullopt;
    gs.push_back(*g);
  }
  if (i != word.size()) return std::nullopt; // some other factor interrupts the pattern
  if (fs.size() != gs.size()) {
    // The word shifts the total level, and the Gibbs state is level-preserving:
    // the expectation vanishes identically.
    return cplx(0.0, 0.0);
  }
  if (fs.size() > 12) return std::nullopt; // beyond the permanent cap: direct only
  return scale * product_gibbs_closed(spectrum, fs, gs);
}

} // namespace bosefock

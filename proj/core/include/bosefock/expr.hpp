#pragma once

// Operator-expression language: products of adag(f), a(g), W(x), dGamma, I
// and complex scalar factors, parsed from text into a flat AST, printable
// back to text, and evaluable against a truncated basis with a named-vector
// table.  The leftmost factor is applied last (operator composition as
// written), so eval of "A B" is matrix(A) * matrix(B).

#include "bosefock/basis.hpp"
#include "bosefock/gibbs.hpp"
#include "bosefock/quantization.hpp"
#include "bosefock/sparse.hpp"
#include "bosefock/types.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bosefock {

enum class ExprKind { identity, scalar, create, annihilate, weyl, d_gamma_term };

struct ExprTerm {
  ExprKind kind = ExprKind::identity;
  cplx scalar{1.0, 0.0}; // meaningful for kind == scalar
  std::string ref;       // vector name for create / annihilate / weyl
  bool operator==(const ExprTerm&) const = default;
};

// Flattened product of terms; parsing never produces an empty term list.
struct ExprAst {
  std::vector<ExprTerm> terms;
  bool operator==(const ExprAst&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& detail, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Grammar: expr := term (term)*;
//          term := "adag(" id ")" | "a(" id ")" | "W(" id ")"
//                | "dGamma" | "I" | complex-literal "*".
// Complex literals: "2", "-0.5", "1.5e-3", "2i", "1+2i", "1-2i" (no spaces
// inside a literal; the imaginary unit needs an explicit coefficient, "1i").
// Terms are separated by whitespace; juxtaposition is the operator product.
// Throws ParseError with 1-based line/column on malformed input.
ExprAst parse_expr(const std::string& text);

// Canonical text form; parse_expr(print_expr(ast)) == ast for every AST that
// parse_expr can produce.  Scalars print with %.17g precision.
std::string print_expr(const ExprAst& ast);

// Product of the term matrices in written order.  Vector refs resolve against
// `vectors` (length n_modes each); dGamma requires `hamiltonian`.  Throws
// std::invalid_argument on unresolved refs or dimension mismatches.
SparseOperator eval_expr(const ExprAst& ast, const TruncatedBasis& basis,
                         const std::map<std::string, ModeVector>& vectors,
                         const OneBodyOperator* hamiltonian = nullptr);

// Number of ladder factors the expression carries into a Gibbs trace
// (create + annihilate + 2 per dGamma); used for truncation-tail reporting.
int ladder_factor_count(const ExprAst& ast);

// Conservative closed-form matcher for Gibbs expectations.  Recognizes, after
// collecting scalar factors and dropping identities:
//   - the empty word                      -> s
//   - adag-block followed by a-block,
//     equal lengths m <= 12               -> s * product_gibbs_closed
//   - adag-block then a-block, unequal
//     lengths                             -> exactly 0 (level-shift argument)
//   - a single W(f)                       -> s * weyl_gibbs_closed
// Anything else returns nullopt and callers fall back to the direct trace.
std::optional<cplx> gibbs_closed_form(const ExprAst& ast,
                                      const ThermalSpectrum& spectrum,
                                      const std::map<std::string, ModeVector>& vectors);

} // namespace bosefock

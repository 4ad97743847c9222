#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "srk/field.hpp"
#include "srk/grank.hpp"
#include "srk/linalg.hpp"
#include "srk/poly.hpp"

namespace srk {

struct ParsedPolynomial {
  HomPoly poly;
  std::vector<std::string> vars;
};

/// Parses
///   expr   := term (('+'|'-') term)*
///   term   := coeff? ('*'? factor)*
///   factor := ident ('^' uint)?
///   coeff  := integer | '(' field-expr ')'
/// Field expressions use integers, the generator `g`, + - * / ^ and
/// parentheses. Variables are taken from `vars` when given (unknown names
/// raise UnknownVariable), otherwise in order of first appearance.
ParsedPolynomial parse_polynomial(std::string_view text, const Field& F,
                                  const std::optional<std::vector<std::string>>& vars = std::nullopt);

FieldElement parse_field_element(std::string_view text, const Field& F);

/// Univariate truncated series in `t` with field-expression coefficients.
Series parse_series(std::string_view text, const Field& F, unsigned N);

/// "a,b;c,d" (rows split by ';', entries by ',') as a power-series matrix.
PSMatrix parse_ps_matrix(std::string_view text, const Field& F, unsigned N);

/// Comma-separated linear forms in `vars`; returns their span in the dual space.
Subspace parse_linear_forms(std::string_view text, const Field& F, const std::vector<std::string>& vars);

/// Splits on `sep` outside parentheses.
std::vector<std::string> split_top_level(std::string_view text, char sep);

}  // namespace srk

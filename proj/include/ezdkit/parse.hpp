#pragma once

#include <string>
#include <vector>

#include "ezdkit/field.hpp"

namespace ezdkit {

/// One homogeneous polynomial in the ring variables, normalized: exponent
/// vectors have length = #vars, no duplicate monomials, no zero terms.
struct PolyExpr {
  struct Term {
    FElem coeff;
    std::vector<int> exps;
  };
  std::vector<Term> terms;
  int degree = 0; // shared total degree of all terms
};

/// Everything needed to build a graded algebra: the coefficient field, the
/// ordered variable list and the homogeneous relations.
struct PresentationSource {
  FieldSpec fspec;
  FieldPtr field;
  std::vector<std::string> vars;
  std::vector<PolyExpr> relations;
  int degree_cap = 6;
};

/// Text format:
///   field = GF(p) | GF(p^n; <monic poly in one new identifier>) | QQ
///   vars = <ident>+
///   relations = <poly> (, <poly>)*
///   degree_cap = <int>         (optional)
/// `#` starts a line comment; polynomials support + - * ^, integer and
/// fraction coefficients, and parentheses.  The `field` and `vars`
/// statements must precede `relations`.
PresentationSource parse_presentation(const std::string& text);

FieldSpec parse_fieldspec(const std::string& text);

class GradedAlgebra; // algebra.hpp
struct AElem;

/// Expression evaluated inside A through its multiplication table.  Atoms
/// are the ring variables, the extension generator (if any) and numeric
/// literals.
AElem parse_element(const std::string& text, const std::shared_ptr<const GradedAlgebra>& A);

/// Rows split on `;` or newline, entries on `,`; each entry is an element
/// expression.
std::vector<std::vector<AElem>> parse_matrix_rows(const std::string& text,
                                                  const std::shared_ptr<const GradedAlgebra>& A);

} // namespace ezdkit

#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ezdkit/matrix.hpp"
#include "ezdkit/parse.hpp"

namespace ezdkit {

class GradedAlgebra;
using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/// Element of a graded algebra: coordinate vector over the concatenated
/// graded monomial basis.
struct AElem {
  AlgebraPtr A;
  Vec c;

  bool operator==(const AElem& o) const { return c == o.c; }
  bool operator!=(const AElem& o) const { return !(*this == o); }
};

/// k-subspace of the algebra given by a canonical echelon basis; closure
/// under multiplication by the degree-one generators is verified on
/// construction for the ideal-producing operations.
struct IdealView {
  AlgebraPtr A;
  std::vector<Vec> basis; // RREF rows over the concatenated basis
  int dim() const { return (int)basis.size(); }
  bool contains(const AElem& x) const;
  bool same_subspace(const IdealView& o) const;
};

/// Finite-dimensional standard graded algebra R = k[x_1..x_e]/I for a
/// homogeneous ideal I, realized degree by degree: each component R_d gets a
/// monomial basis (the non-pivot monomials after reducing the span of the
/// shifted relations), and multiplication is tabulated through normal forms.
class GradedAlgebra : public std::enable_shared_from_this<GradedAlgebra> {
public:
  /// Computes components up to src.degree_cap; the zero component must be
  /// reached within the cap (NotArtinianWithinCap otherwise).
  static AlgebraPtr build(const PresentationSource& src);

  const FieldPtr& field() const { return F_; }
  const PresentationSource& source() const { return src_; }
  int embdim() const { return e_; }
  int top_degree() const { return top_; }
  int dim() const { return dim_; }
  const std::vector<int>& hilbert() const { return hilbert_; }
  const std::vector<std::string>& var_names() const { return src_.vars; }

  /// Concatenated basis layout.
  int offset(int d) const { return offset_[d]; }
  int h(int d) const { return d <= top_ ? hilbert_[d] : 0; }
  const std::vector<std::vector<int>>& monomials(int d) const { return basis_[d]; }

  AElem zero() const;
  AElem one() const;
  AElem scalar(const FElem& c) const;
  /// Image of the i-th declared variable (as an element of R_1; a variable
  /// killed by a linear relation maps to a combination of the basis).
  AElem var(int i) const;
  /// The i-th degree-one basis element (minimal generator of m).
  AElem gen(int i) const;

  AElem add(const AElem& a, const AElem& b) const;
  AElem sub(const AElem& a, const AElem& b) const;
  AElem neg(const AElem& a) const;
  AElem smul(const FElem& c, const AElem& a) const;
  AElem multiply(const AElem& a, const AElem& b) const;
  AElem power(const AElem& a, int n) const;
  /// Inverse of a unit (error on non-units).
  AElem invert(const AElem& u) const;
  bool is_zero(const AElem& a) const;
  bool is_unit(const AElem& a) const { return !F_->is_zero(a.c[0]); }
  bool in_m(const AElem& a) const { return F_->is_zero(a.c[0]); }
  bool in_m_pow(const AElem& a, int d) const;
  bool in_m_not_m2(const AElem& a) const;

  /// Square matrix of multiplication by x acting on coordinates.
  Mat multiplication_operator(const AElem& x) const;
  /// Degree-one part of x as a vector in m/m^2 coordinates.
  Vec image_mod_m2(const AElem& x) const;

  IdealView annihilator(const AElem& x) const;
  IdealView principal_ideal(const AElem& x) const;
  IdealView ideal_of(const std::vector<AElem>& gens) const;
  IdealView maximal_ideal_power(int d) const;
  IdealView socle() const;

  bool is_short() const { return top_ <= 2; }
  bool is_gorenstein() const;

  /// x in (gens) + m^d?
  bool span_membership_mod(const AElem& x, const std::vector<AElem>& gens, int d) const;
  bool lin_indep_mod_m2(const std::vector<AElem>& xs) const;

  /// Enumeration of m (finite fields): index <-> coordinate vector over the
  /// positive-degree basis.
  std::uint64_t m_size() const; // |m| = q^(dim-1)
  AElem m_element_at(std::uint64_t idx) const;

  /// Canonical printer: terms in graded-then-lex basis order with explicit
  /// coefficients; parses back to the same element.
  std::string render(const AElem& x) const;
  std::string monomial_string(int d, int i) const;

  /// Re-runs the construction-time commutativity/associativity spot check.
  void check_mult_table() const;

private:
  GradedAlgebra() = default;
  const Vec& prod(int gi, int gj) const { return mult_[(size_t)gi * dim_ + gj]; }

  FieldPtr F_;
  PresentationSource src_;
  int e_ = 0, top_ = 0, dim_ = 0;
  std::vector<int> hilbert_;
  std::vector<int> offset_;
  std::vector<std::vector<std::vector<int>>> basis_; // [d][i] = exponent vector
  std::vector<Vec> mult_;                            // dim x dim table of coordinate vectors
  std::vector<Vec> var_images_;                      // declared variable -> R_1 coordinates
};

} // namespace ezdkit

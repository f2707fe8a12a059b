#include "ezdkit/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace ezdkit {

namespace {

// Exponent vectors of total degree d over e variables, graded-lex order
// (x_1 > x_2 > ... within the fixed degree, largest first).
void gen_monomials(int e, int d, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  int pos = (int)cur.size();
  if (pos == e - 1) {
    cur.push_back(d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = d; k >= 0; --k) {
    cur.push_back(k);
    gen_monomials(e, d - k, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> monomials_of_degree(int e, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (e == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  gen_monomials(e, d, cur, out);
  return out;
}

} // namespace

bool IdealView::contains(const AElem& x) const {
  RowSpace rs(A->field(), A->dim());
  for (const auto& b : basis) rs.insert(b);
  return rs.contains(x.c);
}

bool IdealView::same_subspace(const IdealView& o) const {
  return basis == o.basis; // both canonical RREF
}

AlgebraPtr GradedAlgebra::build(const PresentationSource& src) {
  auto A = std::shared_ptr<GradedAlgebra>(new GradedAlgebra());
  A->src_ = src;
  A->F_ = src.field ? src.field : Field::make(src.fspec);
  A->src_.field = A->F_;
  const Field& F = *A->F_;
  const int e = (int)src.vars.size();
  if (e < 1) fail(Err::BadArgument, "need at least one variable");
  A->e_ = e;
  const int cap = src.degree_cap;

  // Per degree: monomials of S_d, index lookup, ideal-component row space,
  // and normal forms of every S_d monomial over the surviving basis.
  std::vector<std::vector<std::vector<int>>> smons(1, monomials_of_degree(e, 0));
  std::vector<std::map<std::vector<int>, int>> sindex(1);
  sindex[0][smons[0][0]] = 0;
  std::vector<std::vector<Vec>> nf(1); // nf[d][j] = coords of j-th S_d monomial in basis_[d]
  nf[0].push_back({F.one()});
  A->basis_.push_back(smons[0]);
  A->hilbert_.push_back(1);

  int top = -1;
  for (int d = 1; d <= cap; ++d) {
    auto mons = monomials_of_degree(e, d);
    std::map<std::vector<int>, int> idx;
    for (int i = 0; i < (int)mons.size(); ++i) idx[mons[i]] = i;

    // Reduce the span of the shifted relations.  Elimination pivots on the
    // graded-lex SMALLEST monomial of each row (coordinates are reversed
    // before echelon), so the surviving basis keeps the earliest monomials:
    // in Conca's ring this yields {st, su, tu} for the degree-2 component.
    const int nm = (int)mons.size();
    auto rev = [nm](int j) { return nm - 1 - j; };
    RowSpace ideal_d(A->F_, nm);
    for (const auto& rel : src.relations) {
      if (rel.degree > d) continue;
      for (const auto& shift : monomials_of_degree(e, d - rel.degree)) {
        Vec row(nm, F.zero());
        for (const auto& term : rel.terms) {
          std::vector<int> m(e);
          for (int i = 0; i < e; ++i) m[i] = term.exps[i] + shift[i];
          int rj = rev(idx.at(m));
          row[rj] = F.add(row[rj], term.coeff);
        }
        ideal_d.insert(row);
      }
    }

    std::vector<bool> is_pivot(nm, false);
    for (int p : ideal_d.pivots()) is_pivot[rev(p)] = true;
    std::vector<std::vector<int>> dbasis;
    std::vector<int> basis_pos(nm, -1);
    for (int j = 0; j < nm; ++j)
      if (!is_pivot[j]) {
        basis_pos[j] = (int)dbasis.size();
        dbasis.push_back(mons[j]);
      }
    const int hd = (int)dbasis.size();

    std::vector<Vec> nfd(nm, Vec(hd, F.zero()));
    for (int j = 0; j < nm; ++j) {
      if (!is_pivot[j]) {
        nfd[j][basis_pos[j]] = F.one();
        continue;
      }
      // pivot monomial: rewrite from its RREF row  e_j + sum c_k e_k (k free)
      const auto& piv = ideal_d.pivots();
      int row_i = int(std::lower_bound(piv.begin(), piv.end(), rev(j)) - piv.begin());
      const Vec& row = ideal_d.basis()[row_i];
      for (int k = 0; k < nm; ++k) {
        if (k == j || F.is_zero(row[rev(k)])) continue;
        nfd[j][basis_pos[k]] = F.neg(row[rev(k)]);
      }
    }

    smons.push_back(std::move(mons));
    sindex.push_back(std::move(idx));
    nf.push_back(std::move(nfd));
    A->basis_.push_back(dbasis);
    A->hilbert_.push_back(hd);
    if (hd == 0) { top = d - 1; break; }
  }
  if (top < 0)
    fail(Err::NotArtinianWithinCap,
         "component of degree " + std::to_string(cap) + " is still nonzero");
  A->top_ = top;
  A->hilbert_.resize(top + 1);
  A->basis_.resize(top + 2); // keep the (empty) component after top for uniform h()

  A->offset_.assign(top + 2, 0);
  for (int d = 0; d <= top; ++d) A->offset_[d + 1] = A->offset_[d] + A->hilbert_[d];
  A->dim_ = A->offset_[top + 1];
  const int dim = A->dim_;

  // Full multiplication table via normal forms of exponent sums.
  A->mult_.assign((size_t)dim * dim, Vec(dim, F.zero()));
  for (int d1 = 0; d1 <= top; ++d1)
    for (int i = 0; i < A->hilbert_[d1]; ++i) {
      int gi = A->offset_[d1] + i;
      for (int d2 = 0; d2 <= top; ++d2)
        for (int j = 0; j < A->hilbert_[d2]; ++j) {
          int gj = A->offset_[d2] + j;
          int dd = d1 + d2;
          if (dd > top) continue; // product lands in the zero component
          std::vector<int> m(e);
          for (int k = 0; k < e; ++k) m[k] = A->basis_[d1][i][k] + A->basis_[d2][j][k];
          const Vec& coords = nf[dd][sindex[dd].at(m)];
          Vec& cell = A->mult_[(size_t)gi * dim + gj];
          for (int k = 0; k < (int)coords.size(); ++k) cell[A->offset_[dd] + k] = coords[k];
        }
    }

  // Images of declared variables in R_1.
  A->var_images_.clear();
  for (int i = 0; i < e; ++i) {
    std::vector<int> m(e, 0);
    m[i] = 1;
    Vec img = top >= 1 ? nf[1][sindex[1].at(m)] : Vec{};
    A->var_images_.push_back(std::move(img));
  }

  A->check_mult_table();
  return A;
}

void GradedAlgebra::check_mult_table() const {
  const Field& F = *F_;
  auto self = shared_from_this();
  auto basis_elem = [&](int g) {
    AElem x{self, Vec(dim_, F.zero())};
    x.c[g] = F.one();
    return x;
  };
  // commutativity on all pairs
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      if (prod(i, j) != prod(j, i))
        fail(Err::AssocCheckFailed, "multiplication table is not commutative");
  // associativity on basis triples; sampled above a size threshold
  const bool full = dim_ <= 48;
  Rng rng(0x5eedULL);
  const int samples = 5000;
  auto triple = [&](int i, int j, int k) {
    AElem bi = basis_elem(i), bk = basis_elem(k);
    AElem ij{self, prod(i, j)};
    AElem jk{self, prod(j, k)};
    if (multiply(ij, bk) != multiply(bi, jk))
      fail(Err::AssocCheckFailed, "associativity fails on a basis triple");
  };
  if (full) {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k) triple(i, j, k);
  } else {
    for (int s = 0; s < samples; ++s)
      triple((int)rng.below(dim_), (int)rng.below(dim_), (int)rng.below(dim_));
  }
}

AElem GradedAlgebra::zero() const { return AElem{shared_from_this(), Vec(dim_, F_->zero())}; }

AElem GradedAlgebra::one() const {
  AElem x = zero();
  x.c[0] = F_->one();
  return x;
}

AElem GradedAlgebra::scalar(const FElem& c) const {
  AElem x = zero();
  x.c[0] = c;
  return x;
}

AElem GradedAlgebra::var(int i) const {
  AElem x = zero();
  if (top_ >= 1)
    for (int k = 0; k < hilbert_[1]; ++k) x.c[offset_[1] + k] = var_images_[i][k];
  return x;
}

AElem GradedAlgebra::gen(int i) const {
  AElem x = zero();
  x.c[offset_[1] + i] = F_->one();
  return x;
}

AElem GradedAlgebra::add(const AElem& a, const AElem& b) const {
  if (a.A.get() != this || b.A.get() != this) fail(Err::AlgebraMismatch, "add");
  AElem r = a;
  for (int i = 0; i < dim_; ++i) r.c[i] = F_->add(r.c[i], b.c[i]);
  return r;
}

AElem GradedAlgebra::sub(const AElem& a, const AElem& b) const { return add(a, neg(b)); }

AElem GradedAlgebra::neg(const AElem& a) const {
  AElem r = a;
  for (auto& x : r.c) x = F_->neg(x);
  return r;
}

AElem GradedAlgebra::smul(const FElem& c, const AElem& a) const {
  AElem r = a;
  for (auto& x : r.c) x = F_->mul(c, x);
  return r;
}

AElem GradedAlgebra::multiply(const AElem& a, const AElem& b) const {
  if (a.A.get() != this || b.A.get() != this) fail(Err::AlgebraMismatch, "multiply");
  const Field& F = *F_;
  AElem r = zero();
  for (int i = 0; i < dim_; ++i) {
    if (F.is_zero(a.c[i])) continue;
    for (int j = 0; j < dim_; ++j) {
      if (F.is_zero(b.c[j])) continue;
      const FElem cij = F.mul(a.c[i], b.c[j]);
      const Vec& p = prod(i, j);
      for (int k = 0; k < dim_; ++k)
        if (!F.is_zero(p[k])) r.c[k] = F.add(r.c[k], F.mul(cij, p[k]));
    }
  }
  return r;
}

AElem GradedAlgebra::power(const AElem& a, int n) const {
  AElem acc = one();
  for (int i = 0; i < n; ++i) acc = multiply(acc, a);
  return acc;
}

AElem GradedAlgebra::invert(const AElem& u) const {
  if (!is_unit(u)) fail(Err::UnitElement, "inverse of a non-unit");
  const FElem c_inv = F_->inv(u.c[0]);
  AElem n = sub(one(), smul(c_inv, u)); // nilpotent part
  AElem acc = one(), pw = one();
  for (int i = 1; i <= top_; ++i) {
    pw = multiply(pw, n);
    acc = add(acc, pw);
  }
  return smul(c_inv, acc);
}

bool GradedAlgebra::is_zero(const AElem& a) const {
  for (const auto& x : a.c)
    if (!F_->is_zero(x)) return false;
  return true;
}

bool GradedAlgebra::in_m_pow(const AElem& a, int d) const {
  int lim = std::min(d, top_ + 1);
  for (int i = 0; i < offset_[lim]; ++i)
    if (!F_->is_zero(a.c[i])) return false;
  return true;
}

bool GradedAlgebra::in_m_not_m2(const AElem& a) const {
  if (!in_m(a)) return false;
  if (top_ < 1) return false;
  for (int k = 0; k < hilbert_[1]; ++k)
    if (!F_->is_zero(a.c[offset_[1] + k])) return true;
  return false;
}

Mat GradedAlgebra::multiplication_operator(const AElem& x) const {
  const Field& F = *F_;
  Mat op(F_, dim_, dim_);
  for (int j = 0; j < dim_; ++j) {
    // column j = x * (j-th basis element)
    for (int i = 0; i < dim_; ++i) {
      if (F.is_zero(x.c[i])) continue;
      const Vec& p = prod(i, j);
      for (int k = 0; k < dim_; ++k)
        if (!F.is_zero(p[k])) op.at(k, j) = F.add(op.at(k, j), F.mul(x.c[i], p[k]));
    }
  }
  return op;
}

Vec GradedAlgebra::image_mod_m2(const AElem& x) const {
  Vec v;
  if (top_ >= 1)
    for (int k = 0; k < hilbert_[1]; ++k) v.push_back(x.c[offset_[1] + k]);
  return v;
}

namespace {

IdealView make_view(const AlgebraPtr& A, RowSpace& rs, bool verify_closure = true) {
  IdealView v{A, rs.basis()};
  if (verify_closure) {
    RowSpace copy(A->field(), A->dim());
    for (const auto& b : v.basis) copy.insert(b);
    for (int g = 0; g < A->h(1); ++g) {
      AElem gen = A->gen(g);
      for (const auto& b : v.basis) {
        AElem be{A, b};
        if (!copy.contains(A->multiply(gen, be).c))
          fail(Err::AssocCheckFailed, "ideal view is not closed under the generators");
      }
    }
  }
  return v;
}

} // namespace

IdealView GradedAlgebra::annihilator(const AElem& x) const {
  auto A = shared_from_this();
  auto kernel = nullspace(multiplication_operator(x));
  RowSpace rs(F_, dim_);
  rs.insert_all(kernel);
  return make_view(A, rs);
}

IdealView GradedAlgebra::principal_ideal(const AElem& x) const {
  return ideal_of({x});
}

IdealView GradedAlgebra::ideal_of(const std::vector<AElem>& gens) const {
  auto A = shared_from_this();
  RowSpace rs(F_, dim_);
  for (const auto& g : gens) {
    Mat op = multiplication_operator(g);
    for (int j = 0; j < dim_; ++j) {
      Vec col(dim_);
      for (int i = 0; i < dim_; ++i) col[i] = op.at(i, j);
      rs.insert(col);
    }
  }
  return make_view(A, rs);
}

IdealView GradedAlgebra::maximal_ideal_power(int d) const {
  auto A = shared_from_this();
  RowSpace rs(F_, dim_);
  if (d <= top_) {
    int start = offset_[std::max(d, 0)];
    for (int i = start; i < dim_; ++i) {
      Vec v(dim_, F_->zero());
      v[i] = F_->one();
      rs.insert(v);
    }
  }
  return make_view(A, rs);
}

IdealView GradedAlgebra::socle() const {
  auto A = shared_from_this();
  const int ngen = h(1);
  Mat stacked(F_, dim_ * std::max(ngen, 1), dim_);
  for (int g = 0; g < ngen; ++g) {
    Mat op = multiplication_operator(gen(g));
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) stacked.at(g * dim_ + i, j) = op.at(i, j);
  }
  RowSpace rs(F_, dim_);
  rs.insert_all(nullspace(stacked));
  return make_view(A, rs);
}

bool GradedAlgebra::is_gorenstein() const { return socle().dim() == 1; }

bool GradedAlgebra::span_membership_mod(const AElem& x, const std::vector<AElem>& gens,
                                        int d) const {
  RowSpace rs(F_, dim_);
  for (const auto& g : gens) {
    Mat op = multiplication_operator(g);
    for (int j = 0; j < dim_; ++j) {
      Vec col(dim_);
      for (int i = 0; i < dim_; ++i) col[i] = op.at(i, j);
      rs.insert(col);
    }
  }
  if (d <= top_)
    for (int i = offset_[std::max(d, 0)]; i < dim_; ++i) {
      Vec v(dim_, F_->zero());
      v[i] = F_->one();
      rs.insert(v);
    }
  return rs.contains(x.c);
}

bool GradedAlgebra::lin_indep_mod_m2(const std::vector<AElem>& xs) const {
  RowSpace rs(F_, h(1));
  int count = 0;
  for (const auto& x : xs)
    if (rs.insert(image_mod_m2(x))) ++count;
  return count == (int)xs.size();
}

std::uint64_t GradedAlgebra::m_size() const {
  if (!F_->finite()) fail(Err::InfiniteField, "m is infinite over the rationals");
  std::uint64_t n = 1;
  for (int i = 1; i < dim_; ++i) n *= F_->order();
  return n;
}

AElem GradedAlgebra::m_element_at(std::uint64_t idx) const {
  AElem x = zero();
  const std::uint64_t q = F_->order();
  for (int i = 1; i < dim_; ++i) {
    x.c[i] = F_->element_at(idx % q);
    idx /= q;
  }
  return x;
}

std::string GradedAlgebra::monomial_string(int d, int i) const {
  if (d == 0) return "1";
  const auto& m = basis_[d][i];
  std::ostringstream os;
  bool first = true;
  for (int v = 0; v < e_; ++v) {
    if (m[v] == 0) continue;
    if (!first) os << "*";
    first = false;
    os << src_.vars[v];
    if (m[v] > 1) os << "^" << m[v];
  }
  return os.str();
}

std::string GradedAlgebra::render(const AElem& x) const {
  const Field& F = *F_;
  const bool rats = !F.finite();
  std::ostringstream os;
  bool first = true;
  for (int d = 0; d <= top_; ++d)
    for (int i = 0; i < hilbert_[d]; ++i) {
      const FElem& c = x.c[offset_[d] + i];
      if (F.is_zero(c)) continue;
      std::string cs;
      bool negative = false;
      if (rats) {
        const mpq_class& q = std::get<mpq_class>(c.v);
        negative = q < 0;
        cs = negative ? mpq_class(-q).get_str() : q.get_str();
      } else {
        cs = F.to_string(c);
        if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
      }
      if (first) {
        if (negative) os << "-";
        first = false;
      } else {
        os << (negative ? " - " : " + ");
      }
      os << cs;
      if (d > 0) os << "*" << monomial_string(d, i);
    }
  if (first) return "0";
  return os.str();
}

} // namespace ezdkit

#include "ezdkit/matrix.hpp"

#include <algorithm>

namespace ezdkit {

Mat Mat::identity(const FieldPtr& f, int n) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = f->one();
  return m;
}

Mat Mat::from_rows(const FieldPtr& f, const std::vector<Vec>& rows) {
  int r = (int)rows.size();
  int c = r ? (int)rows[0].size() : 0;
  Mat m(f, r, c);
  for (int i = 0; i < r; ++i) {
    if ((int)rows[i].size() != c) fail(Err::BadArgument, "ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::transpose() const {
  Mat t(F, cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

Mat Mat::mul(const Mat& o) const {
  if (!F->same(*o.F)) fail(Err::MixedFields, "matrix product across fields");
  if (cols != o.rows) fail(Err::BadArgument, "matrix product shape mismatch");
  Mat r(F, rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const FElem& x = at(i, k);
      if (F->is_zero(x)) continue;
      for (int j = 0; j < o.cols; ++j)
        r.at(i, j) = F->add(r.at(i, j), F->mul(x, o.at(k, j)));
    }
  return r;
}

Vec Mat::apply(const Vec& v) const {
  if ((int)v.size() != cols) fail(Err::BadArgument, "apply: shape mismatch");
  Vec r(rows, F->zero());
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (!F->is_zero(at(i, j))) r[i] = F->add(r[i], F->mul(at(i, j), v[j]));
  return r;
}

bool Mat::is_zero() const {
  for (const auto& x : a)
    if (!F->is_zero(x)) return false;
  return true;
}

EchelonResult row_echelon(const Mat& m) {
  EchelonResult res;
  res.rref = m;
  Mat& r = res.rref;
  const Field& F = *m.F;
  int pr = 0;
  for (int col = 0; col < r.cols && pr < r.rows; ++col) {
    int sel = -1;
    for (int i = pr; i < r.rows; ++i)
      if (!F.is_zero(r.at(i, col))) { sel = i; break; }
    if (sel < 0) continue;
    if (sel != pr)
      for (int j = 0; j < r.cols; ++j) std::swap(r.at(sel, j), r.at(pr, j));
    FElem piv_inv = F.inv(r.at(pr, col));
    for (int j = col; j < r.cols; ++j) r.at(pr, j) = F.mul(piv_inv, r.at(pr, j));
    for (int i = 0; i < r.rows; ++i) {
      if (i == pr) continue;
      const FElem c = r.at(i, col);
      if (F.is_zero(c)) continue;
      for (int j = col; j < r.cols; ++j)
        r.at(i, j) = F.sub(r.at(i, j), F.mul(c, r.at(pr, j)));
    }
    res.pivot_cols.push_back(col);
    ++pr;
  }
  res.rank = pr;
  return res;
}

int rank_of(const Mat& m) { return row_echelon(m).rank; }

std::vector<Vec> nullspace(const Mat& m) {
  EchelonResult e = row_echelon(m);
  const Field& F = *m.F;
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int j = 0; j < m.cols; ++j) {
    if (is_pivot[j]) continue;
    Vec v(m.cols, F.zero());
    v[j] = F.one();
    for (int i = 0; i < e.rank; ++i)
      v[e.pivot_cols[i]] = F.neg(e.rref.at(i, j));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
  if ((int)b.size() != m.rows) fail(Err::BadArgument, "solve: shape mismatch");
  const Field& F = *m.F;
  Mat aug(m.F, m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  EchelonResult e = row_echelon(aug);
  for (int c : e.pivot_cols)
    if (c == m.cols) return std::nullopt; // pivot in the augmented column
  Vec x(m.cols, F.zero());
  for (int i = 0; i < (int)e.pivot_cols.size(); ++i)
    x[e.pivot_cols[i]] = e.rref.at(i, m.cols);
  return x;
}

FElem determinant(const Mat& m) {
  if (m.rows != m.cols) fail(Err::BadArgument, "determinant of non-square matrix");
  const Field& F = *m.F;
  Mat w = m;
  FElem det = F.one();
  for (int col = 0; col < w.cols; ++col) {
    int sel = -1;
    for (int i = col; i < w.rows; ++i)
      if (!F.is_zero(w.at(i, col))) { sel = i; break; }
    if (sel < 0) return F.zero();
    if (sel != col) {
      for (int j = 0; j < w.cols; ++j) std::swap(w.at(sel, j), w.at(col, j));
      det = F.neg(det);
    }
    det = F.mul(det, w.at(col, col));
    FElem piv_inv = F.inv(w.at(col, col));
    for (int i = col + 1; i < w.rows; ++i) {
      FElem c = F.mul(w.at(i, col), piv_inv);
      if (F.is_zero(c)) continue;
      for (int j = col; j < w.cols; ++j)
        w.at(i, j) = F.sub(w.at(i, j), F.mul(c, w.at(col, j)));
    }
  }
  return det;
}

bool RowSpace::contains(const Vec& v) const {
  if ((int)v.size() != width_) fail(Err::BadArgument, "row space width mismatch");
  Vec w = v;
  const Field& F = *F_;
  for (size_t i = 0; i < rows_.size(); ++i) {
    const FElem c = w[pivots_[i]];
    if (F.is_zero(c)) continue;
    for (int j = pivots_[i]; j < width_; ++j)
      w[j] = F.sub(w[j], F.mul(c, rows_[i][j]));
  }
  for (const auto& x : w)
    if (!F.is_zero(x)) return false;
  return true;
}

bool RowSpace::insert(const Vec& v) {
  if ((int)v.size() != width_) fail(Err::BadArgument, "row space width mismatch");
  Vec w = v;
  const Field& F = *F_;
  for (size_t i = 0; i < rows_.size(); ++i) {
    const FElem c = w[pivots_[i]];
    if (F.is_zero(c)) continue;
    for (int j = pivots_[i]; j < width_; ++j)
      w[j] = F.sub(w[j], F.mul(c, rows_[i][j]));
  }
  int lead = -1;
  for (int j = 0; j < width_; ++j)
    if (!F.is_zero(w[j])) { lead = j; break; }
  if (lead < 0) return false;
  FElem inv = F.inv(w[lead]);
  for (int j = lead; j < width_; ++j) w[j] = F.mul(inv, w[j]);
  // back-substitute into existing rows, keep rows sorted by pivot
  for (size_t i = 0; i < rows_.size(); ++i) {
    const FElem c = rows_[i][lead];
    if (F.is_zero(c)) continue;
    for (int j = lead; j < width_; ++j)
      rows_[i][j] = F.sub(rows_[i][j], F.mul(c, w[j]));
  }
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(w));
  pivots_.insert(pivots_.begin() + pos, lead);
  return true;
}

void RowSpace::insert_all(const std::vector<Vec>& vs) {
  for (const auto& v : vs) insert(v);
}

bool RowSpace::same_space(const RowSpace& o) const {
  if (dim() != o.dim() || width_ != o.width_) return false;
  return pivots_ == o.pivots_ && rows_ == o.rows_; // RREF basis is canonical
}

Vec RowSpace::reduce(const Vec& v) const {
  Vec w = v;
  const Field& F = *F_;
  for (size_t i = 0; i < rows_.size(); ++i) {
    const FElem c = w[pivots_[i]];
    if (F.is_zero(c)) continue;
    for (int j = pivots_[i]; j < width_; ++j)
      w[j] = F.sub(w[j], F.mul(c, rows_[i][j]));
  }
  Vec out;
  std::vector<bool> is_pivot(width_, false);
  for (int p : pivots_) is_pivot[p] = true;
  for (int j = 0; j < width_; ++j)
    if (!is_pivot[j]) out.push_back(w[j]);
  return out;
}

} // namespace ezdkit

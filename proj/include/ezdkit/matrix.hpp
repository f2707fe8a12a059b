#pragma once

#include <optional>
#include <vector>

#include "ezdkit/field.hpp"

namespace ezdkit {

using Vec = std::vector<FElem>;

/// Dense matrix over one field.  Row-major; all mutation goes through the
/// owning field handle so entries stay canonical.
struct Mat {
  FieldPtr F;
  int rows = 0, cols = 0;
  std::vector<FElem> a;

  Mat() = default;
  Mat(FieldPtr f, int r, int c) : F(std::move(f)), rows(r), cols(c), a((size_t)r * c, F->zero()) {}

  FElem& at(int r, int c) { return a[(size_t)r * cols + c]; }
  const FElem& at(int r, int c) const { return a[(size_t)r * cols + c]; }

  static Mat identity(const FieldPtr& f, int n);
  static Mat from_rows(const FieldPtr& f, const std::vector<Vec>& rows);
  Mat transpose() const;
  Mat mul(const Mat& o) const;
  Vec apply(const Vec& v) const; // matrix * column vector
  bool is_zero() const;
  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

struct EchelonResult {
  Mat rref;
  int rank = 0;
  std::vector<int> pivot_cols;
};

/// Reduced row echelon form with deterministic pivoting: columns scanned
/// left to right, first nonzero entry from the current row down.
EchelonResult row_echelon(const Mat& m);

int rank_of(const Mat& m);

/// Basis of {v : M v = 0}; vectors ordered by ascending free column, each
/// with a 1 in its free coordinate.  Count always equals cols - rank.
std::vector<Vec> nullspace(const Mat& m);

/// One exact solution of M x = b with free variables set to zero, or
/// nothing when the system is inconsistent.
std::optional<Vec> solve(const Mat& m, const Vec& b);

FElem determinant(const Mat& m); // square only

/// Incremental row space: supports "is v in the span" and "insert v",
/// keeping a reduced echelon basis.  The workhorse behind subspace
/// comparisons, quotient bases and greedy minimal-generator selection.
class RowSpace {
public:
  explicit RowSpace(FieldPtr f, int width) : F_(std::move(f)), width_(width) {}

  int dim() const { return (int)rows_.size(); }
  int width() const { return width_; }
  bool contains(const Vec& v) const;
  /// Reduces v against the basis; inserts the remainder if nonzero.
  /// Returns true when the dimension grew.
  bool insert(const Vec& v);
  void insert_all(const std::vector<Vec>& vs);
  /// Canonical (RREF) basis rows.
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  bool same_space(const RowSpace& o) const;
  /// Coordinates of the non-pivot positions after reducing v: the canonical
  /// projection onto the quotient by this subspace.
  Vec reduce(const Vec& v) const;

private:
  FieldPtr F_;
  int width_;
  std::vector<Vec> rows_;     // kept in RREF, sorted by pivot column
  std::vector<int> pivots_;
};

} // namespace ezdkit

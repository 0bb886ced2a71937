#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symg/ffield.hpp"
#include "symg/fpoly.hpp"

namespace symg {

// Dense row-major matrix over one field.  Vectors are rows throughout the
// library: a vector is a 1 x n Mat, subspaces are row spans, and linear maps
// act on the right (v -> v * A).
struct Mat {
  FieldRef field;
  uint32_t rows = 0, cols = 0;
  std::vector<FVal> a;

  FVal& at(uint32_t i, uint32_t j) { return a[static_cast<size_t>(i) * cols + j]; }
  const FVal& at(uint32_t i, uint32_t j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }
};

Mat mat_make(const FieldRef& f, uint32_t rows, uint32_t cols);  // zero-filled
Mat mat_identity(const FieldRef& f, uint32_t n);
Mat mat_row(const FieldRef& f, std::vector<FVal> entries);  // 1 x n

bool mat_eq(const Mat& a, const Mat& b);
bool mat_is_zero(const Mat& a);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat mat_neg(const Mat& a);
Mat mat_scale(const Mat& a, const FVal& s);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_transpose(const Mat& a);
Mat mat_hstack(const Mat& a, const Mat& b);
Mat mat_vstack(const Mat& a, const Mat& b);
Mat mat_row_of(const Mat& a, uint32_t i);  // copy of row i as 1 x cols

struct RrefResult {
  Mat m;                        // reduced row echelon form
  uint32_t rank = 0;
  std::vector<uint32_t> pivots;  // pivot column of each of the first rank rows
};

RrefResult rref(const Mat& a);
uint32_t mat_rank(const Mat& a);
Mat mat_inverse(const Mat& a);  // InvalidInput when singular
bool mat_is_invertible(const Mat& a);

// Rows spanning the left null space {v : v a = 0}, in canonical reduced form.
Mat kernel(const Mat& a);

// X with X a = b (row systems), or nullopt when inconsistent.
std::optional<Mat> solve_left(const Mat& a, const Mat& b);

// Horner evaluation of a polynomial at a square matrix.
Mat poly_eval_mat(const FPoly& f, const Mat& a);

// Minimal polynomial, computed from per-vector annihilators via Krylov
// sequences and polynomial lcm.
FPoly min_poly(const Mat& a);

// Row span in canonical form: the basis is the RREF of any generating rows,
// so equal subspaces have identical basis matrices, and key() gives a total
// order usable for deterministic iteration.  The order sorts by dimension,
// then pivot columns, then entry values; in particular the span of e_1
// precedes the span of e_2 in the plane.
class Subspace {
 public:
  Subspace(FieldRef field, uint32_t ambient);  // zero subspace
  static Subspace from_rows(const Mat& rows);

  const FieldRef& field() const { return field_; }
  uint32_t ambient() const { return ambient_; }
  uint32_t dim() const { return basis_.rows; }
  bool is_zero() const { return basis_.rows == 0; }
  const Mat& basis() const { return basis_; }
  const std::vector<uint32_t>& pivots() const { return pivots_; }

  bool contains(const Mat& rowvec) const;
  bool contains_subspace(const Subspace& other) const;
  std::string key() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && mat_eq(a.basis_, b.basis_);
  }

 private:
  FieldRef field_;
  uint32_t ambient_;
  Mat basis_;
  std::vector<uint32_t> pivots_;
};

Subspace subspace_sum(const Subspace& u, const Subspace& w);
Subspace subspace_intersect(const Subspace& u, const Subspace& w);

// {v : v b^T = 0 for every basis row b}: the annihilator under the standard
// dot product.  Double application returns the original subspace.
Subspace dot_perp(const Subspace& s);

// Invertible matrix whose first dim(s) rows are the basis of s, completed
// greedily with standard basis vectors.
Mat complete_basis(const Subspace& s);

}  // namespace symg

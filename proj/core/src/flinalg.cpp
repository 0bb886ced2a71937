#include "symg/flinalg.hpp"

#include <algorithm>

#include "symg/errors.hpp"

namespace symg {
namespace {

void check_same_field(const Mat& a, const Mat& b) {
  require(a.field.get() == b.field.get(), Errc::MixedFields,
          "matrices belong to different fields");
}

void check_same_shape(const Mat& a, const Mat& b) {
  check_same_field(a, b);
  require(a.rows == b.rows && a.cols == b.cols, Errc::AmbientMismatch,
          "matrix shapes differ");
}

void be_append(std::string& s, uint64_t v, int bytes) {
  for (int i = bytes - 1; i >= 0; --i)
    s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

}  // namespace

Mat mat_make(const FieldRef& f, uint32_t rows, uint32_t cols) {
  Mat m;
  m.field = f;
  m.rows = rows;
  m.cols = cols;
  m.a.assign(static_cast<size_t>(rows) * cols, f->zero());
  return m;
}

Mat mat_identity(const FieldRef& f, uint32_t n) {
  Mat m = mat_make(f, n, n);
  for (uint32_t i = 0; i < n; ++i) m.at(i, i) = f->one();
  return m;
}

Mat mat_row(const FieldRef& f, std::vector<FVal> entries) {
  Mat m;
  m.field = f;
  m.rows = 1;
  m.cols = static_cast<uint32_t>(entries.size());
  m.a = std::move(entries);
  return m;
}

bool mat_eq(const Mat& a, const Mat& b) {
  return a.field.get() == b.field.get() && a.rows == b.rows && a.cols == b.cols &&
         a.a == b.a;
}

bool mat_is_zero(const Mat& a) {
  for (const FVal& v : a.a)
    if (!a.field->is_zero(v)) return false;
  return true;
}

Mat mat_add(const Mat& a, const Mat& b) {
  check_same_shape(a, b);
  Mat r = a;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = a.field->add(a.a[i], b.a[i]);
  return r;
}

Mat mat_sub(const Mat& a, const Mat& b) {
  check_same_shape(a, b);
  Mat r = a;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = a.field->sub(a.a[i], b.a[i]);
  return r;
}

Mat mat_neg(const Mat& a) {
  Mat r = a;
  for (FVal& v : r.a) v = a.field->neg(v);
  return r;
}

Mat mat_scale(const Mat& a, const FVal& s) {
  Mat r = a;
  for (FVal& v : r.a) v = a.field->mul(v, s);
  return r;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  check_same_field(a, b);
  require(a.cols == b.rows, Errc::AmbientMismatch, "inner dimensions differ");
  const FieldSpec& F = *a.field;
  Mat r = mat_make(a.field, a.rows, b.cols);
  for (uint32_t i = 0; i < a.rows; ++i) {
    for (uint32_t t = 0; t < a.cols; ++t) {
      const FVal& v = a.at(i, t);
      if (F.is_zero(v)) continue;
      for (uint32_t j = 0; j < b.cols; ++j)
        r.at(i, j) = F.add(r.at(i, j), F.mul(v, b.at(t, j)));
    }
  }
  return r;
}

Mat mat_transpose(const Mat& a) {
  Mat r = mat_make(a.field, a.cols, a.rows);
  for (uint32_t i = 0; i < a.rows; ++i)
    for (uint32_t j = 0; j < a.cols; ++j) r.at(j, i) = a.at(i, j);
  return r;
}

Mat mat_hstack(const Mat& a, const Mat& b) {
  check_same_field(a, b);
  require(a.rows == b.rows, Errc::AmbientMismatch, "row counts differ");
  Mat r = mat_make(a.field, a.rows, a.cols + b.cols);
  for (uint32_t i = 0; i < a.rows; ++i) {
    for (uint32_t j = 0; j < a.cols; ++j) r.at(i, j) = a.at(i, j);
    for (uint32_t j = 0; j < b.cols; ++j) r.at(i, a.cols + j) = b.at(i, j);
  }
  return r;
}

Mat mat_vstack(const Mat& a, const Mat& b) {
  check_same_field(a, b);
  require(a.cols == b.cols, Errc::AmbientMismatch, "column counts differ");
  Mat r = mat_make(a.field, a.rows + b.rows, a.cols);
  std::copy(a.a.begin(), a.a.end(), r.a.begin());
  std::copy(b.a.begin(), b.a.end(), r.a.begin() + a.a.size());
  return r;
}

Mat mat_row_of(const Mat& a, uint32_t i) {
  require(i < a.rows, Errc::AmbientMismatch, "row index out of range");
  Mat r = mat_make(a.field, 1, a.cols);
  for (uint32_t j = 0; j < a.cols; ++j) r.at(0, j) = a.at(i, j);
  return r;
}

RrefResult rref(const Mat& a) {
  const FieldSpec& F = *a.field;
  RrefResult res;
  res.m = a;
  Mat& m = res.m;
  uint32_t row = 0;
  for (uint32_t col = 0; col < a.cols && row < a.rows; ++col) {
    uint32_t sel = row;
    while (sel < a.rows && F.is_zero(m.at(sel, col))) ++sel;
    if (sel == a.rows) continue;
    if (sel != row)
      for (uint32_t j = 0; j < a.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
    FVal piv_inv = F.inv(m.at(row, col));
    for (uint32_t j = col; j < a.cols; ++j) m.at(row, j) = F.mul(m.at(row, j), piv_inv);
    for (uint32_t i = 0; i < a.rows; ++i) {
      if (i == row || F.is_zero(m.at(i, col))) continue;
      FVal factor = m.at(i, col);
      for (uint32_t j = col; j < a.cols; ++j)
        m.at(i, j) = F.sub(m.at(i, j), F.mul(factor, m.at(row, j)));
    }
    res.pivots.push_back(col);
    ++row;
  }
  res.rank = row;
  return res;
}

uint32_t mat_rank(const Mat& a) { return rref(a).rank; }

Mat mat_inverse(const Mat& a) {
  require(a.rows == a.cols, Errc::AmbientMismatch, "only square matrices invert");
  RrefResult r = rref(mat_hstack(a, mat_identity(a.field, a.rows)));
  require(r.rank == a.rows && (a.rows == 0 || r.pivots.back() < a.rows),
          Errc::InvalidInput, "matrix is singular");
  Mat inv = mat_make(a.field, a.rows, a.cols);
  for (uint32_t i = 0; i < a.rows; ++i)
    for (uint32_t j = 0; j < a.cols; ++j) inv.at(i, j) = r.m.at(i, a.cols + j);
  return inv;
}

bool mat_is_invertible(const Mat& a) {
  return a.rows == a.cols && mat_rank(a) == a.rows;
}

Mat kernel(const Mat& a) {
  // v a = 0 becomes a^T v^T = 0; read solutions off the RREF of a^T.
  const FieldSpec& F = *a.field;
  RrefResult r = rref(mat_transpose(a));
  std::vector<uint32_t> free_cols;
  {
    size_t pi = 0;
    for (uint32_t c = 0; c < a.rows; ++c) {
      if (pi < r.pivots.size() && r.pivots[pi] == c) {
        ++pi;
      } else {
        free_cols.push_back(c);
      }
    }
  }
  Mat basis = mat_make(a.field, static_cast<uint32_t>(free_cols.size()), a.rows);
  for (uint32_t t = 0; t < free_cols.size(); ++t) {
    basis.at(t, free_cols[t]) = F.one();
    for (uint32_t i = 0; i < r.rank; ++i)
      basis.at(t, r.pivots[i]) = F.neg(r.m.at(i, free_cols[t]));
  }
  return rref(basis).m;
}

std::optional<Mat> solve_left(const Mat& a, const Mat& b) {
  check_same_field(a, b);
  require(a.cols == b.cols, Errc::AmbientMismatch, "system shapes differ");
  // x a = b row by row: a^T x^T = b^T solved from the RREF of [a^T | b^T].
  RrefResult r = rref(mat_hstack(mat_transpose(a), mat_transpose(b)));
  Mat x = mat_make(a.field, b.rows, a.rows);
  for (uint32_t i = 0; i < r.rank; ++i) {
    if (r.pivots[i] >= a.rows) return std::nullopt;  // pivot in the rhs block
    for (uint32_t s = 0; s < b.rows; ++s) x.at(s, r.pivots[i]) = r.m.at(i, a.rows + s);
  }
  return x;
}

Mat poly_eval_mat(const FPoly& f, const Mat& a) {
  require(a.rows == a.cols, Errc::AmbientMismatch, "matrix must be square");
  Mat acc = mat_make(a.field, a.rows, a.rows);
  for (size_t i = f.c.size(); i-- > 0;) {
    acc = mat_mul(acc, a);
    for (uint32_t d = 0; d < a.rows; ++d)
      acc.at(d, d) = a.field->add(acc.at(d, d), f.c[i]);
  }
  return acc;
}

FPoly min_poly(const Mat& a) {
  require(a.rows == a.cols, Errc::AmbientMismatch, "matrix must be square");
  const FieldSpec& F = *a.field;
  uint32_t n = a.rows;
  if (n == 0) return poly_one(*a.field);
  FPoly m = poly_one(F);

  // Echelonized Krylov rows, each stored with the polynomial that produced
  // it from the start vector.
  struct EchRow {
    std::vector<FVal> v;
    uint32_t pivot;
    FPoly combo;
  };
  for (uint32_t start = 0; start < n && poly_deg(m) < static_cast<int>(n); ++start) {
    std::vector<EchRow> ech;
    Mat raw = mat_make(a.field, 1, n);
    raw.at(0, start) = F.one();
    for (uint32_t step = 0;; ++step) {
      std::vector<FVal> v(raw.a.begin(), raw.a.end());
      FPoly combo;
      combo.c.assign(step + 1, F.zero());
      combo.c[step] = F.one();
      for (const EchRow& e : ech) {
        const FVal c = v[e.pivot];  // copy: the loop below writes v[e.pivot]
        if (F.is_zero(c)) continue;
        for (uint32_t j = 0; j < n; ++j) v[j] = F.sub(v[j], F.mul(c, e.v[j]));
        combo = poly_sub(F, combo, poly_scale(F, e.combo, c));
      }
      uint32_t piv = n;
      for (uint32_t j = 0; j < n; ++j) {
        if (!F.is_zero(v[j])) {
          piv = j;
          break;
        }
      }
      if (piv == n) {
        // Reduction to zero: combo annihilates the start vector and is monic
        // of degree step by construction.
        FPoly g = poly_gcd(F, m, combo);
        m = poly_mul(F, poly_divmod(F, m, g).first, combo);
        break;
      }
      FVal inv = F.inv(v[piv]);
      for (uint32_t j = 0; j < n; ++j) v[j] = F.mul(v[j], inv);
      ech.push_back({std::move(v), piv, poly_scale(F, combo, inv)});
      raw = mat_mul(raw, a);
    }
  }
  return poly_monic(F, m);
}

Subspace::Subspace(FieldRef field, uint32_t ambient)
    : field_(std::move(field)), ambient_(ambient), basis_(mat_make(field_, 0, ambient)) {}

Subspace Subspace::from_rows(const Mat& rows) {
  Subspace s(rows.field, rows.cols);
  RrefResult r = rref(rows);
  s.basis_ = mat_make(rows.field, r.rank, rows.cols);
  for (uint32_t i = 0; i < r.rank; ++i)
    for (uint32_t j = 0; j < rows.cols; ++j) s.basis_.at(i, j) = r.m.at(i, j);
  s.pivots_ = std::move(r.pivots);
  return s;
}

bool Subspace::contains(const Mat& rowvec) const {
  require(rowvec.rows == 1 && rowvec.cols == ambient_, Errc::AmbientMismatch,
          "vector does not live in the ambient space");
  const FieldSpec& F = *field_;
  std::vector<FVal> v(rowvec.a.begin(), rowvec.a.end());
  for (uint32_t i = 0; i < basis_.rows; ++i) {
    const FVal c = v[pivots_[i]];  // copy: the loop below writes this slot
    if (F.is_zero(c)) continue;
    for (uint32_t j = 0; j < ambient_; ++j) v[j] = F.sub(v[j], F.mul(c, basis_.at(i, j)));
  }
  for (const FVal& x : v)
    if (!F.is_zero(x)) return false;
  return true;
}

bool Subspace::contains_subspace(const Subspace& other) const {
  require(ambient_ == other.ambient_ && field_.get() == other.field_.get(),
          Errc::AmbientMismatch, "subspaces live in different ambients");
  for (uint32_t i = 0; i < other.basis_.rows; ++i)
    if (!contains(mat_row_of(other.basis_, i))) return false;
  return true;
}

std::string Subspace::key() const {
  std::string s;
  be_append(s, ambient_, 4);
  be_append(s, dim(), 4);
  for (uint32_t p : pivots_) be_append(s, p, 4);
  for (const FVal& v : basis_.a) be_append(s, field_->to_uint(v), 8);
  return s;
}

Subspace subspace_sum(const Subspace& u, const Subspace& w) {
  require(u.ambient() == w.ambient() && u.field().get() == w.field().get(),
          Errc::AmbientMismatch, "subspaces live in different ambients");
  return Subspace::from_rows(mat_vstack(u.basis(), w.basis()));
}

Subspace dot_perp(const Subspace& s) {
  return Subspace::from_rows(kernel(mat_transpose(s.basis())));
}

Subspace subspace_intersect(const Subspace& u, const Subspace& w) {
  return dot_perp(subspace_sum(dot_perp(u), dot_perp(w)));
}

Mat complete_basis(const Subspace& s) {
  const FieldSpec& F = *s.field();
  uint32_t n = s.ambient();
  Mat out = s.basis();
  // Track independence with a pivot map over reduced copies.
  std::vector<std::vector<FVal>> red;
  std::vector<uint32_t> piv;
  auto reduce_insert = [&](std::vector<FVal> v) -> bool {
    for (size_t i = 0; i < red.size(); ++i) {
      const FVal c = v[piv[i]];  // copy: the loop below writes this slot
      if (F.is_zero(c)) continue;
      for (uint32_t j = 0; j < n; ++j) v[j] = F.sub(v[j], F.mul(c, red[i][j]));
    }
    uint32_t pcol = n;
    for (uint32_t j = 0; j < n; ++j) {
      if (!F.is_zero(v[j])) {
        pcol = j;
        break;
      }
    }
    if (pcol == n) return false;
    FVal inv = F.inv(v[pcol]);
    for (uint32_t j = 0; j < n; ++j) v[j] = F.mul(v[j], inv);
    red.push_back(std::move(v));
    piv.push_back(pcol);
    return true;
  };
  for (uint32_t i = 0; i < out.rows; ++i) {
    std::vector<FVal> v;
    for (uint32_t j = 0; j < n; ++j) v.push_back(out.at(i, j));
    reduce_insert(std::move(v));
  }
  for (uint32_t e = 0; e < n && out.rows < n; ++e) {
    std::vector<FVal> v(n, F.zero());
    v[e] = F.one();
    if (reduce_insert(v)) {
      Mat row = mat_make(s.field(), 1, n);
      row.at(0, e) = F.one();
      out = mat_vstack(out, row);
    }
  }
  return out;
}

}  // namespace symg

#include "symg/flinalg.hpp"

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include "doctest.h"
#include "symg/errors.hpp"
#include "symg/ffield.hpp"
#include "symg/fpoly.hpp"
#include "symg/rng.hpp"

using namespace symg;

namespace {

template <class Fn>
std::optional<Errc> thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const SymgError& e) {
    return e.code;
  }
  return std::nullopt;
}

Mat M(const FieldRef& f, uint32_t rows, uint32_t cols, std::initializer_list<int64_t> vals) {
  Mat m = mat_make(f, rows, cols);
  auto it = vals.begin();
  for (uint32_t i = 0; i < rows; ++i)
    for (uint32_t j = 0; j < cols; ++j) m.at(i, j) = f->from_int(*it++);
  return m;
}

Mat random_mat(const FieldRef& f, uint32_t rows, uint32_t cols, Rng& rng) {
  Mat m = mat_make(f, rows, cols);
  for (FVal& v : m.a) v = f->sample(rng);
  return m;
}

Mat random_invertible(const FieldRef& f, uint32_t n, Rng& rng) {
  for (;;) {
    Mat m = random_mat(f, n, n, rng);
    if (mat_is_invertible(m)) return m;
  }
}

FPoly P(const FieldRef& f, std::initializer_list<int64_t> asc) {
  std::vector<FVal> c;
  for (int64_t v : asc) c.push_back(f->from_int(v));
  return poly_from(*f, std::move(c));
}

}  // namespace

TEST_CASE("matrix arithmetic basics") {
  FieldRef f = make_field(5, 1);
  Mat a = M(f, 2, 2, {1, 2, 3, 4});
  Mat b = M(f, 2, 2, {0, 1, 1, 0});
  CHECK(mat_eq(mat_mul(a, b), M(f, 2, 2, {2, 1, 4, 3})));
  CHECK(mat_eq(mat_add(a, mat_neg(a)), mat_make(f, 2, 2)));
  CHECK(mat_eq(mat_mul(a, mat_identity(f, 2)), a));
  CHECK(mat_eq(mat_mul(mat_identity(f, 2), a), a));
  CHECK(mat_eq(mat_transpose(M(f, 1, 2, {1, 2})), M(f, 2, 1, {1, 2})));
  CHECK(thrown_code([&] { mat_mul(a, M(f, 3, 2, {0, 0, 0, 0, 0, 0})); }) ==
        Errc::AmbientMismatch);
  CHECK(thrown_code([&] { mat_add(a, mat_make(make_field(3, 1), 2, 2)); }) ==
        Errc::MixedFields);
}

TEST_CASE("transpose reverses products") {
  Rng rng(2001);
  FieldRef f = make_field(3, 2);
  for (int it = 0; it < 30; ++it) {
    Mat a = random_mat(f, 3, 4, rng);
    Mat b = random_mat(f, 4, 2, rng);
    CHECK(mat_eq(mat_transpose(mat_mul(a, b)),
                 mat_mul(mat_transpose(b), mat_transpose(a))));
  }
}

TEST_CASE("rref fixed points and frozen example") {
  FieldRef f = make_field(5, 1);
  RrefResult r = rref(M(f, 2, 2, {1, 2, 2, 4}));
  CHECK(r.rank == 1);
  REQUIRE(r.pivots.size() == 1);
  CHECK(r.pivots[0] == 0);
  CHECK(f->to_uint(r.m.at(0, 0)) == 1);
  CHECK(f->to_uint(r.m.at(0, 1)) == 2);
  CHECK(mat_is_zero(mat_row_of(r.m, 1)));

  Rng rng(2002);
  for (int it = 0; it < 50; ++it) {
    Mat a = random_mat(f, 4, 6, rng);
    RrefResult rr = rref(a);
    CHECK(mat_eq(rref(rr.m).m, rr.m));  // idempotent
    CHECK(rr.rank == mat_rank(mat_transpose(a)));  // row rank = column rank
    // Row spaces agree.
    Subspace sa = Subspace::from_rows(a);
    Subspace sr = Subspace::from_rows(rr.m);
    CHECK(sa == sr);
  }
}

TEST_CASE("kernel satisfies rank-nullity and annihilates") {
  Rng rng(2003);
  for (auto [p, k] : std::vector<std::pair<uint64_t, uint32_t>>{{3, 1}, {3, 2}, {7, 1}}) {
    FieldRef f = make_field(p, k);
    for (int it = 0; it < 40; ++it) {
      uint32_t r = 1 + static_cast<uint32_t>(rng.below(5));
      uint32_t c = 1 + static_cast<uint32_t>(rng.below(5));
      Mat a = random_mat(f, r, c, rng);
      Mat kb = kernel(a);
      CHECK(kb.rows == r - mat_rank(a));
      CHECK(mat_is_zero(mat_mul(kb, a)));
      CHECK(mat_eq(rref(kb).m, kb));  // canonical form
      CHECK(mat_rank(kb) == kb.rows);
    }
  }
}

TEST_CASE("inverse and solve") {
  Rng rng(2004);
  FieldRef f = make_field(7, 1);
  for (int it = 0; it < 25; ++it) {
    Mat a = random_invertible(f, 4, rng);
    Mat ai = mat_inverse(a);
    CHECK(mat_eq(mat_mul(a, ai), mat_identity(f, 4)));
    CHECK(mat_eq(mat_mul(ai, a), mat_identity(f, 4)));
  }
  CHECK(thrown_code([&] { mat_inverse(M(f, 2, 2, {1, 2, 2, 4})); }) == Errc::InvalidInput);
  CHECK(thrown_code([&] { mat_inverse(mat_make(f, 2, 3)); }) == Errc::AmbientMismatch);

  for (int it = 0; it < 40; ++it) {
    Mat a = random_mat(f, 3, 5, rng);
    Mat x = random_mat(f, 2, 3, rng);
    Mat b = mat_mul(x, a);
    auto sol = solve_left(a, b);
    REQUIRE(sol.has_value());
    CHECK(mat_eq(mat_mul(*sol, a), b));
  }
  // Inconsistent system: b outside the row space.
  Mat a = M(f, 1, 2, {1, 0});
  Mat b = M(f, 1, 2, {0, 1});
  CHECK(!solve_left(a, b).has_value());
}

TEST_CASE("subspace canonical form and ordering") {
  FieldRef f = make_field(7, 1);
  // Two generating sets of the same plane give identical bases.
  Subspace s1 = Subspace::from_rows(M(f, 2, 3, {1, 1, 0, 0, 2, 1}));
  Subspace s2 = Subspace::from_rows(M(f, 3, 3, {2, 2, 0, 1, 3, 1, 1, 1, 0}));
  CHECK(s1 == s2);
  CHECK(s1.key() == s2.key());
  CHECK(s1.dim() == 2);

  // The axis spanned by e_1 sorts before the axis spanned by e_2.
  Subspace e1 = Subspace::from_rows(M(f, 1, 2, {1, 0}));
  Subspace e2 = Subspace::from_rows(M(f, 1, 2, {0, 1}));
  CHECK(e1.key() < e2.key());
  // Lower dimension sorts first regardless of entries.
  Subspace plane = Subspace::from_rows(M(f, 2, 2, {1, 0, 0, 1}));
  CHECK(e2.key() < plane.key());

  CHECK(s1.contains(M(f, 1, 3, {1, 3, 1})));
  CHECK(!s1.contains(M(f, 1, 3, {0, 0, 1})));
  CHECK(s1.contains_subspace(Subspace::from_rows(M(f, 1, 3, {2, 6, 2}))));
  CHECK(thrown_code([&] { s1.contains(M(f, 1, 2, {1, 0})); }) == Errc::AmbientMismatch);
}

TEST_CASE("sum and intersection obey the dimension law") {
  Rng rng(2005);
  for (auto [p, k] : std::vector<std::pair<uint64_t, uint32_t>>{{3, 1}, {5, 1}, {3, 2}}) {
    FieldRef f = make_field(p, k);
    for (int it = 0; it < 40; ++it) {
      uint32_t n = 2 + static_cast<uint32_t>(rng.below(5));
      Subspace u = Subspace::from_rows(random_mat(f, 1 + static_cast<uint32_t>(rng.below(n)), n, rng));
      Subspace w = Subspace::from_rows(random_mat(f, 1 + static_cast<uint32_t>(rng.below(n)), n, rng));
      Subspace s = subspace_sum(u, w);
      Subspace i = subspace_intersect(u, w);
      CHECK(u.dim() + w.dim() == s.dim() + i.dim());
      CHECK(s.contains_subspace(u));
      CHECK(s.contains_subspace(w));
      CHECK(u.contains_subspace(i));
      CHECK(w.contains_subspace(i));
    }
  }
}

TEST_CASE("dot_perp is an involution with complementary dimension") {
  Rng rng(2006);
  FieldRef f = make_field(3, 1);
  for (int it = 0; it < 40; ++it) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.below(6));
    Subspace s = Subspace::from_rows(random_mat(f, 1 + static_cast<uint32_t>(rng.below(n + 1)), n, rng));
    Subspace perp = dot_perp(s);
    CHECK(perp.dim() == n - s.dim());
    CHECK(mat_is_zero(mat_mul(perp.basis(), mat_transpose(s.basis()))));
    CHECK(dot_perp(perp) == s);
  }
  Subspace zero(f, 3);
  CHECK(dot_perp(zero).dim() == 3);
  CHECK(dot_perp(dot_perp(zero)) == zero);
}

TEST_CASE("complete_basis extends to an invertible matrix") {
  Rng rng(2007);
  FieldRef f = make_field(5, 1);
  for (int it = 0; it < 40; ++it) {
    uint32_t n = 1 + static_cast<uint32_t>(rng.below(6));
    Subspace s = Subspace::from_rows(random_mat(f, static_cast<uint32_t>(rng.below(n + 1)), n, rng));
    Mat c = complete_basis(s);
    CHECK(c.rows == n);
    CHECK(mat_is_invertible(c));
    for (uint32_t i = 0; i < s.dim(); ++i)
      CHECK(mat_eq(mat_row_of(c, i), mat_row_of(s.basis(), i)));
  }
}

TEST_CASE("min_poly on pinned matrices") {
  FieldRef f = make_field(3, 1);
  CHECK(poly_eq(min_poly(mat_identity(f, 3)), P(f, {-1, 1})));
  CHECK(poly_eq(min_poly(mat_make(f, 2, 2)), P(f, {0, 1})));
  // Companion matrix of x^2+1 acting by rows.
  Mat comp = M(f, 2, 2, {0, 1, -1, 0});
  CHECK(poly_eq(min_poly(comp), P(f, {1, 0, 1})));
  // Nilpotent Jordan block.
  CHECK(poly_eq(min_poly(M(f, 2, 2, {0, 1, 0, 0})), P(f, {0, 0, 1})));
  // Distinct eigenvalues 1 and 2.
  CHECK(poly_eq(min_poly(M(f, 2, 2, {1, 0, 0, 2})), P(f, {2, 0, 1})));
}

TEST_CASE("min_poly annihilates and divides powers that annihilate") {
  Rng rng(2008);
  for (auto [p, k] : std::vector<std::pair<uint64_t, uint32_t>>{{3, 1}, {5, 1}, {3, 2}}) {
    FieldRef f = make_field(p, k);
    for (int it = 0; it < 30; ++it) {
      uint32_t n = 1 + static_cast<uint32_t>(rng.below(5));
      Mat a = random_mat(f, n, n, rng);
      FPoly m = min_poly(a);
      CHECK(poly_deg(m) >= 1);
      CHECK(poly_deg(m) <= static_cast<int>(n));
      CHECK(f->is_one(m.c.back()));
      CHECK(mat_is_zero(poly_eval_mat(m, a)));
    }
  }
  // Conjugation preserves the minimal polynomial.
  FieldRef f = make_field(7, 1);
  for (int it = 0; it < 20; ++it) {
    Mat a = random_mat(f, 4, 4, rng);
    Mat t = random_invertible(f, 4, rng);
    Mat conj = mat_mul(mat_inverse(t), mat_mul(a, t));
    CHECK(poly_eq(min_poly(a), min_poly(conj)));
  }
}

TEST_CASE("poly_eval_mat is a ring map in the matrix") {
  Rng rng(2009);
  FieldRef f = make_field(5, 1);
  for (int it = 0; it < 30; ++it) {
    Mat a = random_mat(f, 3, 3, rng);
    FPoly u = P(f, {1, 2, 1});
    FPoly v = P(f, {3, 0, 0, 1});
    CHECK(mat_eq(poly_eval_mat(poly_mul(*f, u, v), a),
                 mat_mul(poly_eval_mat(u, a), poly_eval_mat(v, a))));
    CHECK(mat_eq(poly_eval_mat(poly_add(*f, u, v), a),
                 mat_add(poly_eval_mat(u, a), poly_eval_mat(v, a))));
  }
  CHECK(mat_is_zero(poly_eval_mat(poly_zero(), mat_identity(f, 2))));
  CHECK(mat_eq(poly_eval_mat(P(f, {2}), mat_identity(f, 2)),
               mat_scale(mat_identity(f, 2), f->from_uint(2))));
}

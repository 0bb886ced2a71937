#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "symg/ffield.hpp"
#include "symg/rng.hpp"

namespace symg {

// Dense univariate polynomial over one FieldSpec.  Coefficients ascend; the
// representation is normalized (no trailing zero coefficients), so the zero
// polynomial has an empty coefficient vector.
struct FPoly {
  std::vector<FVal> c;
};

int poly_deg(const FPoly& f);  // -1 for the zero polynomial
bool poly_is_zero(const FPoly& f);
FPoly poly_zero();
FPoly poly_one(const FieldSpec& F);
FPoly poly_x(const FieldSpec& F);
FPoly poly_from(const FieldSpec& F, std::vector<FVal> coeffs);
bool poly_eq(const FPoly& a, const FPoly& b);

FPoly poly_add(const FieldSpec& F, const FPoly& a, const FPoly& b);
FPoly poly_sub(const FieldSpec& F, const FPoly& a, const FPoly& b);
FPoly poly_scale(const FieldSpec& F, const FPoly& a, const FVal& s);
FPoly poly_mul(const FieldSpec& F, const FPoly& a, const FPoly& b);
std::pair<FPoly, FPoly> poly_divmod(const FieldSpec& F, const FPoly& a, const FPoly& b);
FPoly poly_mod(const FieldSpec& F, const FPoly& a, const FPoly& b);
FPoly poly_monic(const FieldSpec& F, const FPoly& a);
FPoly poly_gcd(const FieldSpec& F, FPoly a, FPoly b);  // monic (or zero)
FPoly poly_derivative(const FieldSpec& F, const FPoly& a);
FVal poly_eval(const FieldSpec& F, const FPoly& a, const FVal& x);
FPoly poly_powmod(const FieldSpec& F, FPoly base, uint64_t e, const FPoly& mod);
// base^(q^rounds) mod m where q = |F|; iterated so no exponent ever overflows.
FPoly poly_qpowmod(const FieldSpec& F, FPoly base, uint32_t rounds, const FPoly& mod);

// Rabin's criterion; degree-1 polynomials count as irreducible, constants do
// not.
bool poly_is_irreducible(const FieldSpec& F, const FPoly& f);

struct PolyFactor {
  FPoly f;  // monic irreducible
  uint32_t mult;
};

// Complete factorization into monic irreducibles (squarefree decomposition,
// then distinct-degree, then equal-degree splitting).  Deterministic for a
// given rng seed; the result is sorted by (degree, coefficient indices).
std::vector<PolyFactor> poly_factor(const FieldSpec& F, const FPoly& f, Rng& rng);

// Roots in F, one entry per distinct root, sorted by index.
std::vector<FVal> poly_roots(const FieldSpec& F, const FPoly& f, Rng& rng);

}  // namespace symg

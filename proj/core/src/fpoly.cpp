#include "symg/fpoly.hpp"

#include <algorithm>

#include "symg/errors.hpp"

namespace symg {
namespace {

void trim(const FieldSpec& F, FPoly& f) {
  while (!f.c.empty() && F.is_zero(f.c.back())) f.c.pop_back();
}

// Ordering key used to sort factor lists canonically.
bool poly_less(const FieldSpec& F, const FPoly& a, const FPoly& b) {
  if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
  for (size_t i = a.c.size(); i-- > 0;) {
    uint64_t ua = F.to_uint(a.c[i]), ub = F.to_uint(b.c[i]);
    if (ua != ub) return ua < ub;
  }
  return false;
}

// Coefficient-wise p-th root of a polynomial in x^p (valid in GF(p^k) where
// the root is frobenius applied k-1 times).
FPoly pth_root(const FieldSpec& F, const FPoly& f) {
  FPoly g;
  uint64_t p = F.p();
  for (size_t i = 0; i < f.c.size(); i += p)
    g.c.push_back(F.frobenius(f.c[i], F.k() - 1));
  trim(F, g);
  return g;
}

std::vector<std::pair<FPoly, uint32_t>> squarefree_decomposition(const FieldSpec& F,
                                                                 const FPoly& f);

void equal_degree_split(const FieldSpec& F, const FPoly& g, uint32_t d, Rng& rng,
                        std::vector<FPoly>& out) {
  if (poly_deg(g) == static_cast<int>(d)) {
    out.push_back(poly_monic(F, g));
    return;
  }
  // Cantor-Zassenhaus for odd q.  The exponent (q^d - 1)/2 is taken as
  // ((q^d - 1)/(q - 1)) * ((q - 1)/2): the first part is a product of
  // q^i-th powers, so nothing overflows even for large d.
  uint64_t q = F.size();
  for (int attempt = 0; attempt < 4096; ++attempt) {
    FPoly b;
    for (int i = 0; i < poly_deg(g); ++i) b.c.push_back(F.sample(rng));
    trim(F, b);
    if (poly_deg(b) < 1) continue;
    FPoly h = poly_gcd(F, b, g);
    if (poly_deg(h) >= 1 && poly_deg(h) < poly_deg(g)) {
      equal_degree_split(F, h, d, rng, out);
      equal_degree_split(F, poly_divmod(F, g, h).first, d, rng, out);
      return;
    }
    FPoly c = b;
    FPoly acc = b;
    for (uint32_t i = 1; i < d; ++i) {
      c = poly_qpowmod(F, c, 1, g);
      acc = poly_mod(F, poly_mul(F, acc, c), g);
    }
    acc = poly_powmod(F, acc, (q - 1) / 2, g);
    FPoly one = poly_one(F);
    FPoly split = poly_gcd(F, poly_sub(F, acc, one), g);
    if (poly_deg(split) >= 1 && poly_deg(split) < poly_deg(g)) {
      equal_degree_split(F, split, d, rng, out);
      equal_degree_split(F, poly_divmod(F, g, split).first, d, rng, out);
      return;
    }
  }
  fail(Errc::Inconclusive, "equal-degree splitting did not converge");
}

std::vector<std::pair<FPoly, uint32_t>> squarefree_decomposition(const FieldSpec& F,
                                                                 const FPoly& f) {
  std::vector<std::pair<FPoly, uint32_t>> out;
  FPoly T = poly_monic(F, f);
  if (poly_deg(T) < 1) return out;
  FPoly d = poly_derivative(F, T);
  if (poly_is_zero(d)) {
    // T is a p-th power.
    for (auto& [g, m] : squarefree_decomposition(F, pth_root(F, T)))
      out.emplace_back(g, m * static_cast<uint32_t>(F.p()));
    return out;
  }
  FPoly c = poly_gcd(F, T, d);
  FPoly w = poly_divmod(F, T, c).first;
  uint32_t i = 1;
  while (poly_deg(w) > 0) {
    FPoly y = poly_gcd(F, w, c);
    FPoly z = poly_divmod(F, w, y).first;
    if (poly_deg(z) > 0) out.emplace_back(poly_monic(F, z), i);
    w = y;
    c = poly_divmod(F, c, y).first;
    ++i;
  }
  if (poly_deg(c) > 0) {
    for (auto& [g, m] : squarefree_decomposition(F, pth_root(F, c)))
      out.emplace_back(g, m * static_cast<uint32_t>(F.p()));
  }
  return out;
}

}  // namespace

int poly_deg(const FPoly& f) { return static_cast<int>(f.c.size()) - 1; }
bool poly_is_zero(const FPoly& f) { return f.c.empty(); }
FPoly poly_zero() { return FPoly{}; }

FPoly poly_one(const FieldSpec& F) {
  FPoly f;
  f.c.push_back(F.one());
  return f;
}

FPoly poly_x(const FieldSpec& F) {
  FPoly f;
  f.c.push_back(F.zero());
  f.c.push_back(F.one());
  return f;
}

FPoly poly_from(const FieldSpec& F, std::vector<FVal> coeffs) {
  FPoly f;
  f.c = std::move(coeffs);
  trim(F, f);
  return f;
}

bool poly_eq(const FPoly& a, const FPoly& b) { return a.c == b.c; }

FPoly poly_add(const FieldSpec& F, const FPoly& a, const FPoly& b) {
  FPoly r;
  size_t n = std::max(a.c.size(), b.c.size());
  r.c.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    FVal va = i < a.c.size() ? a.c[i] : F.zero();
    FVal vb = i < b.c.size() ? b.c[i] : F.zero();
    r.c.push_back(F.add(va, vb));
  }
  trim(F, r);
  return r;
}

FPoly poly_sub(const FieldSpec& F, const FPoly& a, const FPoly& b) {
  FPoly r;
  size_t n = std::max(a.c.size(), b.c.size());
  r.c.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    FVal va = i < a.c.size() ? a.c[i] : F.zero();
    FVal vb = i < b.c.size() ? b.c[i] : F.zero();
    r.c.push_back(F.sub(va, vb));
  }
  trim(F, r);
  return r;
}

FPoly poly_scale(const FieldSpec& F, const FPoly& a, const FVal& s) {
  FPoly r;
  r.c.reserve(a.c.size());
  for (const FVal& v : a.c) r.c.push_back(F.mul(v, s));
  trim(F, r);
  return r;
}

FPoly poly_mul(const FieldSpec& F, const FPoly& a, const FPoly& b) {
  if (poly_is_zero(a) || poly_is_zero(b)) return poly_zero();
  FPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, F.zero());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (F.is_zero(a.c[i])) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
  }
  trim(F, r);
  return r;
}

std::pair<FPoly, FPoly> poly_divmod(const FieldSpec& F, const FPoly& a, const FPoly& b) {
  require(!poly_is_zero(b), Errc::DivisionByZero, "polynomial division by zero");
  if (poly_deg(a) < poly_deg(b)) return {poly_zero(), a};
  FVal lead_inv = F.inv(b.c.back());
  FPoly rem = a;
  FPoly quot;
  quot.c.assign(a.c.size() - b.c.size() + 1, F.zero());
  for (int i = poly_deg(a); i >= poly_deg(b); --i) {
    if (static_cast<int>(rem.c.size()) <= i || F.is_zero(rem.c[i])) continue;
    FVal q = F.mul(rem.c[i], lead_inv);
    quot.c[i - poly_deg(b)] = q;
    for (int j = 0; j <= poly_deg(b); ++j) {
      int idx = i - poly_deg(b) + j;
      rem.c[idx] = F.sub(rem.c[idx], F.mul(q, b.c[j]));
    }
  }
  trim(F, rem);
  trim(F, quot);
  return {quot, rem};
}

FPoly poly_mod(const FieldSpec& F, const FPoly& a, const FPoly& b) {
  return poly_divmod(F, a, b).second;
}

FPoly poly_monic(const FieldSpec& F, const FPoly& a) {
  if (poly_is_zero(a) || F.is_one(a.c.back())) return a;
  return poly_scale(F, a, F.inv(a.c.back()));
}

FPoly poly_gcd(const FieldSpec& F, FPoly a, FPoly b) {
  while (!poly_is_zero(b)) {
    FPoly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(F, a);
}

FPoly poly_derivative(const FieldSpec& F, const FPoly& a) {
  FPoly r;
  for (size_t i = 1; i < a.c.size(); ++i)
    r.c.push_back(F.mul(a.c[i], F.constant(i % F.p())));
  trim(F, r);
  return r;
}

FVal poly_eval(const FieldSpec& F, const FPoly& a, const FVal& x) {
  FVal r = F.zero();
  for (size_t i = a.c.size(); i-- > 0;) r = F.add(F.mul(r, x), a.c[i]);
  return r;
}

FPoly poly_powmod(const FieldSpec& F, FPoly base, uint64_t e, const FPoly& mod) {
  FPoly acc = poly_one(F);
  base = poly_mod(F, base, mod);
  while (e) {
    if (e & 1) acc = poly_mod(F, poly_mul(F, acc, base), mod);
    base = poly_mod(F, poly_mul(F, base, base), mod);
    e >>= 1;
  }
  return acc;
}

FPoly poly_qpowmod(const FieldSpec& F, FPoly base, uint32_t rounds, const FPoly& mod) {
  for (uint32_t i = 0; i < rounds; ++i) base = poly_powmod(F, base, F.size(), mod);
  return base;
}

bool poly_is_irreducible(const FieldSpec& F, const FPoly& f) {
  int n = poly_deg(f);
  if (n < 1) return false;
  if (n == 1) return true;
  FPoly m = poly_monic(F, f);
  // x^(q^n) = x mod f, and x^(q^(n/r)) - x coprime to f for prime r | n.
  FPoly x = poly_x(F);
  FPoly h = poly_qpowmod(F, x, static_cast<uint32_t>(n), m);
  if (!poly_eq(h, poly_mod(F, x, m))) return false;
  int rest = n;
  for (int r = 2; r * r <= rest; ++r) {
    if (rest % r) continue;
    while (rest % r == 0) rest /= r;
    FPoly g = poly_qpowmod(F, x, static_cast<uint32_t>(n / r), m);
    FPoly gc = poly_gcd(F, poly_sub(F, g, x), m);
    if (poly_deg(gc) != 0) return false;
  }
  if (rest > 1) {
    FPoly g = poly_qpowmod(F, x, static_cast<uint32_t>(n / rest), m);
    FPoly gc = poly_gcd(F, poly_sub(F, g, x), m);
    if (poly_deg(gc) != 0) return false;
  }
  return true;
}

std::vector<PolyFactor> poly_factor(const FieldSpec& F, const FPoly& f, Rng& rng) {
  require(poly_deg(f) >= 1, Errc::InvalidInput, "cannot factor a constant");
  std::vector<PolyFactor> out;
  for (auto& [part, mult] : squarefree_decomposition(F, f)) {
    // Distinct-degree split of the squarefree part.
    FPoly rest = part;
    FPoly h = poly_x(F);
    for (uint32_t d = 1; 2 * d <= static_cast<uint32_t>(poly_deg(rest)); ++d) {
      h = poly_qpowmod(F, h, 1, rest);
      FPoly g = poly_gcd(F, poly_sub(F, h, poly_x(F)), rest);
      if (poly_deg(g) >= 1) {
        std::vector<FPoly> pieces;
        equal_degree_split(F, g, d, rng, pieces);
        for (FPoly& piece : pieces) out.push_back({std::move(piece), mult});
        rest = poly_divmod(F, rest, g).first;
        h = poly_mod(F, h, rest);
      }
    }
    if (poly_deg(rest) >= 1) out.push_back({poly_monic(F, rest), mult});
  }
  std::sort(out.begin(), out.end(), [&](const PolyFactor& a, const PolyFactor& b) {
    return poly_less(F, a.f, b.f);
  });
  return out;
}

std::vector<FVal> poly_roots(const FieldSpec& F, const FPoly& f, Rng& rng) {
  std::vector<FVal> roots;
  for (const PolyFactor& pf : poly_factor(F, f, rng)) {
    if (poly_deg(pf.f) == 1) roots.push_back(F.neg(pf.f.c[0]));
  }
  std::sort(roots.begin(), roots.end(),
            [&](const FVal& a, const FVal& b) { return F.to_uint(a) < F.to_uint(b); });
  return roots;
}

}  // namespace symg

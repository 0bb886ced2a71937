#include "symg/ffield.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

#include "symg/fpoly.hpp"

namespace symg {
namespace {

bool is_odd_prime(uint64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

// p^k, or 0 on overflow past 2^63.
uint64_t checked_pow(uint64_t p, uint32_t k) {
  unsigned __int128 v = 1;
  for (uint32_t i = 0; i < k; ++i) {
    v *= p;
    if (v >= (static_cast<unsigned __int128>(1) << 63)) return 0;
  }
  return static_cast<uint64_t>(v);
}

std::mutex g_registry_mu;
std::map<std::pair<uint64_t, uint32_t>, FieldRef>& registry() {
  static auto* m = new std::map<std::pair<uint64_t, uint32_t>, FieldRef>();
  return *m;
}

// Lexicographically smallest monic irreducible of degree k over GF(p),
// ordering coefficient tuples (c_{k-1}, ..., c_0).  Scanning indices in
// numeric order walks exactly that ordering.
std::vector<uint32_t> smallest_irreducible(uint64_t p, uint32_t k) {
  FieldRef prime = make_field(p, 1);
  for (uint64_t t = 0;; ++t) {
    FPoly f;
    f.c.reserve(k + 1);
    uint64_t rest = t;
    for (uint32_t i = 0; i < k; ++i) {
      f.c.push_back(prime->constant(rest % p));
      rest /= p;
    }
    f.c.push_back(prime->one());
    if (poly_is_irreducible(*prime, f)) {
      std::vector<uint32_t> out(k + 1);
      for (uint32_t i = 0; i <= k; ++i) out[i] = f.c[i][0];
      return out;
    }
    if (t == checked_pow(p, k) - 1)
      fail(Errc::Internal, "no irreducible polynomial found");
  }
}

}  // namespace

FieldSpec::FieldSpec(uint64_t p, uint32_t k, std::vector<uint32_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)), size_(checked_pow(p, k)) {
  if (k_ > 1) {
    // Frobenius is GF(p)-linear; precompute (x^p)^j so applying it costs k^2
    // scalar operations instead of a full exponentiation.
    FVal base = from_uint(p_);  // the element x has index p
    FVal xp = one();
    uint64_t exp = p_;
    while (exp) {
      if (exp & 1) xp = mul(xp, base);
      base = mul(base, base);
      exp >>= 1;
    }
    frob_pow_.resize(k_);
    frob_pow_[0] = one();
    for (uint32_t j = 1; j < k_; ++j) frob_pow_[j] = mul(frob_pow_[j - 1], xp);
  }
}

FVal FieldSpec::zero() const { return FVal(k_, 0u); }

FVal FieldSpec::one() const {
  FVal v(k_, 0u);
  v[0] = 1;
  return v;
}

FVal FieldSpec::constant(uint64_t c) const {
  FVal v(k_, 0u);
  v[0] = static_cast<uint32_t>(c % p_);
  return v;
}

FVal FieldSpec::from_int(int64_t c) const {
  int64_t m = static_cast<int64_t>(p_);
  int64_t r = c % m;
  if (r < 0) r += m;
  return constant(static_cast<uint64_t>(r));
}

FVal FieldSpec::from_uint(uint64_t index) const {
  FVal v(k_, 0u);
  for (uint32_t i = 0; i < k_ && index; ++i) {
    v[i] = static_cast<uint32_t>(index % p_);
    index /= p_;
  }
  return v;
}

uint64_t FieldSpec::to_uint(const FVal& a) const {
  uint64_t r = 0;
  for (uint32_t i = k_; i-- > 0;) r = r * p_ + a[i];
  return r;
}

bool FieldSpec::is_zero(const FVal& a) const {
  for (uint32_t c : a)
    if (c) return false;
  return true;
}

bool FieldSpec::is_one(const FVal& a) const {
  if (a[0] != 1) return false;
  for (uint32_t i = 1; i < a.size(); ++i)
    if (a[i]) return false;
  return true;
}

FVal FieldSpec::add(const FVal& a, const FVal& b) const {
  FVal r(k_, 0u);
  for (uint32_t i = 0; i < k_; ++i) {
    uint64_t s = static_cast<uint64_t>(a[i]) + b[i];
    r[i] = static_cast<uint32_t>(s >= p_ ? s - p_ : s);
  }
  return r;
}

FVal FieldSpec::sub(const FVal& a, const FVal& b) const {
  FVal r(k_, 0u);
  for (uint32_t i = 0; i < k_; ++i) {
    uint64_t s = static_cast<uint64_t>(a[i]) + p_ - b[i];
    r[i] = static_cast<uint32_t>(s >= p_ ? s - p_ : s);
  }
  return r;
}

FVal FieldSpec::neg(const FVal& a) const {
  FVal r(k_, 0u);
  for (uint32_t i = 0; i < k_; ++i) r[i] = a[i] ? static_cast<uint32_t>(p_ - a[i]) : 0;
  return r;
}

FVal FieldSpec::mul(const FVal& a, const FVal& b) const {
  if (k_ == 1) {
    FVal r(1, 0u);
    r[0] = static_cast<uint32_t>((static_cast<uint64_t>(a[0]) * b[0]) % p_);
    return r;
  }
  // Schoolbook product, then reduce by the monic modulus from the top.
  boost::container::small_vector<unsigned __int128, 8> acc(2 * k_ - 1, 0);
  for (uint32_t i = 0; i < k_; ++i) {
    if (!a[i]) continue;
    uint64_t ai = a[i];
    for (uint32_t j = 0; j < k_; ++j) acc[i + j] += static_cast<unsigned __int128>(ai) * b[j];
  }
  for (uint32_t i = 2 * k_ - 2; i >= k_; --i) {
    uint64_t c = static_cast<uint64_t>(acc[i] % p_);
    if (c) {
      for (uint32_t j = 0; j < k_; ++j) {
        uint32_t mj = modulus_[j];
        if (mj) acc[i - k_ + j] += static_cast<unsigned __int128>(c) * (p_ - mj);
      }
    }
    if (i == k_) break;
  }
  FVal r(k_, 0u);
  for (uint32_t i = 0; i < k_; ++i) r[i] = static_cast<uint32_t>(acc[i] % p_);
  return r;
}

FVal FieldSpec::inv(const FVal& a) const {
  require(!is_zero(a), Errc::DivisionByZero, "inverse of zero");
  // a^(q-2) = a^-1 in GF(q); q < 2^63 so the exponent fits.
  return pow(a, static_cast<int64_t>(size_ - 2));
}

FVal FieldSpec::div(const FVal& a, const FVal& b) const { return mul(a, inv(b)); }

FVal FieldSpec::pow(const FVal& a, int64_t e) const {
  if (e < 0) return pow(inv(a), -e);
  if (e == 0) return one();
  if (is_zero(a)) return zero();
  FVal base = a, acc = one();
  uint64_t exp = static_cast<uint64_t>(e);
  while (exp) {
    if (exp & 1) acc = mul(acc, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return acc;
}

FVal FieldSpec::frobenius(const FVal& a, uint64_t i) const {
  if (k_ == 1) return a;
  i %= k_;
  FVal cur = a;
  for (uint64_t round = 0; round < i; ++round) {
    // Coefficients live in GF(p) and are Frobenius-fixed, so the map is
    // a_j -> a_j * (x^p)^j summed.
    std::vector<uint64_t> acc(k_, 0);
    for (uint32_t j = 0; j < k_; ++j) {
      if (!cur[j]) continue;
      uint64_t c = cur[j];
      const FVal& pj = frob_pow_[j];
      for (uint32_t t = 0; t < k_; ++t) acc[t] = (acc[t] + c * pj[t]) % p_;
    }
    for (uint32_t t = 0; t < k_; ++t) cur[t] = static_cast<uint32_t>(acc[t]);
  }
  return cur;
}

FVal FieldSpec::sample(Rng& rng) const {
  FVal v(k_, 0u);
  for (uint32_t i = 0; i < k_; ++i) v[i] = static_cast<uint32_t>(rng.below(p_));
  return v;
}

FieldRef make_field(uint64_t p, uint32_t k) {
  require(is_odd_prime(p), Errc::NotOddPrime, "p must be an odd prime");
  require(k >= 1 && k <= 24 && checked_pow(p, k) != 0, Errc::DegreeOutOfRange,
          "extension degree out of supported range");
  {
    std::lock_guard<std::mutex> lk(g_registry_mu);
    auto it = registry().find({p, k});
    if (it != registry().end()) return it->second;
  }
  std::vector<uint32_t> modulus;
  if (k == 1) {
    modulus = {0, 1};  // x
  } else {
    modulus = smallest_irreducible(p, k);
  }
  FieldRef spec(new FieldSpec(p, k, std::move(modulus)));
  std::lock_guard<std::mutex> lk(g_registry_mu);
  auto [it, inserted] = registry().try_emplace({p, k}, spec);
  return it->second;
}

FieldElement fe(const FieldRef& f, uint64_t c) { return {f.get(), f->constant(c)}; }
FieldElement fe(const FieldRef& f, const FVal& v) { return {f.get(), v}; }

namespace {
void check_owners(const FieldElement& a, const FieldElement& b) {
  require(a.field && a.field == b.field, Errc::MixedFields,
          "operands belong to different fields");
}
}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  check_owners(a, b);
  return {a.field, a.field->add(a.v, b.v)};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  check_owners(a, b);
  return {a.field, a.field->sub(a.v, b.v)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  check_owners(a, b);
  return {a.field, a.field->mul(a.v, b.v)};
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  check_owners(a, b);
  return {a.field, a.field->div(a.v, b.v)};
}
bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.field == b.field && a.v == b.v;
}

uint32_t min_fixed_degree(const FieldSpec& f, const std::vector<FVal>& elems) {
  for (uint32_t d = 1; d <= f.k(); ++d) {
    if (f.k() % d != 0) continue;
    bool all_fixed = true;
    for (const FVal& e : elems) {
      if (f.frobenius(e, d) != e) {
        all_fixed = false;
        break;
      }
    }
    if (all_fixed) return d;
  }
  return f.k();
}

}  // namespace symg

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "symg/errors.hpp"
#include "symg/rng.hpp"

namespace symg {

// Value of a GF(p^k) element: exactly k residues in [0, p), ascending power
// order.  Equality of reduced values is plain element-wise equality, which
// makes the encoding canonical.  Degrees up to 4 stay inline.
using FVal = boost::container::small_vector<uint32_t, 4>;

class FieldSpec;
using FieldRef = std::shared_ptr<const FieldSpec>;

// GF(p^k) with p an odd prime.  The modulus is the lexicographically smallest
// monic irreducible of degree k over GF(p), ordered by the coefficient tuple
// (c_{k-1}, ..., c_0); the choice is a pure function of (p, k), so two
// processes always agree on the representation.  Instances are interned:
// make_field returns one shared object per (p, k) and pointer identity is
// field identity.  Immutable after construction; safe to share across threads.
class FieldSpec {
 public:
  uint64_t p() const { return p_; }
  uint32_t k() const { return k_; }
  // k+1 coefficients, ascending, monic.  For k = 1 this is x itself.
  const std::vector<uint32_t>& modulus() const { return modulus_; }
  uint64_t size() const { return size_; }  // p^k

  FVal zero() const;
  FVal one() const;
  FVal constant(uint64_t c) const;  // c mod p embedded as a constant
  FVal from_int(int64_t c) const;
  // Index <-> element bijection: index = sum c_i p^i.  Enumeration and
  // canonical value ordering both run through this map.
  FVal from_uint(uint64_t index) const;
  uint64_t to_uint(const FVal& a) const;

  bool is_zero(const FVal& a) const;
  bool is_one(const FVal& a) const;

  FVal add(const FVal& a, const FVal& b) const;
  FVal sub(const FVal& a, const FVal& b) const;
  FVal neg(const FVal& a) const;
  FVal mul(const FVal& a, const FVal& b) const;
  FVal inv(const FVal& a) const;  // DivisionByZero on zero
  FVal div(const FVal& a, const FVal& b) const;
  FVal pow(const FVal& a, int64_t e) const;  // negative e inverts first
  FVal frobenius(const FVal& a, uint64_t i) const;  // a^(p^i)
  FVal sample(Rng& rng) const;

  bool same(const FieldSpec& o) const { return this == &o; }

 private:
  FieldSpec(uint64_t p, uint32_t k, std::vector<uint32_t> modulus);
  friend FieldRef make_field(uint64_t p, uint32_t k);

  void reduce_in_place(std::vector<uint64_t>& acc, FVal& out) const;

  uint64_t p_;
  uint32_t k_;
  std::vector<uint32_t> modulus_;
  uint64_t size_;
  std::vector<FVal> frob_pow_;  // (x^p)^j mod modulus for j in [0, k)
};

// Returns the interned GF(p^k).  p must be an odd prime; 1 <= k <= 24 and
// p^k < 2^63.  Deterministic: equal arguments always produce the identical
// modulus.
FieldRef make_field(uint64_t p, uint32_t k);

// Checked scalar wrapper for call sites that want operator syntax.  The owner
// pointer refers to an interned FieldSpec, so mixing two fields is detected by
// pointer comparison alone.
struct FieldElement {
  const FieldSpec* field = nullptr;
  FVal v;
};

FieldElement fe(const FieldRef& f, uint64_t c);
FieldElement fe(const FieldRef& f, const FVal& v);
FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement operator/(const FieldElement& a, const FieldElement& b);
bool operator==(const FieldElement& a, const FieldElement& b);

// Smallest divisor d of k with a^(p^d) = a for every listed element: the
// degree of the subfield the elements generate.  Empty list gives 1.
uint32_t min_fixed_degree(const FieldSpec& f, const std::vector<FVal>& elems);

}  // namespace symg

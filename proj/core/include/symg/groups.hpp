#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace symg {

class FiniteGroup;
using GroupRef = std::shared_ptr<const FiniteGroup>;

// Finite group given by its full multiplication table.  Elements are indices
// 0..order-1 and index 0 is always the identity.  Instances are immutable and
// shared; two groups are interchangeable whenever their tables agree, which
// same_group tests (catalog memoization may hand back an older object with an
// identical table).
class FiniteGroup {
 public:
  uint32_t order() const { return n_; }
  uint32_t mul(uint32_t a, uint32_t b) const { return table_[static_cast<size_t>(a) * n_ + b]; }
  uint32_t inv(uint32_t a) const { return inv_[a]; }
  uint32_t elem_order(uint32_t a) const;
  uint32_t exponent() const;
  bool is_abelian() const;
  // Deterministic generating set chosen at construction.
  const std::vector<uint32_t>& gens() const { return gens_; }
  const std::vector<uint32_t>& table() const { return table_; }
  // Canonical byte serialization of (order, table); usable as a memo key.
  std::string table_bytes() const;

 private:
  FiniteGroup(uint32_t n, std::vector<uint32_t> table, std::vector<uint32_t> gens);
  friend GroupRef group_from_parts(uint32_t, std::vector<uint32_t>, std::vector<uint32_t>,
                                   bool);

  uint32_t n_;
  std::vector<uint32_t> table_;
  std::vector<uint32_t> inv_;
  std::vector<uint32_t> gens_;
};

bool same_group(const FiniteGroup& a, const FiniteGroup& b);

GroupRef group_cyclic(uint32_t n);
// Direct product in mixed-radix index order: the first factor varies fastest.
GroupRef group_product(const std::vector<GroupRef>& factors);
// Validates closure, identity at 0, Latin-square rows/columns, and full
// associativity; order is capped at 512.
GroupRef group_from_table(uint32_t n, std::vector<uint32_t> flat_table);
// C_n x| C_m with twist r: (i, j)(i', j') = (i + r^j i', j + j'), index
// i + n*j.  Requires gcd(r, n) = 1 and r^m = 1 (mod n).
GroupRef group_semidirect_cyclic(uint32_t n, uint32_t m, uint32_t r);
// Heisenberg group of order q^3 and exponent q (q an odd prime): triples
// (a, b, c) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b'), index
// a*q^2 + b*q + c.
GroupRef group_extraspecial_exp_q(uint32_t q);

// Sorted member list of the subgroup generated by the given elements.
std::vector<uint32_t> subgroup_generated(const FiniteGroup& g,
                                         const std::vector<uint32_t>& gens);

// A subgroup repackaged as a group in its own right.  to_parent maps the new
// indices to parent elements; index 0 stays the identity because member lists
// are sorted and the parent identity is 0.
struct SubgroupView {
  GroupRef group;
  std::vector<uint32_t> to_parent;
};
SubgroupView subgroup_as_group(const GroupRef& g, const std::vector<uint32_t>& members);

std::vector<uint32_t> center(const FiniteGroup& g);
std::vector<std::vector<uint32_t>> conjugacy_classes(const FiniteGroup& g);
bool is_normal(const FiniteGroup& g, const std::vector<uint32_t>& members);

// Every subgroup, as sorted member lists, ordered by (order, members).
// Found by closure-extension search over the subgroup lattice; CapExceeded
// beyond 4096 subgroups.
std::vector<std::vector<uint32_t>> all_subgroups(const FiniteGroup& g);
// The cyclic ones only (every <a>), same ordering.
std::vector<std::vector<uint32_t>> cyclic_subgroups(const FiniteGroup& g);
// The normal ones only, same ordering; includes the trivial and full groups.
std::vector<std::vector<uint32_t>> normal_subgroups(const FiniteGroup& g);

}  // namespace symg

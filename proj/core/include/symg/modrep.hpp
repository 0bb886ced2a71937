#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "symg/flinalg.hpp"
#include "symg/groups.hpp"

namespace symg {

class GModule;
using ModuleRef = std::shared_ptr<const GModule>;
struct SplitResult;

// Full re-verifies the homomorphism property; Trusted skips it for matrices
// that are derived from an already-validated module.
enum class ModuleCheck { Full, Trusted };

namespace detail {
ModuleRef make_module(GroupRef group, FieldRef field, uint32_t dim,
                      std::vector<Mat> gen_mats, ModuleCheck check,
                      int irr_state);
}

// A module over the group algebra, stored as one invertible matrix per group
// generator plus a cache of per-element matrices.  Matrices act on column
// coordinates, x -> rho(g) x, so a row-stored vector v transforms as
// v -> v * rho(g)^T and a subspace of row vectors is invariant when each
// basis row stays inside it under every transposed element matrix.
class GModule {
 public:
  const GroupRef& group() const { return group_; }
  const FieldRef& field() const { return field_; }
  uint32_t dim() const { return dim_; }
  const std::vector<Mat>& gen_mats() const { return gen_mats_; }
  const std::vector<Mat>& elem_mats() const { return elem_mats_; }
  const Mat& elem_mat(uint32_t g) const { return elem_mats_[g]; }

  // Cached verdict from split_once: empty until a split has been attempted.
  std::optional<bool> known_irreducible() const;

 private:
  GModule() = default;
  friend ModuleRef detail::make_module(GroupRef, FieldRef, uint32_t,
                                       std::vector<Mat>, ModuleCheck, int);
  friend SplitResult split_once(const ModuleRef& m);

  GroupRef group_;
  FieldRef field_;
  uint32_t dim_ = 0;
  std::vector<Mat> gen_mats_;
  std::vector<Mat> elem_mats_;
  // 0 = unknown, 1 = irreducible, 2 = reducible.
  mutable std::atomic<int> irr_state_{0};
};

struct Submodule {
  ModuleRef module;
  Subspace space;
};

struct IsotypicComponent {
  ModuleRef irreducible;
  uint32_t multiplicity = 0;
  Subspace carrier;
};

struct IsotypicDecomposition {
  std::vector<IsotypicComponent> components;
};

// Empty `proper` certifies irreducibility; otherwise `proper` is a nonzero
// proper invariant subspace.
struct SplitResult {
  std::optional<Submodule> proper;
};

ModuleRef module_from_action(const GroupRef& group, const FieldRef& field,
                             std::vector<Mat> gen_mats,
                             ModuleCheck check = ModuleCheck::Full);
ModuleRef trivial_module(const GroupRef& group, const FieldRef& field, uint32_t dim);
ModuleRef regular_module(const GroupRef& group, const FieldRef& field);

ModuleRef restrict_module(const ModuleRef& m, const SubgroupView& h);
ModuleRef dual_module(const ModuleRef& m);
ModuleRef direct_sum(const ModuleRef& a, const ModuleRef& b);
// The action induced on an invariant subspace, in its basis coordinates.
ModuleRef sub_module(const ModuleRef& m, const Subspace& s);
// The action induced on ambient / s, in coset-representative coordinates.
ModuleRef quotient_module(const ModuleRef& m, const Subspace& s);

// Smallest invariant subspace containing the rows of `seeds`.
Subspace spin(const GModule& m, const Mat& seeds);
bool is_invariant_subspace(const GModule& m, const Subspace& s);

SplitResult split_once(const ModuleRef& m);
std::vector<ModuleRef> composition_factors(const ModuleRef& m);
// All irreducibles for the pair, from the regular module, deduplicated up to
// isomorphism and canonically sorted.  Memoized per (table, field).
std::vector<ModuleRef> irreducible_catalog(const GroupRef& group, const FieldRef& field);

// Basis of {X : X rho_a(g) = rho_b(g) X for every generator g}.
std::vector<Mat> hom_space(const GModule& a, const GModule& b);
bool are_isomorphic(const ModuleRef& a, const ModuleRef& b);

IsotypicDecomposition isotypic_decomposition(const ModuleRef& m);
bool is_homogeneous(const ModuleRef& m);
// Invariant complement of an invariant subspace, by the averaged projector.
Subspace maschke_complement(const GModule& m, const Subspace& s);

// Every minimal nonzero invariant subspace, canonically sorted.
std::vector<Submodule> simple_submodules(const ModuleRef& m);

ModuleRef extend_scalars(const ModuleRef& m, const FieldRef& e);
ModuleRef galois_twist(const ModuleRef& m, uint32_t i);
// Multiplicative order of p modulo exponent(group).
uint32_t splitting_degree(const FiniteGroup& group, uint64_t p);
// Degree over the prime field of the subfield generated by all traces.
uint32_t character_field_degree(const GModule& m);
bool absolutely_irreducible(const ModuleRef& m);
// True when every designated generator acts as the identity.
bool is_trivial_action(const GModule& m);

// Canonical comparison bytes: dimension then generator entries.
std::vector<uint8_t> module_key(const GModule& m);

}  // namespace symg

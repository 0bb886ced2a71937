#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <vector>

#include "symg/flinalg.hpp"
#include "symg/groups.hpp"
#include "symg/modrep.hpp"

namespace symg {

// A module together with a nonsingular alternating G-invariant gram matrix J.
// Row-stored vectors pair as B(u, v) = u * J * v^T, and invariance means
// rho(g)^T * J * rho(g) = J for every group element.
struct SymplecticModule {
  ModuleRef module;
  Mat gram;

  uint32_t dim() const { return module->dim(); }
  const FieldRef& field() const { return module->field(); }
};

// Validates shape, alternation, nondegeneracy, and invariance over the whole
// element table.
SymplecticModule make_symplectic(const ModuleRef& m, Mat gram);

// {t : B(s, t) = 0 for all s}.  Always invariant; dim s + dim perp = dim b.
Subspace perp(const SymplecticModule& b, const Subspace& s);
bool is_isotropic(const SymplecticModule& b, const Subspace& s);
bool is_self_perpendicular(const SymplecticModule& b, const Subspace& s);

// Running tally of isotropy checks, for harness-level consistency assertions:
// every subspace found isotropic must satisfy 2 dim s <= dim b.
struct IsotropyStats {
  std::atomic<uint64_t> isotropic_seen{0};
  std::atomic<uint64_t> bound_violations{0};
};
IsotropyStats& isotropy_stats();

// The induced form on perp(s)/s for an invariant isotropic s, with enough
// context to pull quotient subspaces back to their preimages inside perp(s).
struct SymplecticQuotient {
  SymplecticModule quotient;
  Subspace isotropic;  // the subspace that was quotiented out
  Mat reps;            // coset representative rows, ambient coordinates

  // Preimage in perp(isotropic) of a subspace of the quotient.
  Subspace lift(const Subspace& sub) const;
};
SymplecticQuotient quotient_symplectic(const SymplecticModule& b, const Subspace& s);

// Depth-first search over isotropic simple submodules, quotienting and
// backtracking; a returned witness S satisfies S = perp(S) exactly.
std::optional<Subspace> find_lagrangian(const SymplecticModule& b);
bool is_hyperbolic(const SymplecticModule& b);

// Independent oracle: enumerates every (dim/2)-dimensional subspace and looks
// for an invariant self-perpendicular one.  Shares no search code with
// find_lagrangian.
bool brute_is_hyperbolic(const SymplecticModule& b);

bool is_anisotropic(const SymplecticModule& b);

// Splits an anisotropic module into pairwise orthogonal simple symplectic
// summands, canonical-first.
std::vector<SymplecticModule> orthogonal_split(const SymplecticModule& b);

struct WittReport {
  // Isotropic simples quotiented out, each in the coordinates of its level.
  std::vector<Subspace> peeled;
  SymplecticModule kernel;
  // Present when the peel reaches dimension zero, lifted to the original
  // coordinates.
  std::optional<Subspace> lagrangian_witness;
};
WittReport witt_peel(const SymplecticModule& b);

// Basis of the space of (not necessarily alternating) invariant forms.
std::vector<Mat> invariant_forms(const GModule& m);

// Basis of the alternating subspace of the invariant forms.
std::vector<Mat> alternating_invariant_forms(const GModule& m);

// A nonsingular alternating invariant form on m, preferring deterministic
// basis sweeps, then exhaustive enumeration when small, then seeded random
// combinations.  Throws NoneFound when provably none exists.
SymplecticModule find_invariant_symplectic(const ModuleRef& m);

// m + dual(m) with the pairing gram [[0, I], [-I, 0]]; m + 0 is a Lagrangian.
SymplecticModule hyperbolic_double(const ModuleRef& m);

// Same space and gram, action restricted to the subgroup.
SymplecticModule restrict_symplectic(const SymplecticModule& b, const SubgroupView& h);

// Block-diagonal orthogonal sum.
SymplecticModule orthogonal_sum(const SymplecticModule& a, const SymplecticModule& b);

// The restricted form on a nondegenerate invariant subspace, in its basis
// coordinates.
SymplecticModule sub_symplectic(const SymplecticModule& b, const Subspace& s);

// Conjugates the action by u and transforms the gram so that the row map
// v -> v * u^T sends old subspaces to new ones.
SymplecticModule change_basis(const SymplecticModule& b, const Mat& u);

}  // namespace symg

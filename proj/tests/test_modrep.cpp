#include "symg/modrep.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <optional>
#include <set>
#include <vector>

#include "doctest.h"
#include "symg/config.hpp"
#include "symg/errors.hpp"
#include "symg/ffield.hpp"
#include "symg/flinalg.hpp"
#include "symg/groups.hpp"

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

// One-dimensional module of a cyclic group sending the generator to c.
ModuleRef character(const GroupRef& g, const FieldRef& f, int64_t c) {
  return module_from_action(g, f, {M(f, 1, 1, {c})});
}

uint64_t scalar_of(const ModuleRef& m) {
  REQUIRE(m->dim() == 1);
  return m->field()->to_uint(m->gen_mats()[0].at(0, 0));
}

std::vector<uint32_t> dims_of(const std::vector<ModuleRef>& mods) {
  std::vector<uint32_t> out;
  for (const auto& m : mods) out.push_back(m->dim());
  return out;
}

// Companion-matrix module of x^4+x^3+x^2+x+1 for the cyclic group of order 5.
ModuleRef c5_four_dim(const FieldRef& f) {
  Mat c = M(f, 4, 4,
            {0, 1, 0, 0,
             0, 0, 1, 0,
             0, 0, 0, 1,
             -1, -1, -1, -1});
  return module_from_action(group_cyclic(5), f, {c});
}

}  // namespace

TEST_CASE("module construction and validation") {
  GroupRef c3 = group_cyclic(3);
  FieldRef f7 = make_field(7, 1);

  ModuleRef chi2 = character(c3, f7, 2);
  CHECK(chi2->dim() == 1);
  CHECK(chi2->group() == c3);
  CHECK(chi2->elem_mats().size() == 3);
  CHECK(f7->to_uint(chi2->elem_mat(2).at(0, 0)) == 4);
  CHECK(!chi2->known_irreducible().has_value());

  CHECK(thrown_code([&] { character(c3, f7, 3); }) == Errc::NotHomomorphism);
  CHECK(thrown_code([&] { character(c3, f7, 0); }) == Errc::SingularGenerator);
  CHECK(thrown_code([&] { module_from_action(c3, f7, {}); }) == Errc::InvalidInput);
  CHECK(thrown_code([&] {
          module_from_action(c3, f7, {M(f7, 1, 2, {1, 0})});
        }) == Errc::AmbientMismatch);
  CHECK(thrown_code([&] {
          module_from_action(c3, make_field(5, 1), {M(f7, 1, 1, {1})});
        }) == Errc::MixedFields);

  // The per-element cache cap rejects huge regular modules.
  CHECK(thrown_code([&] { regular_module(group_cyclic(512), f7); }) ==
        Errc::CapExceeded);

  ModuleRef triv = trivial_module(c3, f7, 2);
  CHECK(triv->dim() == 2);
  CHECK(mat_eq(triv->elem_mat(1), mat_identity(f7, 2)));

  ModuleRef reg = regular_module(c3, f7);
  CHECK(reg->dim() == 3);
  for (uint32_t g = 0; g < 3; ++g)
    for (uint32_t h = 0; h < 3; ++h)
      CHECK(mat_eq(mat_mul(reg->elem_mat(g), reg->elem_mat(h)),
                   reg->elem_mat(c3->mul(g, h))));
}

TEST_CASE("dual restrict and direct sum") {
  GroupRef c3 = group_cyclic(3);
  FieldRef f7 = make_field(7, 1);
  ModuleRef chi2 = character(c3, f7, 2);

  ModuleRef dual = dual_module(chi2);
  CHECK(scalar_of(dual) == 4);
  CHECK(module_key(*dual_module(dual)) == module_key(*chi2));
  CHECK(module_key(*dual_module(trivial_module(c3, f7, 1))) ==
        module_key(*trivial_module(c3, f7, 1)));

  GroupRef c9 = group_cyclic(9);
  ModuleRef chi = character(c9, f7, 2);
  SubgroupView third = subgroup_as_group(c9, {0, 3, 6});
  ModuleRef res = restrict_module(chi, third);
  CHECK(res->group() == third.group);
  CHECK(scalar_of(res) == 1);

  // Restriction and dual commute entry by entry.
  CHECK(module_key(*dual_module(res)) ==
        module_key(*restrict_module(dual_module(chi), third)));

  ModuleRef chi4 = character(c3, f7, 4);
  ModuleRef sum = direct_sum(chi2, chi4);
  CHECK(sum->dim() == 2);
  CHECK(mat_eq(sum->gen_mats()[0], M(f7, 2, 2, {2, 0, 0, 4})));
  CHECK(sum->known_irreducible() == std::optional<bool>(false));
  CHECK(thrown_code([&] { direct_sum(chi2, character(c9, f7, 2)); }) ==
        Errc::GroupMismatch);
  CHECK(thrown_code([&] {
          direct_sum(chi2, character(c3, make_field(5, 1), 1));
        }) == Errc::MixedFields);
}

TEST_CASE("spin and invariant subspaces") {
  GroupRef c3 = group_cyclic(3);
  FieldRef f7 = make_field(7, 1);
  ModuleRef reg = regular_module(c3, f7);

  Subspace line = spin(*reg, M(f7, 1, 3, {1, 1, 1}));
  CHECK(line.dim() == 1);
  CHECK(is_invariant_subspace(*reg, line));

  Subspace full = spin(*reg, M(f7, 1, 3, {1, 0, 0}));
  CHECK(full.dim() == 3);

  Subspace none = spin(*reg, mat_make(f7, 0, 3));
  CHECK(none.dim() == 0);

  Subspace e0 = Subspace::from_rows(M(f7, 1, 3, {1, 0, 0}));
  CHECK(!is_invariant_subspace(*reg, e0));

  CHECK(thrown_code([&] { spin(*reg, mat_make(f7, 1, 2)); }) ==
        Errc::AmbientMismatch);
  CHECK(thrown_code([&] { spin(*reg, mat_make(make_field(5, 1), 1, 3)); }) ==
        Errc::MixedFields);
}

TEST_CASE("sub and quotient actions") {
  GroupRef c3 = group_cyclic(3);
  FieldRef f7 = make_field(7, 1);
  ModuleRef reg = regular_module(c3, f7);
  Subspace line = spin(*reg, M(f7, 1, 3, {1, 1, 1}));

  ModuleRef sub = sub_module(reg, line);
  CHECK(sub->dim() == 1);
  CHECK(scalar_of(sub) == 1);

  ModuleRef quot = quotient_module(reg, line);
  CHECK(quot->dim() == 2);
  auto qf = composition_factors(quot);
  REQUIRE(qf.size() == 2);
  CHECK(scalar_of(qf[0]) == 2);
  CHECK(scalar_of(qf[1]) == 4);

  Subspace e0 = Subspace::from_rows(M(f7, 1, 3, {1, 0, 0}));
  CHECK(thrown_code([&] { sub_module(reg, e0); }) == Errc::NotInvariant);
  CHECK(thrown_code([&] { quotient_module(reg, e0); }) == Errc::NotInvariant);
  CHECK(thrown_code([&] {
          sub_module(reg, Subspace(f7, 2));
        }) == Errc::AmbientMismatch);
}

TEST_CASE("split_once by exhaustive spinning") {
  GroupRef c3 = group_cyclic(3);
  FieldRef f7 = make_field(7, 1);

  ModuleRef triv = trivial_module(c3, f7, 1);
  CHECK(!split_once(triv).proper.has_value());
  CHECK(triv->known_irreducible() == std::optional<bool>(true));

  ModuleRef reg = regular_module(c3, f7);
  auto r = split_once(reg);
  REQUIRE(r.proper.has_value());
  CHECK(r.proper->space.dim() >= 1);
  CHECK(r.proper->space.dim() <= 2);
  CHECK(is_invariant_subspace(*reg, r.proper->space));
  CHECK(reg->known_irreducible() == std::optional<bool>(false));

  ModuleRef four = c5_four_dim(make_field(3, 1));
  CHECK(!split_once(four).proper.has_value());
  CHECK(four->known_irreducible() == std::optional<bool>(true));

  CHECK(thrown_code([&] { split_once(trivial_module(c3, f7, 0)); }) ==
        Errc::InvalidInput);
}

TEST_CASE("split_once by the random method") {
  // A tiny spin cap forces the randomized route on fresh module objects.
  setenv("SYMG_SPIN_CAP", "1", 1);
  FieldRef f3 = make_field(3, 1);

  ModuleRef reg = regular_module(group_cyclic(5), f3);
  auto r = split_once(reg);
  REQUIRE(r.proper.has_value());
  CHECK(is_invariant_subspace(*reg, r.proper->space));
  auto sub_dim = r.proper->space.dim();
  CHECK((sub_dim == 1 || sub_dim == 4));

  ModuleRef four = c5_four_dim(f3);
  CHECK(!split_once(four).proper.has_value());
  CHECK(four->known_irreducible() == std::optional<bool>(true));
  unsetenv("SYMG_SPIN_CAP");
}

TEST_CASE("composition factors") {
  GroupRef c3 = group_cyclic(3);
  FieldRef f7 = make_field(7, 1);

  auto regs = composition_factors(regular_module(c3, f7));
  REQUIRE(regs.size() == 3);
  CHECK(scalar_of(regs[0]) == 1);
  CHECK(scalar_of(regs[1]) == 2);
  CHECK(scalar_of(regs[2]) == 4);

  FieldRef f3 = make_field(3, 1);
  auto c5f = composition_factors(regular_module(group_cyclic(5), f3));
  CHECK(dims_of(c5f) == std::vector<uint32_t>{1, 4});

  // Char 3 divides 9: every factor of the regular module collapses to the
  // trivial one.
  auto c9f = composition_factors(regular_module(group_cyclic(9), f3));
  REQUIRE(c9f.size() == 9);
  for (const auto& m : c9f) {
    CHECK(m->dim() == 1);
    CHECK(scalar_of(m) == 1);
  }

  auto frob = composition_factors(regular_module(group_semidirect_cyclic(7, 3, 2), f3));
  uint32_t total = 0;
  for (const auto& m : frob) total += m->dim();
  CHECK(total == 21);

  // Deterministic output: a second run produces identical keys.
  auto again = composition_factors(regular_module(c3, f7));
  REQUIRE(again.size() == regs.size());
  for (size_t i = 0; i < regs.size(); ++i)
    CHECK(module_key(*again[i]) == module_key(*regs[i]));

  CHECK(composition_factors(trivial_module(c3, f7, 0)).empty());
}

TEST_CASE("irreducible catalog") {
  FieldRef f7 = make_field(7, 1);
  FieldRef f3 = make_field(3, 1);

  auto cat3 = irreducible_catalog(group_cyclic(3), f7);
  REQUIRE(cat3.size() == 3);
  CHECK(scalar_of(cat3[0]) == 1);
  CHECK(scalar_of(cat3[1]) == 2);
  CHECK(scalar_of(cat3[2]) == 4);
  for (const auto& m : cat3)
    CHECK(m->known_irreducible() == std::optional<bool>(true));

  auto cat5 = irreducible_catalog(group_cyclic(5), f3);
  CHECK(dims_of(cat5) == std::vector<uint32_t>{1, 4});

  auto cat1 = irreducible_catalog(group_cyclic(1), make_field(5, 1));
  REQUIRE(cat1.size() == 1);
  CHECK(cat1[0]->dim() == 1);

  // Char 3 divides 9: only the trivial module remains.
  auto cat9 = irreducible_catalog(group_cyclic(9), f3);
  REQUIRE(cat9.size() == 1);
  CHECK(cat9[0]->dim() == 1);

  // Memoized: the same objects come back.
  auto cat3b = irreducible_catalog(group_cyclic(3), f7);
  CHECK(cat3b[1] == cat3[1]);
}

TEST_CASE("catalog of the order 27 extraspecial group") {
  auto cat = irreducible_catalog(group_extraspecial_exp_q(3), make_field(7, 1));
  auto dims = dims_of(cat);
  CHECK(std::count(dims.begin(), dims.end(), 1u) == 9);
  CHECK(std::count(dims.begin(), dims.end(), 3u) == 2);
  CHECK(cat.size() == 11);
}

TEST_CASE("hom spaces") {
  GroupRef c3 = group_cyclic(3);
  FieldRef f7 = make_field(7, 1);
  ModuleRef chi2 = character(c3, f7, 2);
  ModuleRef chi4 = character(c3, f7, 4);

  CHECK(hom_space(*chi2, *chi2).size() == 1);
  CHECK(hom_space(*chi2, *chi4).empty());

  // The endomorphisms of the 4-dimensional module form a degree 4 field.
  ModuleRef four = c5_four_dim(make_field(3, 1));
  CHECK(hom_space(*four, *four).size() == 4);

  // Every matrix intertwines two trivial actions.
  CHECK(hom_space(*trivial_module(c3, f7, 2), *trivial_module(c3, f7, 3)).size() == 6);

  CHECK(thrown_code([&] {
          hom_space(*chi2, *character(group_cyclic(9), f7, 2));
        }) == Errc::GroupMismatch);
}

TEST_CASE("isomorphism testing") {
  GroupRef c3 = group_cyclic(3);
  FieldRef f7 = make_field(7, 1);
  ModuleRef chi1 = character(c3, f7, 1);
  ModuleRef chi2 = character(c3, f7, 2);
  ModuleRef chi4 = character(c3, f7, 4);

  CHECK(are_isomorphic(chi2, chi2));
  CHECK(!are_isomorphic(chi2, chi4));
  CHECK(are_isomorphic(regular_module(c3, f7),
                       direct_sum(direct_sum(chi1, chi2), chi4)));
  CHECK(!are_isomorphic(regular_module(c3, f7),
                        direct_sum(direct_sum(chi1, chi2), chi2)));

  // A modular pair: the regular module has a radical, so it cannot match the
  // semisimple sum of three trivials, even though the factor lists agree.
  FieldRef f3 = make_field(3, 1);
  ModuleRef regm = regular_module(c3, f3);
  ModuleRef trivs = trivial_module(c3, f3, 3);
  CHECK(!are_isomorphic(regm, trivs));
  CHECK(are_isomorphic(regm, regm));

  CHECK(are_isomorphic(trivial_module(c3, f7, 0), trivial_module(c3, f7, 0)));
  CHECK(!are_isomorphic(chi2, trivial_module(c3, f7, 2)));
}

TEST_CASE("isotypic decomposition") {
  GroupRef c3 = group_cyclic(3);
  FieldRef f7 = make_field(7, 1);
  ModuleRef reg = regular_module(c3, f7);

  auto dec = isotypic_decomposition(reg);
  REQUIRE(dec.components.size() == 3);
  Subspace total(f7, 3);
  for (const auto& comp : dec.components) {
    CHECK(comp.multiplicity == 1);
    CHECK(comp.carrier.dim() == 1);
    total = subspace_sum(total, comp.carrier);
  }
  CHECK(total.dim() == 3);
  CHECK(!is_homogeneous(reg));

  ModuleRef chi2 = character(c3, f7, 2);
  auto dbl = isotypic_decomposition(direct_sum(chi2, chi2));
  REQUIRE(dbl.components.size() == 1);
  CHECK(dbl.components[0].multiplicity == 2);
  CHECK(dbl.components[0].carrier.dim() == 2);
  CHECK(is_homogeneous(direct_sum(chi2, chi2)));

  CHECK(thrown_code([&] {
          isotypic_decomposition(regular_module(c3, make_field(3, 1)));
        }) == Errc::ModularCase);
}

TEST_CASE("averaged complements") {
  GroupRef c3 = group_cyclic(3);
  FieldRef f7 = make_field(7, 1);
  ModuleRef reg = regular_module(c3, f7);
  Subspace line = spin(*reg, M(f7, 1, 3, {1, 1, 1}));

  Subspace comp = maschke_complement(*reg, line);
  CHECK(mat_eq(comp.basis(), M(f7, 2, 3, {1, 0, 6, 0, 1, 6})));
  CHECK(is_invariant_subspace(*reg, comp));
  CHECK(subspace_intersect(line, comp).dim() == 0);
  CHECK(subspace_sum(line, comp).dim() == 3);

  CHECK(thrown_code([&] {
          ModuleRef regm = regular_module(c3, make_field(3, 1));
          maschke_complement(*regm, spin(*regm, M(make_field(3, 1), 1, 3, {1, 1, 1})));
        }) == Errc::ModularCase);
  CHECK(thrown_code([&] {
          maschke_complement(*reg, Subspace::from_rows(M(f7, 1, 3, {1, 0, 0})));
        }) == Errc::NotInvariant);
}

TEST_CASE("simple submodules") {
  GroupRef c3 = group_cyclic(3);
  FieldRef f7 = make_field(7, 1);

  ModuleRef four = c5_four_dim(make_field(3, 1));
  auto whole = simple_submodules(four);
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].space.dim() == 4);

  auto lines = simple_submodules(regular_module(c3, f7));
  REQUIRE(lines.size() == 3);
  std::set<std::string> keys;
  for (const auto& s : lines) {
    CHECK(s.space.dim() == 1);
    keys.insert(s.space.key());
  }
  CHECK(keys.size() == 3);
  CHECK(keys.count(spin(*regular_module(c3, f7), M(f7, 1, 3, {1, 1, 1})).key()) == 1);

  // A homogeneous multiplicity 2 piece carries one line per point of the
  // projective line over GF(7).
  ModuleRef chi1 = character(c3, f7, 1);
  auto proj = simple_submodules(direct_sum(chi1, chi1));
  CHECK(proj.size() == 8);

  setenv("SYMG_ENUM_CAP", "2", 1);
  CHECK(thrown_code([&] { simple_submodules(direct_sum(chi1, chi1)); }) ==
        Errc::CapExceeded);
  unsetenv("SYMG_ENUM_CAP");
}

TEST_CASE("scalar extension and twists") {
  FieldRef f3 = make_field(3, 1);
  FieldRef f81 = make_field(3, 4);
  GroupRef c5 = group_cyclic(5);

  ModuleRef four = c5_four_dim(f3);
  CHECK(extend_scalars(four, f3) == four);

  ModuleRef big = extend_scalars(four, f81);
  CHECK(big->field() == f81);
  CHECK(big->dim() == 4);
  auto facs = composition_factors(big);
  CHECK(dims_of(facs) == std::vector<uint32_t>{1, 1, 1, 1});

  // The four factors form one orbit under the field automorphism.
  std::set<std::vector<uint8_t>> keys;
  for (const auto& m : facs) keys.insert(module_key(*m));
  CHECK(keys.size() == 4);
  for (const auto& m : facs)
    CHECK(keys.count(module_key(*galois_twist(m, 1))) == 1);
  CHECK(module_key(*galois_twist(facs[0], 4)) == module_key(*facs[0]));

  // Extending the trivial module keeps identity matrices.
  ModuleRef triv = extend_scalars(trivial_module(c5, f3, 2), f81);
  CHECK(mat_eq(triv->elem_mat(1), mat_identity(f81, 2)));

  CHECK(thrown_code([&] { extend_scalars(four, make_field(5, 1)); }) ==
        Errc::NotAnExtension);
  CHECK(thrown_code([&] {
          extend_scalars(extend_scalars(four, make_field(3, 2)), make_field(3, 3));
        }) == Errc::NotAnExtension);
}

TEST_CASE("splitting and character field degrees") {
  CHECK(splitting_degree(*group_cyclic(5), 3) == 4);
  CHECK(splitting_degree(*group_semidirect_cyclic(7, 3, 2), 5) == 6);
  CHECK(splitting_degree(*group_cyclic(1), 7) == 1);
  CHECK(splitting_degree(*group_extraspecial_exp_q(3), 7) == 1);
  CHECK(thrown_code([&] { splitting_degree(*group_cyclic(5), 5); }) ==
        Errc::PDividesExponent);

  FieldRef f3 = make_field(3, 1);
  FieldRef f81 = make_field(3, 4);
  CHECK(character_field_degree(*trivial_module(group_cyclic(3), f3, 2)) == 1);
  CHECK(character_field_degree(*c5_four_dim(f3)) == 1);

  auto facs = composition_factors(extend_scalars(c5_four_dim(f3), f81));
  CHECK(character_field_degree(*facs[0]) == 4);
}

TEST_CASE("absolute irreducibility") {
  GroupRef c3 = group_cyclic(3);
  FieldRef f7 = make_field(7, 1);
  CHECK(absolutely_irreducible(character(c3, f7, 2)));
  CHECK(!absolutely_irreducible(regular_module(c3, f7)));

  // Irreducible with a 4-dimensional endomorphism ring: not absolute.
  ModuleRef four = c5_four_dim(make_field(3, 1));
  CHECK(!absolutely_irreducible(four));
  auto facs = composition_factors(extend_scalars(four, make_field(3, 4)));
  CHECK(absolutely_irreducible(facs[0]));
}

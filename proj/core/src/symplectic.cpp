#include "symg/symplectic.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "symg/config.hpp"
#include "symg/errors.hpp"
#include "symg/rng.hpp"

namespace symg {

namespace {

constexpr uint64_t kOracleCap = 1000000;
constexpr uint64_t kFormSearchCap = 4096;

std::string bytes_to_string(const std::vector<uint8_t>& v) {
  return std::string(reinterpret_cast<const char*>(v.data()), v.size());
}

bool next_tuple(std::vector<uint64_t>& digits, uint64_t q) {
  for (auto& d : digits) {
    if (++d < q) return true;
    d = 0;
  }
  return false;
}

uint64_t bounded_pow(uint64_t q, uint32_t e, uint64_t cap) {
  uint64_t acc = 1;
  for (uint32_t i = 0; i < e; ++i) {
    if (acc > cap / q) return cap + 1;
    acc *= q;
  }
  return acc;
}

// B(u, v) for all basis pairs: rows * J * rows^T.
Mat pairing_table(const Mat& rows, const Mat& gram) {
  return mat_mul(mat_mul(rows, gram), mat_transpose(rows));
}

// Rebuild a module from derived generator matrices.  A group with no
// designated generators leaves `mats` empty, so the dimension must be passed
// through explicitly.
ModuleRef derived_module(const GroupRef& group, const FieldRef& field,
                         uint32_t dim, std::vector<Mat> mats) {
  if (mats.empty()) return trivial_module(group, field, dim);
  return module_from_action(group, field, std::move(mats), ModuleCheck::Trusted);
}

bool action_is_trivial(const GModule& m) {
  const Mat id = mat_identity(m.field(), m.dim());
  for (const Mat& g : m.gen_mats())
    if (!mat_eq(g, id)) return false;
  return true;
}

FVal pair_val(const SymplecticModule& b, const Mat& rows, uint32_t i, uint32_t j) {
  const FieldRef& f = b.field();
  FVal acc = f->zero();
  for (uint32_t r = 0; r < b.dim(); ++r)
    for (uint32_t c = 0; c < b.dim(); ++c)
      acc = f->add(acc, f->mul(rows.at(i, r), f->mul(b.gram.at(r, c), rows.at(j, c))));
  return acc;
}

// When every generator acts as the identity any subspace is invariant, so a
// Lagrangian exists outright: peel standard hyperbolic planes greedily and
// keep one ray of each.  Deterministic; used to shortcut the search on
// trivial-action restrictions where the simple-submodule fan is the full
// projective space.
Subspace unconstrained_lagrangian(const SymplecticModule& b) {
  const FieldRef& f = b.field();
  const uint32_t d = b.dim();
  Mat space = mat_identity(f, d);
  Mat lagr = mat_make(f, d / 2, d);
  uint32_t taken = 0;
  while (space.rows > 0) {
    uint32_t partner = 0;
    for (uint32_t j = 1; j < space.rows; ++j) {
      if (!f->is_zero(pair_val(b, space, 0, j))) {
        partner = j;
        break;
      }
    }
    require(partner != 0, Errc::Internal, "radical vector in a nonsingular form");
    const FVal scale = f->inv(pair_val(b, space, 0, partner));
    for (uint32_t c = 0; c < d; ++c) {
      lagr.at(taken, c) = space.at(0, c);
      space.at(partner, c) = f->mul(space.at(partner, c), scale);
    }
    ++taken;
    Mat rest = mat_make(f, space.rows - 2, d);
    uint32_t out = 0;
    for (uint32_t u = 1; u < space.rows; ++u) {
      if (u == partner) continue;
      const FVal a = pair_val(b, space, u, partner);  // kill the v component
      const FVal bb = pair_val(b, space, u, 0);       // kill the w component
      for (uint32_t c = 0; c < d; ++c) {
        FVal x = f->sub(space.at(u, c), f->mul(a, space.at(0, c)));
        x = f->add(x, f->mul(bb, space.at(partner, c)));
        rest.at(out, c) = std::move(x);
      }
      ++out;
    }
    space = std::move(rest);
  }
  return Subspace::from_rows(lagr);
}

}  // namespace

IsotropyStats& isotropy_stats() {
  static IsotropyStats stats;
  return stats;
}

SymplecticModule make_symplectic(const ModuleRef& m, Mat gram) {
  require(m != nullptr, Errc::InvalidInput, "null module");
  const uint32_t d = m->dim();
  require(gram.field->same(*m->field()), Errc::MixedFields,
          "gram matrix over a different field");
  require(gram.rows == d && gram.cols == d, Errc::AmbientMismatch,
          "gram matrix shape does not match the module dimension");
  const FieldRef& field = m->field();
  for (uint32_t i = 0; i < d; ++i) {
    require(field->is_zero(gram.at(i, i)), Errc::NotAlternating,
            "gram matrix has a nonzero diagonal entry");
    for (uint32_t j = i + 1; j < d; ++j)
      require(field->is_zero(field->add(gram.at(i, j), gram.at(j, i))),
              Errc::NotAlternating, "gram matrix is not antisymmetric");
  }
  require(mat_is_invertible(gram), Errc::Degenerate, "gram matrix is singular");
  for (const Mat& rho : m->elem_mats())
    require(mat_eq(mat_mul(mat_transpose(rho), mat_mul(gram, rho)), gram),
            Errc::NotInvariant, "gram matrix is not preserved by the action");
  return SymplecticModule{m, std::move(gram)};
}

Subspace perp(const SymplecticModule& b, const Subspace& s) {
  require(s.ambient() == b.dim(), Errc::AmbientMismatch,
          "subspace ambient dimension mismatch");
  return Subspace::from_rows(
      kernel(mat_transpose(mat_mul(s.basis(), b.gram))));
}

bool is_isotropic(const SymplecticModule& b, const Subspace& s) {
  if (!perp(b, s).contains_subspace(s)) return false;
  auto& stats = isotropy_stats();
  stats.isotropic_seen.fetch_add(1);
  if (2 * uint64_t(s.dim()) > b.dim()) stats.bound_violations.fetch_add(1);
  return true;
}

bool is_self_perpendicular(const SymplecticModule& b, const Subspace& s) {
  require(s.ambient() == b.dim(), Errc::AmbientMismatch,
          "subspace ambient dimension mismatch");
  return perp(b, s) == s;
}

Subspace SymplecticQuotient::lift(const Subspace& sub) const {
  require(sub.ambient() == quotient.dim(), Errc::AmbientMismatch,
          "subspace is not in the quotient's coordinates");
  Mat rows = isotropic.basis();
  if (sub.dim() > 0) rows = mat_vstack(rows, mat_mul(sub.basis(), reps));
  return Subspace::from_rows(std::move(rows));
}

SymplecticQuotient quotient_symplectic(const SymplecticModule& b, const Subspace& s) {
  require(s.ambient() == b.dim(), Errc::AmbientMismatch,
          "subspace ambient dimension mismatch");
  require(is_invariant_subspace(*b.module, s), Errc::NotInvariant,
          "subspace is not invariant");
  const Subspace p = perp(b, s);
  require(p.contains_subspace(s), Errc::NotIsotropic,
          "subspace is not isotropic");
  const FieldRef& field = b.field();
  const uint32_t d = b.dim(), k = s.dim(), m = d - 2 * k;

  // Deterministic coset representatives: rows of perp's canonical basis that
  // are independent modulo s.
  Mat reps = mat_make(field, m, d);
  {
    Subspace cur = s;
    uint32_t taken = 0;
    for (uint32_t i = 0; i < p.basis().rows && taken < m; ++i) {
      Mat row = mat_row_of(p.basis(), i);
      if (cur.contains(row)) continue;
      for (uint32_t j = 0; j < d; ++j) reps.at(taken, j) = row.at(0, j);
      ++taken;
      cur = subspace_sum(cur, Subspace::from_rows(row));
    }
    require(taken == m, Errc::Internal, "coset representative count mismatch");
  }

  const Mat full = k > 0 ? mat_vstack(s.basis(), reps) : reps;
  std::vector<Mat> mats;
  for (const Mat& g : b.module->gen_mats()) {
    const Mat img = mat_mul(reps, mat_transpose(g));
    auto coords = solve_left(full, img);
    require(coords.has_value(), Errc::Internal, "image left the perpendicular");
    Mat c = mat_make(field, m, m);
    for (uint32_t i = 0; i < m; ++i)
      for (uint32_t j = 0; j < m; ++j) c.at(i, j) = coords->at(i, k + j);
    mats.push_back(mat_transpose(c));
  }
  ModuleRef qmod = derived_module(b.module->group(), field, m, std::move(mats));
  SymplecticModule q = make_symplectic(qmod, pairing_table(reps, b.gram));
  return SymplecticQuotient{std::move(q), s, std::move(reps)};
}

namespace {

// Group the isotypic components into perpendicular blocks: a self-dual
// component stands alone, a dual pair of components merges.  Distinct blocks
// are mutually perpendicular because Hom(V, dual W) vanishes unless W is
// isomorphic to dual V.
std::vector<Subspace> dual_pair_blocks(const SymplecticModule& b) {
  IsotypicDecomposition dec = isotypic_decomposition(b.module);
  const size_t n = dec.components.size();
  std::vector<bool> used(n, false);
  std::vector<Subspace> blocks;
  for (size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    used[i] = true;
    const ModuleRef dual_i = dual_module(dec.components[i].irreducible);
    Subspace carrier = dec.components[i].carrier;
    for (size_t j = i + 1; j < n; ++j) {
      if (used[j]) continue;
      if (are_isomorphic(dec.components[j].irreducible, dual_i)) {
        used[j] = true;
        carrier = subspace_sum(carrier, dec.components[j].carrier);
        break;
      }
    }
    blocks.push_back(std::move(carrier));
  }
  return blocks;
}

}  // namespace

std::optional<Subspace> find_lagrangian(const SymplecticModule& b) {
  const uint32_t d = b.dim();
  if (d == 0) return Subspace(b.field(), 0);
  if (d % 2 != 0) return std::nullopt;

  // Trivial action: the simple-submodule fan is the whole projective space,
  // but a Lagrangian always exists and a direct construction finds one.
  if (action_is_trivial(*b.module)) {
    Subspace w = unconstrained_lagrangian(b);
    require(is_self_perpendicular(b, w), Errc::Internal,
            "constructed subspace is not self-perpendicular");
    return w;
  }

  // Coprime order: search perpendicular isotypic blocks independently.  Any
  // Lagrangian splits along them (submodules of a semisimple module split
  // isotypically, and the pieces inherit self-perpendicularity blockwise),
  // so a witness exists iff each block has one.
  if (b.module->group()->order() % b.field()->p() != 0) {
    const auto blocks = dual_pair_blocks(b);
    if (blocks.size() > 1) {
      Mat rows = mat_make(b.field(), d / 2, d);
      uint32_t taken = 0;
      for (const Subspace& blk : blocks) {
        const SymplecticModule sub = sub_symplectic(b, blk);
        const auto w = find_lagrangian(sub);
        if (!w.has_value()) return std::nullopt;
        const Mat ambient = mat_mul(w->basis(), blk.basis());
        for (uint32_t r = 0; r < ambient.rows; ++r, ++taken)
          for (uint32_t c = 0; c < d; ++c) rows.at(taken, c) = ambient.at(r, c);
      }
      require(taken == d / 2, Errc::Internal, "block witnesses do not fill");
      Subspace lifted = Subspace::from_rows(rows);
      require(is_self_perpendicular(b, lifted), Errc::Internal,
              "assembled witness is not self-perpendicular");
      return lifted;
    }
  }

  for (const Submodule& sub : simple_submodules(b.module)) {
    if (!is_isotropic(b, sub.space)) continue;
    SymplecticQuotient q = quotient_symplectic(b, sub.space);
    auto w = find_lagrangian(q.quotient);
    if (!w.has_value()) continue;
    Subspace lifted = q.lift(*w);
    require(is_self_perpendicular(b, lifted), Errc::Internal,
            "lifted witness is not self-perpendicular");
    return lifted;
  }
  return std::nullopt;
}

bool is_hyperbolic(const SymplecticModule& b) {
  return find_lagrangian(b).has_value();
}

bool brute_is_hyperbolic(const SymplecticModule& b) {
  const uint32_t d = b.dim();
  if (d == 0) return true;
  if (d % 2 != 0) return false;
  const uint32_t h = d / 2;
  const FieldRef& field = b.field();
  const uint64_t q = field->size();

  // Count candidates: RREF profiles are pivot-column choices, and each free
  // slot (right of its pivot, outside pivot columns) ranges over the field.
  auto free_slots = [&](const std::vector<uint32_t>& piv) {
    std::vector<std::pair<uint32_t, uint32_t>> slots;
    for (uint32_t i = 0; i < h; ++i)
      for (uint32_t j = piv[i] + 1; j < d; ++j)
        if (std::find(piv.begin(), piv.end(), j) == piv.end())
          slots.emplace_back(i, j);
    return slots;
  };
  auto next_combo = [&](std::vector<uint32_t>& piv) {
    int i = int(h) - 1;
    while (i >= 0 && piv[size_t(i)] == d - h + uint32_t(i)) --i;
    if (i < 0) return false;
    ++piv[size_t(i)];
    for (size_t j = size_t(i) + 1; j < h; ++j) piv[j] = piv[j - 1] + 1;
    return true;
  };

  std::vector<uint32_t> piv(h);
  std::iota(piv.begin(), piv.end(), 0);
  uint64_t total = 0;
  do {
    total += bounded_pow(q, uint32_t(free_slots(piv).size()), kOracleCap);
  } while (total <= kOracleCap && next_combo(piv));
  require(total <= kOracleCap, Errc::OracleTooLarge,
          "too many half-dimension subspaces to enumerate");

  std::iota(piv.begin(), piv.end(), 0);
  do {
    const auto slots = free_slots(piv);
    std::vector<uint64_t> digits(slots.size(), 0);
    bool more = true;
    while (more) {
      Mat cand = mat_make(field, h, d);
      for (uint32_t i = 0; i < h; ++i) cand.at(i, piv[i]) = field->one();
      for (size_t t = 0; t < slots.size(); ++t)
        cand.at(slots[t].first, slots[t].second) = field->from_uint(digits[t]);
      if (mat_is_zero(pairing_table(cand, b.gram))) {
        Subspace sub = Subspace::from_rows(cand);
        if (is_invariant_subspace(*b.module, sub)) return true;
      }
      more = next_tuple(digits, q);
    }
  } while (next_combo(piv));
  return false;
}

bool is_anisotropic(const SymplecticModule& b) {
  for (const Submodule& sub : simple_submodules(b.module))
    if (is_isotropic(b, sub.space)) return false;
  return true;
}

SymplecticModule sub_symplectic(const SymplecticModule& b, const Subspace& s) {
  ModuleRef sub = sub_module(b.module, s);
  return make_symplectic(sub, pairing_table(s.basis(), b.gram));
}

std::vector<SymplecticModule> orthogonal_split(const SymplecticModule& b) {
  require(is_anisotropic(b), Errc::NotAnisotropic,
          "module has an isotropic simple submodule");
  std::vector<SymplecticModule> out;
  SymplecticModule cur = b;
  while (cur.dim() > 0) {
    const Subspace u = simple_submodules(cur.module)[0].space;
    const Subspace rest = perp(cur, u);
    require(subspace_intersect(u, rest).dim() == 0, Errc::Internal,
            "radical of a simple summand is nonzero");
    out.push_back(sub_symplectic(cur, u));
    cur = sub_symplectic(cur, rest);
  }
  return out;
}

WittReport witt_peel(const SymplecticModule& b) {
  std::vector<Subspace> peeled;
  std::vector<SymplecticQuotient> chain;
  SymplecticModule cur = b;
  for (;;) {
    std::optional<Subspace> iso;
    for (const Submodule& sub : simple_submodules(cur.module))
      if (is_isotropic(cur, sub.space)) {
        iso = sub.space;
        break;
      }
    if (!iso.has_value()) break;
    SymplecticQuotient q = quotient_symplectic(cur, *iso);
    peeled.push_back(*iso);
    cur = q.quotient;
    chain.push_back(std::move(q));
  }
  WittReport report{std::move(peeled), cur, std::nullopt};
  if (cur.dim() == 0) {
    Subspace w(cur.field(), 0);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) w = it->lift(w);
    report.lagrangian_witness = std::move(w);
  }
  return report;
}

std::vector<Mat> invariant_forms(const GModule& m) {
  const FieldRef& field = m.field();
  const uint32_t d = m.dim();
  const uint32_t unknowns = d * d;
  if (unknowns == 0) return {};
  const size_t gens = m.gen_mats().size();
  Mat eqs = mat_make(field, uint32_t(gens) * d * d, unknowns);
  uint32_t row = 0;
  for (size_t t = 0; t < gens; ++t) {
    const Mat& rho = m.gen_mats()[t];
    for (uint32_t i = 0; i < d; ++i)
      for (uint32_t j = 0; j < d; ++j) {
        // Coefficient of J[r,c] in (rho^T J rho)[i,j] - J[i,j].
        for (uint32_t r = 0; r < d; ++r)
          for (uint32_t c = 0; c < d; ++c) {
            FVal coef = field->mul(rho.at(r, i), rho.at(c, j));
            if (r == i && c == j) coef = field->sub(coef, field->one());
            eqs.at(row, r * d + c) = std::move(coef);
          }
        ++row;
      }
  }
  const Mat sols = kernel(mat_transpose(eqs));
  std::vector<Mat> out;
  out.reserve(sols.rows);
  for (uint32_t s = 0; s < sols.rows; ++s) {
    Mat j = mat_make(field, d, d);
    for (uint32_t r = 0; r < d; ++r)
      for (uint32_t c = 0; c < d; ++c) j.at(r, c) = sols.at(s, r * d + c);
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<Mat> alternating_invariant_forms(const GModule& m) {
  const FieldRef& field = m.field();
  const uint32_t d = m.dim();
  const auto inv = invariant_forms(m);

  // Keep the coefficient combos alpha for which sum(alpha_t inv_t) is
  // antisymmetric with zero diagonal.
  const uint32_t pairs = d * (d + 1) / 2;
  Mat cond = mat_make(field, uint32_t(inv.size()), pairs);
  for (size_t t = 0; t < inv.size(); ++t) {
    uint32_t col = 0;
    for (uint32_t i = 0; i < d; ++i)
      for (uint32_t j = i; j < d; ++j)
        cond.at(uint32_t(t), col++) =
            field->add(inv[t].at(i, j), inv[t].at(j, i));
  }
  const Mat combos = kernel(cond);
  std::vector<Mat> alt;
  for (uint32_t s = 0; s < combos.rows; ++s) {
    Mat j = mat_make(field, d, d);
    for (size_t t = 0; t < inv.size(); ++t)
      j = mat_add(j, mat_scale(inv[t], combos.at(s, uint32_t(t))));
    alt.push_back(std::move(j));
  }
  return alt;
}

SymplecticModule find_invariant_symplectic(const ModuleRef& m) {
  require(m != nullptr, Errc::InvalidInput, "null module");
  const FieldRef& field = m->field();
  const uint32_t d = m->dim();
  const auto alt = alternating_invariant_forms(*m);
  require(!alt.empty(), Errc::NoneFound,
          "no nonzero alternating invariant form exists");

  for (const Mat& j : alt)
    if (mat_is_invertible(j)) return make_symplectic(m, j);

  const uint64_t q = field->size();
  if (bounded_pow(q, uint32_t(alt.size()), kFormSearchCap) <= kFormSearchCap) {
    std::vector<uint64_t> digits(alt.size(), 0);
    while (next_tuple(digits, q)) {
      Mat j = mat_make(field, d, d);
      for (size_t t = 0; t < alt.size(); ++t) {
        if (digits[t] == 0) continue;
        j = mat_add(j, mat_scale(alt[t], field->from_uint(digits[t])));
      }
      if (mat_is_invertible(j)) return make_symplectic(m, j);
    }
    fail(Errc::NoneFound, "every alternating invariant form is singular");
  }
  Rng rng(hash_bytes(bytes_to_string(module_key(*m))));
  for (uint64_t t = 0; t < kFormSearchCap; ++t) {
    Mat j = mat_make(field, d, d);
    for (const Mat& a : alt) j = mat_add(j, mat_scale(a, field->sample(rng)));
    if (mat_is_invertible(j)) return make_symplectic(m, j);
  }
  fail(Errc::CapExceeded, "no nonsingular form found within the attempt budget");
}

SymplecticModule hyperbolic_double(const ModuleRef& m) {
  require(m != nullptr, Errc::InvalidInput, "null module");
  const FieldRef& field = m->field();
  const uint32_t d = m->dim();
  ModuleRef sum = direct_sum(m, dual_module(m));
  Mat gram = mat_make(field, 2 * d, 2 * d);
  for (uint32_t i = 0; i < d; ++i) {
    gram.at(i, d + i) = field->one();
    gram.at(d + i, i) = field->neg(field->one());
  }
  return make_symplectic(sum, std::move(gram));
}

SymplecticModule restrict_symplectic(const SymplecticModule& b, const SubgroupView& h) {
  return make_symplectic(restrict_module(b.module, h), b.gram);
}

SymplecticModule orthogonal_sum(const SymplecticModule& a, const SymplecticModule& b) {
  const uint32_t da = a.dim(), db = b.dim();
  ModuleRef sum = direct_sum(a.module, b.module);
  Mat gram = mat_make(a.field(), da + db, da + db);
  for (uint32_t i = 0; i < da; ++i)
    for (uint32_t j = 0; j < da; ++j) gram.at(i, j) = a.gram.at(i, j);
  for (uint32_t i = 0; i < db; ++i)
    for (uint32_t j = 0; j < db; ++j) gram.at(da + i, da + j) = b.gram.at(i, j);
  return make_symplectic(sum, std::move(gram));
}

SymplecticModule change_basis(const SymplecticModule& b, const Mat& u) {
  require(u.field->same(*b.field()), Errc::MixedFields,
          "basis change over a different field");
  require(u.rows == b.dim() && u.cols == b.dim(), Errc::AmbientMismatch,
          "basis change matrix shape mismatch");
  require(mat_is_invertible(u), Errc::InvalidInput,
          "basis change matrix is singular");
  const Mat ui = mat_inverse(u);
  std::vector<Mat> mats;
  for (const Mat& g : b.module->gen_mats())
    mats.push_back(mat_mul(mat_mul(u, g), ui));
  ModuleRef conj = derived_module(b.module->group(), b.field(), b.dim(),
                                  std::move(mats));
  Mat gram = mat_mul(mat_mul(mat_transpose(ui), b.gram), ui);
  return make_symplectic(conj, std::move(gram));
}

}  // namespace symg

#include "symg/modrep.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>

#include "symg/config.hpp"
#include "symg/errors.hpp"
#include "symg/fpoly.hpp"
#include "symg/rng.hpp"

namespace symg {

namespace {

// Bound on |G| * dim^2, the entry count of the per-element matrix cache.
constexpr uint64_t kElemCacheCap = uint64_t{1} << 21;

// q^e, saturating at cap + 1.
uint64_t bounded_pow(uint64_t q, uint32_t e, uint64_t cap) {
  uint64_t acc = 1;
  for (uint32_t i = 0; i < e; ++i) {
    if (acc > cap / q) return cap + 1;
    acc *= q;
  }
  return acc;
}

// Little-endian odometer over element indices; false once it wraps to zero.
bool next_tuple(std::vector<uint64_t>& digits, uint64_t q) {
  for (auto& d : digits) {
    if (++d < q) return true;
    d = 0;
  }
  return false;
}

std::string bytes_to_string(const std::vector<uint8_t>& v) {
  return std::string(reinterpret_cast<const char*>(v.data()), v.size());
}

void append_be64(std::vector<uint8_t>& out, uint64_t v) {
  for (int s = 56; s >= 0; s -= 8) out.push_back(uint8_t(v >> s));
}

std::vector<Mat> transposed(const std::vector<Mat>& mats) {
  std::vector<Mat> out;
  out.reserve(mats.size());
  for (const auto& m : mats) out.push_back(mat_transpose(m));
  return out;
}

// Closes the seed rows under v -> v * M for every matrix in `mats`.
Subspace spin_rows(const FieldRef& field, uint32_t dim,
                   const std::vector<Mat>& mats, const Mat& seeds) {
  // Echelon rows sorted by pivot so reduction can run in pivot order.
  std::vector<std::pair<std::vector<FVal>, uint32_t>> ech;
  std::vector<std::vector<FVal>> work;
  auto insert = [&](std::vector<FVal> v) {
    for (const auto& [row, piv] : ech) {
      const FVal c = v[piv];  // copy: the loop below writes this slot
      if (field->is_zero(c)) continue;
      for (uint32_t j = piv; j < dim; ++j)
        v[j] = field->sub(v[j], field->mul(c, row[j]));
    }
    uint32_t p = dim;
    for (uint32_t j = 0; j < dim; ++j)
      if (!field->is_zero(v[j])) {
        p = j;
        break;
      }
    if (p == dim) return;
    const FVal inv = field->inv(v[p]);
    for (uint32_t j = p; j < dim; ++j) v[j] = field->mul(v[j], inv);
    auto pos = std::lower_bound(
        ech.begin(), ech.end(), p,
        [](const auto& e, uint32_t col) { return e.second < col; });
    ech.insert(pos, {v, p});
    work.push_back(std::move(v));
  };
  for (uint32_t i = 0; i < seeds.rows; ++i) {
    std::vector<FVal> v(seeds.a.begin() + size_t(i) * dim,
                        seeds.a.begin() + size_t(i + 1) * dim);
    insert(std::move(v));
  }
  while (!work.empty() && ech.size() < dim) {
    const std::vector<FVal> v = std::move(work.back());
    work.pop_back();
    for (const Mat& m : mats) {
      std::vector<FVal> w(dim, field->zero());
      for (uint32_t c = 0; c < dim; ++c) {
        if (field->is_zero(v[c])) continue;
        for (uint32_t j = 0; j < dim; ++j)
          w[j] = field->add(w[j], field->mul(v[c], m.at(c, j)));
      }
      insert(std::move(w));
      if (ech.size() == dim) break;
    }
  }
  Mat rows = mat_make(field, uint32_t(ech.size()), dim);
  for (uint32_t i = 0; i < rows.rows; ++i)
    for (uint32_t j = 0; j < dim; ++j) rows.at(i, j) = ech[i].first[j];
  return Subspace::from_rows(rows);
}

}  // namespace

std::optional<bool> GModule::known_irreducible() const {
  int s = irr_state_.load();
  if (s == 0) return std::nullopt;
  return s == 1;
}

namespace detail {

ModuleRef make_module(GroupRef group, FieldRef field, uint32_t dim,
                      std::vector<Mat> gen_mats, ModuleCheck check,
                      int irr_state) {
  require(group != nullptr && field != nullptr, Errc::InvalidInput,
          "module needs a group and a field");
  const uint32_t n = group->order();
  const auto& gens = group->gens();
  require(gen_mats.size() == gens.size(), Errc::InvalidInput,
          "need one matrix per group generator");
  const uint64_t cache = uint64_t(n) * dim * dim;
  require(cache <= kElemCacheCap, Errc::CapExceeded,
          "element matrix cache would exceed the size cap");
  for (const Mat& g : gen_mats) {
    require(g.field->same(*field), Errc::MixedFields,
            "generator matrix over a different field");
    require(g.rows == dim && g.cols == dim, Errc::AmbientMismatch,
            "generator matrix shape does not match the dimension");
    require(mat_is_invertible(g), Errc::SingularGenerator,
            "generator matrix is singular");
  }

  // Breadth-first word decomposition from the identity.
  std::vector<Mat> elems(n, Mat{});
  std::vector<char> known(n, 0);
  elems[0] = mat_identity(field, dim);
  known[0] = 1;
  std::vector<uint32_t> queue = {0};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const uint32_t h = queue[qi];
    for (size_t t = 0; t < gens.size(); ++t) {
      const uint32_t hg = group->mul(h, gens[t]);
      if (known[hg]) continue;
      elems[hg] = mat_mul(elems[h], gen_mats[t]);
      known[hg] = 1;
      queue.push_back(hg);
    }
  }
  require(queue.size() == n, Errc::Internal, "generators failed to reach the group");

  if (check == ModuleCheck::Full) {
    if (n <= 30) {
      for (uint32_t g = 0; g < n; ++g)
        for (uint32_t h = 0; h < n; ++h)
          require(mat_eq(mat_mul(elems[g], elems[h]), elems[group->mul(g, h)]),
                  Errc::NotHomomorphism,
                  "matrices do not respect the multiplication table");
    } else {
      // Partial check at larger orders: each generator's order must hold.
      for (size_t t = 0; t < gens.size(); ++t) {
        Mat acc = mat_identity(field, dim);
        const uint32_t ord = group->elem_order(gens[t]);
        for (uint32_t i = 0; i < ord; ++i) acc = mat_mul(acc, gen_mats[t]);
        require(mat_eq(acc, elems[0]), Errc::NotHomomorphism,
                "generator matrix order does not divide the group element order");
      }
    }
  }

  auto mod = std::shared_ptr<GModule>(new GModule());
  mod->group_ = std::move(group);
  mod->field_ = std::move(field);
  mod->dim_ = dim;
  mod->gen_mats_ = std::move(gen_mats);
  mod->elem_mats_ = std::move(elems);
  mod->irr_state_.store(irr_state);
  return mod;
}

}  // namespace detail

ModuleRef module_from_action(const GroupRef& group, const FieldRef& field,
                             std::vector<Mat> gen_mats, ModuleCheck check) {
  const uint32_t dim = gen_mats.empty() ? 0 : gen_mats[0].rows;
  return detail::make_module(group, field, dim, std::move(gen_mats), check, 0);
}

ModuleRef trivial_module(const GroupRef& group, const FieldRef& field,
                         uint32_t dim) {
  require(group != nullptr, Errc::InvalidInput, "null group");
  std::vector<Mat> mats(group->gens().size(), mat_identity(field, dim));
  return detail::make_module(group, field, dim, std::move(mats),
                             ModuleCheck::Trusted, dim == 1 ? 1 : 0);
}

ModuleRef regular_module(const GroupRef& group, const FieldRef& field) {
  require(group != nullptr, Errc::InvalidInput, "null group");
  const uint32_t n = group->order();
  std::vector<Mat> mats;
  mats.reserve(group->gens().size());
  for (uint32_t g : group->gens()) {
    Mat p = mat_make(field, n, n);
    for (uint32_t i = 0; i < n; ++i) p.at(i, group->mul(i, g)) = field->one();
    mats.push_back(std::move(p));
  }
  return detail::make_module(group, field, n, std::move(mats),
                             ModuleCheck::Full, 0);
}

ModuleRef restrict_module(const ModuleRef& m, const SubgroupView& h) {
  require(m != nullptr && h.group != nullptr, Errc::InvalidInput, "null module");
  require(h.to_parent.size() == h.group->order(), Errc::NotSubgroup,
          "subgroup view is inconsistent");
  const uint32_t pn = m->group()->order();
  std::vector<Mat> mats;
  for (uint32_t g : h.group->gens()) {
    const uint32_t parent = h.to_parent[g];
    require(parent < pn, Errc::NotSubgroup, "subgroup element outside the group");
    mats.push_back(m->elem_mat(parent));
  }
  return detail::make_module(h.group, m->field(), m->dim(), std::move(mats),
                             ModuleCheck::Trusted, 0);
}

ModuleRef dual_module(const ModuleRef& m) {
  require(m != nullptr, Errc::InvalidInput, "null module");
  std::vector<Mat> mats;
  for (const Mat& g : m->gen_mats())
    mats.push_back(mat_transpose(mat_inverse(g)));
  const auto st = m->known_irreducible();
  return detail::make_module(m->group(), m->field(), m->dim(), std::move(mats),
                             ModuleCheck::Trusted, !st ? 0 : (*st ? 1 : 2));
}

ModuleRef direct_sum(const ModuleRef& a, const ModuleRef& b) {
  require(a != nullptr && b != nullptr, Errc::InvalidInput, "null module");
  require(same_group(*a->group(), *b->group()), Errc::GroupMismatch,
          "direct sum needs one group");
  require(a->field()->same(*b->field()), Errc::MixedFields,
          "direct sum needs one field");
  const uint32_t da = a->dim(), db = b->dim();
  std::vector<Mat> mats;
  for (size_t t = 0; t < a->gen_mats().size(); ++t) {
    Mat blk = mat_make(a->field(), da + db, da + db);
    const Mat& ga = a->gen_mats()[t];
    const Mat& gb = b->gen_mats()[t];
    for (uint32_t i = 0; i < da; ++i)
      for (uint32_t j = 0; j < da; ++j) blk.at(i, j) = ga.at(i, j);
    for (uint32_t i = 0; i < db; ++i)
      for (uint32_t j = 0; j < db; ++j) blk.at(da + i, da + j) = gb.at(i, j);
    mats.push_back(std::move(blk));
  }
  int state = 0;
  if (da > 0 && db > 0) state = 2;
  else if (da == 0 && b->known_irreducible()) state = *b->known_irreducible() ? 1 : 2;
  else if (db == 0 && a->known_irreducible()) state = *a->known_irreducible() ? 1 : 2;
  return detail::make_module(a->group(), a->field(), da + db, std::move(mats),
                             ModuleCheck::Trusted, state);
}

ModuleRef sub_module(const ModuleRef& m, const Subspace& s) {
  require(m != nullptr, Errc::InvalidInput, "null module");
  require(s.ambient() == m->dim(), Errc::AmbientMismatch,
          "subspace ambient dimension mismatch");
  require(is_invariant_subspace(*m, s), Errc::NotInvariant,
          "subspace is not invariant");
  const Mat& basis = s.basis();
  std::vector<Mat> mats;
  for (const Mat& g : m->gen_mats()) {
    const Mat img = mat_mul(basis, mat_transpose(g));
    auto coords = solve_left(basis, img);
    require(coords.has_value(), Errc::Internal, "invariant image left the span");
    mats.push_back(mat_transpose(*coords));
  }
  return detail::make_module(m->group(), m->field(), s.dim(), std::move(mats),
                             ModuleCheck::Trusted, 0);
}

ModuleRef quotient_module(const ModuleRef& m, const Subspace& s) {
  require(m != nullptr, Errc::InvalidInput, "null module");
  require(s.ambient() == m->dim(), Errc::AmbientMismatch,
          "subspace ambient dimension mismatch");
  require(is_invariant_subspace(*m, s), Errc::NotInvariant,
          "subspace is not invariant");
  const uint32_t d = m->dim(), sd = s.dim(), qd = d - sd;
  const Mat full = complete_basis(s);
  Mat reps = mat_make(m->field(), qd, d);
  for (uint32_t i = 0; i < qd; ++i)
    for (uint32_t j = 0; j < d; ++j) reps.at(i, j) = full.at(sd + i, j);
  std::vector<Mat> mats;
  for (const Mat& g : m->gen_mats()) {
    const Mat img = mat_mul(reps, mat_transpose(g));
    auto coords = solve_left(full, img);
    require(coords.has_value(), Errc::Internal, "completed basis is not a basis");
    Mat c = mat_make(m->field(), qd, qd);
    for (uint32_t i = 0; i < qd; ++i)
      for (uint32_t j = 0; j < qd; ++j) c.at(i, j) = coords->at(i, sd + j);
    mats.push_back(mat_transpose(c));
  }
  return detail::make_module(m->group(), m->field(), qd, std::move(mats),
                             ModuleCheck::Trusted, 0);
}

Subspace spin(const GModule& m, const Mat& seeds) {
  require(seeds.field->same(*m.field()), Errc::MixedFields,
          "seed rows over a different field");
  require(seeds.cols == m.dim(), Errc::AmbientMismatch,
          "seed rows of the wrong width");
  return spin_rows(m.field(), m.dim(), transposed(m.gen_mats()), seeds);
}

bool is_invariant_subspace(const GModule& m, const Subspace& s) {
  require(s.ambient() == m.dim(), Errc::AmbientMismatch,
          "subspace ambient dimension mismatch");
  for (const Mat& g : m.gen_mats()) {
    const Mat img = mat_mul(s.basis(), mat_transpose(g));
    for (uint32_t i = 0; i < img.rows; ++i)
      if (!s.contains(mat_row_of(img, i))) return false;
  }
  return true;
}

SplitResult split_once(const ModuleRef& m) {
  require(m != nullptr, Errc::InvalidInput, "null module");
  const uint32_t d = m->dim();
  require(d >= 1, Errc::InvalidInput, "cannot split a zero-dimensional module");
  if (m->irr_state_.load() == 1) return {};
  const FieldRef& field = m->field();
  auto certify = [&]() -> SplitResult {
    m->irr_state_.store(1);
    return {};
  };
  auto found = [&](Subspace s) -> SplitResult {
    m->irr_state_.store(2);
    return {Submodule{m, std::move(s)}};
  };
  if (d == 1) return certify();

  const uint64_t q = field->size();
  auto sweep_lines = [&]() -> SplitResult {
    // Exact method: spin one representative per line.  A representative has
    // its first nonzero coordinate equal to one.
    std::vector<uint64_t> digits(d, 0);
    while (next_tuple(digits, q)) {
      size_t first = 0;
      while (digits[first] == 0) ++first;
      if (digits[first] != 1) continue;
      Mat v = mat_make(field, 1, d);
      for (uint32_t j = 0; j < d; ++j) v.at(0, j) = field->from_uint(digits[j]);
      Subspace s = spin(*m, v);
      if (s.dim() < d) return found(std::move(s));
    }
    return certify();
  };
  const bool sweepable = bounded_pow(q, d, spin_cap()) <= spin_cap();
  // Tiny spaces are cheaper to sweep outright than to probe randomly; larger
  // ones go to the randomized search first because a full sweep of an
  // irreducible module must touch every line before it can certify.
  constexpr uint64_t kDirectSweep = uint64_t(1) << 12;
  if (sweepable && bounded_pow(q, d, kDirectSweep) <= kDirectSweep)
    return sweep_lines();

  // Meataxe with a deterministic seed derived from the module itself.
  Rng rng(hash_bytes(bytes_to_string(module_key(*m))));
  const uint32_t n = m->group()->order();
  const std::vector<Mat> gen_t = transposed(m->gen_mats());
  const int tries = meataxe_tries();
  for (int t = 0; t < tries; ++t) {
    Mat theta = mat_make(field, d, d);
    const uint64_t terms = 1 + rng.below(3);
    for (uint64_t i = 0; i < terms; ++i)
      theta = mat_add(theta,
                      mat_scale(m->elem_mat(uint32_t(rng.below(n))),
                                field->sample(rng)));
    if (mat_is_zero(theta)) continue;
    const FPoly mp = min_poly(theta);
    const auto facs = poly_factor(*field, mp, rng);
    for (const auto& fac : facs) {
      const Mat big_n = poly_eval_mat(fac.f, theta);
      // Null rows on the module side act through transposed matrices.
      const Mat wm = kernel(mat_transpose(big_n));
      if (wm.rows == 0) continue;
      bool first_full = false;
      const uint32_t probe = std::min<uint32_t>(wm.rows, 3);
      for (uint32_t i = 0; i < probe; ++i) {
        Subspace s = spin(*m, mat_row_of(wm, i));
        if (s.dim() < d) return found(std::move(s));
        if (i == 0) first_full = true;
      }
      if (!first_full || wm.rows != uint32_t(poly_deg(fac.f))) continue;
      // Norton's test: the same factor on the transpose side.
      const Mat w2 = kernel(big_n);
      require(w2.rows > 0, Errc::Internal, "transpose kernel vanished");
      Subspace s2 = spin_rows(field, d, m->gen_mats(), mat_row_of(w2, 0));
      if (s2.dim() == d) return certify();
      return found(dot_perp(s2));
    }
  }
  // The randomized budget ran out; a sweep still decides exactly when the
  // space is small enough to afford one.
  if (sweepable) return sweep_lines();
  fail(Errc::Inconclusive, "meataxe attempt budget exhausted");
}

std::vector<ModuleRef> composition_factors(const ModuleRef& m) {
  std::vector<ModuleRef> out;
  std::vector<ModuleRef> stack = {m};
  while (!stack.empty()) {
    ModuleRef cur = stack.back();
    stack.pop_back();
    if (cur->dim() == 0) continue;
    SplitResult r = split_once(cur);
    if (!r.proper) {
      out.push_back(cur);
      continue;
    }
    stack.push_back(sub_module(cur, r.proper->space));
    stack.push_back(quotient_module(cur, r.proper->space));
  }
  std::sort(out.begin(), out.end(), [](const ModuleRef& a, const ModuleRef& b) {
    return module_key(*a) < module_key(*b);
  });
  return out;
}

namespace {

std::string catalog_key(const FiniteGroup& g, const FieldSpec& f) {
  std::vector<uint8_t> k;
  append_be64(k, f.p());
  append_be64(k, f.k());
  // The designated generator list is part of a group's identity here: catalog
  // entries pair generator matrices with it by position.
  append_be64(k, g.gens().size());
  for (uint32_t x : g.gens()) append_be64(k, x);
  std::string out = bytes_to_string(k);
  out += g.table_bytes();
  return out;
}

std::vector<ModuleRef> build_catalog(const GroupRef& group, const FieldRef& field,
                                     const std::string& key) {
  const uint32_t n = group->order();
  std::vector<ModuleRef> out;
  if (same_group(*group, *group_cyclic(n))) {
    // Cyclic fast path: factor x^n - 1; each irreducible factor's companion
    // matrix generates one simple module, and together they are all of them.
    std::vector<FVal> coeffs(n + 1, field->zero());
    coeffs[0] = field->neg(field->one());
    coeffs[n] = field->one();
    Rng rng(hash_bytes(key));
    const auto facs = poly_factor(*field, poly_from(*field, std::move(coeffs)), rng);
    for (const auto& fac : facs) {
      const uint32_t deg = uint32_t(poly_deg(fac.f));
      Mat c = mat_make(field, deg, deg);
      for (uint32_t i = 0; i + 1 < deg; ++i) c.at(i, i + 1) = field->one();
      for (uint32_t j = 0; j < deg; ++j)
        c.at(deg - 1, j) = field->neg(fac.f.c[j]);
      // Element index i is the i-th power of element 1, so each designated
      // generator g acts by the g-th power of the companion matrix.
      std::vector<Mat> gens;
      for (uint32_t g : group->gens()) {
        Mat acc = mat_identity(field, deg);
        for (uint32_t i = 0; i < g; ++i) acc = mat_mul(acc, c);
        gens.push_back(std::move(acc));
      }
      out.push_back(detail::make_module(group, field, deg, std::move(gens),
                                        ModuleCheck::Trusted, 1));
    }
  } else {
    const auto factors = composition_factors(regular_module(group, field));
    for (const auto& f : factors) {
      bool fresh = true;
      for (const auto& kept : out)
        if (are_isomorphic(f, kept)) {
          fresh = false;
          break;
        }
      if (fresh) out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end(), [](const ModuleRef& a, const ModuleRef& b) {
    return module_key(*a) < module_key(*b);
  });
  return out;
}

}  // namespace

std::vector<ModuleRef> irreducible_catalog(const GroupRef& group,
                                           const FieldRef& field) {
  require(group != nullptr && field != nullptr, Errc::InvalidInput, "null input");
  static std::mutex mu;
  static std::map<std::string, std::vector<ModuleRef>>* registry =
      new std::map<std::string, std::vector<ModuleRef>>();
  const std::string key = catalog_key(*group, *field);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry->find(key);
    if (it != registry->end()) return it->second;
  }
  auto cat = build_catalog(group, field, key);
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = registry->emplace(key, std::move(cat));
  return it->second;
}

std::vector<Mat> hom_space(const GModule& a, const GModule& b) {
  require(same_group(*a.group(), *b.group()), Errc::GroupMismatch,
          "hom space needs one group");
  require(a.field()->same(*b.field()), Errc::MixedFields,
          "hom space needs one field");
  const FieldRef& field = a.field();
  const uint32_t da = a.dim(), db = b.dim();
  const uint32_t unknowns = db * da;
  if (unknowns == 0) return {};
  const size_t gens = a.gen_mats().size();
  Mat eqs = mat_make(field, uint32_t(gens) * db * da, unknowns);
  uint32_t row = 0;
  for (size_t t = 0; t < gens; ++t) {
    const Mat& ga = a.gen_mats()[t];
    const Mat& gb = b.gen_mats()[t];
    for (uint32_t i = 0; i < db; ++i)
      for (uint32_t j = 0; j < da; ++j) {
        // Coefficient of X[r,c] in (X ga - gb X)[i,j].
        for (uint32_t c = 0; c < da; ++c)
          eqs.at(row, i * da + c) = ga.at(c, j);
        for (uint32_t r = 0; r < db; ++r)
          eqs.at(row, r * da + j) =
              field->sub(eqs.at(row, r * da + j), gb.at(i, r));
        ++row;
      }
  }
  const Mat sols = kernel(mat_transpose(eqs));
  std::vector<Mat> out;
  out.reserve(sols.rows);
  for (uint32_t s = 0; s < sols.rows; ++s) {
    Mat x = mat_make(field, db, da);
    for (uint32_t r = 0; r < db; ++r)
      for (uint32_t c = 0; c < da; ++c) x.at(r, c) = sols.at(s, r * da + c);
    out.push_back(std::move(x));
  }
  return out;
}

bool are_isomorphic(const ModuleRef& a, const ModuleRef& b) {
  require(a != nullptr && b != nullptr, Errc::InvalidInput, "null module");
  require(same_group(*a->group(), *b->group()), Errc::GroupMismatch,
          "isomorphism test needs one group");
  require(a->field()->same(*b->field()), Errc::MixedFields,
          "isomorphism test needs one field");
  if (a == b) return true;
  if (a->dim() != b->dim()) return false;
  if (a->dim() == 0) return true;
  const auto ia = a->known_irreducible();
  const auto ib = b->known_irreducible();
  if (ia && *ia && ib && *ib) {
    // Schur: any nonzero map between simples of equal dimension is invertible.
    return !hom_space(*a, *b).empty();
  }
  const uint64_t p = a->field()->p();
  if (a->group()->order() % p != 0) {
    // Semisimple case: equal multiplicity against every catalog irreducible.
    for (const auto& irr : irreducible_catalog(a->group(), a->field()))
      if (hom_space(*irr, *a).size() != hom_space(*irr, *b).size()) return false;
    return true;
  }
  const auto homs = hom_space(*a, *b);
  if (homs.empty()) return false;
  // Isomorphic modules share all four hom dimensions with their endomorphisms.
  const size_t ea = hom_space(*a, *a).size();
  if (hom_space(*b, *b).size() != ea || homs.size() != ea ||
      hom_space(*b, *a).size() != ea)
    return false;
  for (const auto& x : homs)
    if (mat_is_invertible(x)) return true;
  const FieldRef& field = a->field();
  const uint64_t q = field->size();
  if (bounded_pow(q, uint32_t(homs.size()), enum_cap()) <= enum_cap()) {
    // Any isomorphism would lie in the span, so full enumeration decides.
    std::vector<uint64_t> digits(homs.size(), 0);
    while (next_tuple(digits, q)) {
      Mat x = mat_make(field, a->dim(), a->dim());
      for (size_t i = 0; i < homs.size(); ++i) {
        if (digits[i] == 0) continue;
        x = mat_add(x, mat_scale(homs[i], field->from_uint(digits[i])));
      }
      if (mat_is_invertible(x)) return true;
    }
    return false;
  }
  Rng rng(hash_mix(hash_bytes(bytes_to_string(module_key(*a))),
                   hash_bytes(bytes_to_string(module_key(*b)))));
  for (int t = 0; t < 64; ++t) {
    Mat x = mat_make(field, a->dim(), a->dim());
    for (const auto& h : homs) x = mat_add(x, mat_scale(h, field->sample(rng)));
    if (mat_is_invertible(x)) return true;
  }
  fail(Errc::Inconclusive,
       "no invertible intertwiner found within the attempt budget");
}

IsotypicDecomposition isotypic_decomposition(const ModuleRef& m) {
  require(m != nullptr, Errc::InvalidInput, "null module");
  const uint64_t p = m->field()->p();
  require(m->group()->order() % p != 0, Errc::ModularCase,
          "isotypic decomposition needs the characteristic coprime to |G|");
  IsotypicDecomposition out;
  for (const auto& irr : irreducible_catalog(m->group(), m->field())) {
    const auto homs = hom_space(*irr, *m);
    if (homs.empty()) continue;
    const size_t end_dim = hom_space(*irr, *irr).size();
    require(end_dim > 0 && homs.size() % end_dim == 0, Errc::Internal,
            "hom dimension is not a multiple of the endomorphism dimension");
    Mat stacked = mat_transpose(homs[0]);
    for (size_t i = 1; i < homs.size(); ++i)
      stacked = mat_vstack(stacked, mat_transpose(homs[i]));
    out.components.push_back(IsotypicComponent{
        irr, uint32_t(homs.size() / end_dim), Subspace::from_rows(stacked)});
  }
  return out;
}

bool is_homogeneous(const ModuleRef& m) {
  return isotypic_decomposition(m).components.size() <= 1;
}

Subspace maschke_complement(const GModule& m, const Subspace& s) {
  const uint64_t p = m.field()->p();
  require(m.group()->order() % p != 0, Errc::ModularCase,
          "averaging needs the characteristic coprime to |G|");
  require(s.ambient() == m.dim(), Errc::AmbientMismatch,
          "subspace ambient dimension mismatch");
  require(is_invariant_subspace(m, s), Errc::NotInvariant,
          "subspace is not invariant");
  const FieldRef& field = m.field();
  const uint32_t d = m.dim(), sd = s.dim();
  // Coordinate projection onto s along the completed basis, as a column map.
  const Mat cols = mat_transpose(complete_basis(s));
  Mat sel = mat_make(field, d, d);
  for (uint32_t i = 0; i < sd; ++i) sel.at(i, i) = field->one();
  const Mat p0 = mat_mul(mat_mul(cols, sel), mat_inverse(cols));
  Mat acc = mat_make(field, d, d);
  const uint32_t n = m.group()->order();
  for (uint32_t g = 0; g < n; ++g)
    acc = mat_add(acc,
                  mat_mul(mat_mul(m.elem_mat(g), p0), m.elem_mat(m.group()->inv(g))));
  const Mat proj = mat_scale(acc, field->inv(field->constant(n)));
  return Subspace::from_rows(kernel(mat_transpose(proj)));
}

std::vector<Submodule> simple_submodules(const ModuleRef& m) {
  require(m != nullptr, Errc::InvalidInput, "null module");
  const FieldRef& field = m->field();
  const uint64_t q = field->size();
  std::map<std::string, Subspace> seen;
  for (const auto& irr : irreducible_catalog(m->group(), m->field())) {
    const auto homs = hom_space(*irr, *m);
    if (homs.empty()) continue;
    const auto endo = hom_space(*irr, *irr);
    const size_t e = endo.size();
    require(e > 0 && homs.size() % e == 0, Errc::Internal,
            "hom dimension is not a multiple of the endomorphism dimension");
    // Two maps share an image exactly when they differ by an endomorphism of
    // the source, so enumerate one representative per line over the
    // endomorphism ring instead of one per raw coefficient tuple: fix a basis
    // of the hom space as a free module over the endomorphisms, make the
    // leading coefficient the identity, and sweep the rest.
    const auto flat = [&](const Mat& x) {
      Mat row = mat_make(field, 1, x.rows * x.cols);
      for (uint32_t r = 0; r < x.rows; ++r)
        for (uint32_t c = 0; c < x.cols; ++c)
          row.at(0, r * x.cols + c) = x.at(r, c);
      return row;
    };
    std::vector<Mat> pivots;
    std::vector<std::vector<Mat>> orbits;  // pivots[i] composed with each endo
    Mat span_rows = mat_make(field, 0, m->dim() * irr->dim());
    for (const Mat& h : homs) {
      if (Subspace::from_rows(span_rows).contains(flat(h))) continue;
      std::vector<Mat> orbit;
      orbit.reserve(e);
      for (const Mat& phi : endo) {
        Mat prod = mat_mul(h, phi);
        span_rows = mat_vstack(span_rows, flat(prod));
        orbit.push_back(std::move(prod));
      }
      pivots.push_back(h);
      orbits.push_back(std::move(orbit));
    }
    require(pivots.size() * e == homs.size(), Errc::Internal,
            "hom space is not free over the endomorphisms");
    const uint64_t cap = enum_cap();
    const uint64_t qe = bounded_pow(q, uint32_t(e), cap);
    uint64_t lines = 0;
    bool over = false;
    for (size_t i = 0; i < pivots.size(); ++i) {
      if (lines > 0 && (qe > cap / lines || lines * qe > cap - 1)) {
        over = true;
        break;
      }
      lines = lines * qe + 1;
    }
    require(!over && lines <= cap, Errc::CapExceeded,
            "too many hom lines to enumerate");
    for (size_t j = 0; j < pivots.size(); ++j) {
      const size_t tail = pivots.size() - 1 - j;
      std::vector<uint64_t> digits(tail * e, 0);
      do {
        Mat x = pivots[j];
        for (size_t i = 0; i < tail; ++i)
          for (size_t b = 0; b < e; ++b) {
            const uint64_t c = digits[i * e + b];
            if (c == 0) continue;
            x = mat_add(x, mat_scale(orbits[j + 1 + i][b], field->from_uint(c)));
          }
        Subspace img = Subspace::from_rows(mat_transpose(x));
        seen.emplace(img.key(), std::move(img));
      } while (next_tuple(digits, q));
    }
  }
  std::vector<Submodule> out;
  out.reserve(seen.size());
  for (auto& [k, space] : seen) out.push_back(Submodule{m, std::move(space)});
  return out;
}

ModuleRef extend_scalars(const ModuleRef& m, const FieldRef& e) {
  require(m != nullptr && e != nullptr, Errc::InvalidInput, "null input");
  const FieldRef& base = m->field();
  if (base->same(*e)) return m;
  require(base->p() == e->p() && e->k() % base->k() == 0, Errc::NotAnExtension,
          "target field does not extend the module's field");
  const uint32_t k = base->k();
  std::vector<FVal> pow_r;
  if (k > 1) {
    // Embed by sending the base generator to the canonical (smallest) root of
    // the base modulus inside the extension.
    std::vector<FVal> coeffs;
    for (uint32_t c : base->modulus()) coeffs.push_back(e->constant(c));
    Rng rng(hash_mix(base->p(), uint64_t(base->k()) << 32 | e->k()));
    const auto roots = poly_roots(*e, poly_from(*e, std::move(coeffs)), rng);
    require(!roots.empty(), Errc::Internal, "modulus has no root in the extension");
    pow_r.resize(k, e->one());
    for (uint32_t i = 1; i < k; ++i) pow_r[i] = e->mul(pow_r[i - 1], roots[0]);
  }
  auto embed = [&](const FVal& a) -> FVal {
    if (k == 1) return e->constant(a.empty() ? 0 : a[0]);
    FVal acc = e->zero();
    for (uint32_t i = 0; i < uint32_t(a.size()); ++i)
      acc = e->add(acc, e->mul(e->constant(a[i]), pow_r[i]));
    return acc;
  };
  std::vector<Mat> mats;
  for (const Mat& g : m->gen_mats()) {
    Mat big = mat_make(e, g.rows, g.cols);
    for (size_t i = 0; i < g.a.size(); ++i) big.a[i] = embed(g.a[i]);
    mats.push_back(std::move(big));
  }
  return detail::make_module(m->group(), e, m->dim(), std::move(mats),
                             ModuleCheck::Trusted, 0);
}

ModuleRef galois_twist(const ModuleRef& m, uint32_t i) {
  require(m != nullptr, Errc::InvalidInput, "null module");
  const FieldRef& field = m->field();
  std::vector<Mat> mats;
  for (const Mat& g : m->gen_mats()) {
    Mat tw = mat_make(field, g.rows, g.cols);
    for (size_t idx = 0; idx < g.a.size(); ++idx)
      tw.a[idx] = field->frobenius(g.a[idx], i);
    mats.push_back(std::move(tw));
  }
  const auto st = m->known_irreducible();
  return detail::make_module(m->group(), field, m->dim(), std::move(mats),
                             ModuleCheck::Trusted, !st ? 0 : (*st ? 1 : 2));
}

uint32_t splitting_degree(const FiniteGroup& group, uint64_t p) {
  const uint32_t e = group.exponent();
  if (e == 1) return 1;
  const uint64_t t = p % e;
  require(std::gcd(t, uint64_t(e)) == 1, Errc::PDividesExponent,
          "characteristic divides the group exponent");
  uint32_t d = 1;
  uint64_t cur = t;
  while (cur != 1) {
    cur = cur * t % e;
    ++d;
  }
  return d;
}

uint32_t character_field_degree(const GModule& m) {
  const FieldRef& field = m.field();
  std::vector<FVal> traces;
  for (const Mat& g : m.elem_mats()) {
    FVal tr = field->zero();
    for (uint32_t i = 0; i < g.rows; ++i) tr = field->add(tr, g.at(i, i));
    traces.push_back(std::move(tr));
  }
  return min_fixed_degree(*field, traces);
}

bool absolutely_irreducible(const ModuleRef& m) {
  if (split_once(m).proper) return false;
  return hom_space(*m, *m).size() == 1;
}

bool is_trivial_action(const GModule& m) {
  const Mat id = mat_identity(m.field(), m.dim());
  for (const Mat& g : m.gen_mats())
    if (!mat_eq(g, id)) return false;
  return true;
}

std::vector<uint8_t> module_key(const GModule& m) {
  std::vector<uint8_t> out;
  out.push_back(uint8_t(m.dim() >> 24));
  out.push_back(uint8_t(m.dim() >> 16));
  out.push_back(uint8_t(m.dim() >> 8));
  out.push_back(uint8_t(m.dim()));
  for (const Mat& g : m.gen_mats())
    for (const FVal& v : g.a) append_be64(out, m.field()->to_uint(v));
  return out;
}

}  // namespace symg

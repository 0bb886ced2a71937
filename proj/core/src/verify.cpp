#include "symg/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <thread>
#include <utility>

#include "json.hpp"
#include "symg/config.hpp"
#include "symg/errors.hpp"
#include "symg/groups.hpp"
#include "symg/modrep.hpp"
#include "symg/rng.hpp"
#include "symg/symplectic.hpp"

namespace symg {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr InstanceKind kKindOrder[] = {
    InstanceKind::Hyperbolic, InstanceKind::SimpleSymplectic,
    InstanceKind::Mixed, InstanceKind::RandomGram};

int kind_index(InstanceKind k) {
  for (int i = 0; i < 4; ++i)
    if (kKindOrder[i] == k) return i;
  return 0;
}

InstanceKind kind_for_seed(uint64_t seed) { return kKindOrder[seed % 4]; }

Mat random_invertible(const FieldRef& f, uint32_t d, Rng& rng) {
  if (d == 0) return mat_make(f, 0, 0);
  for (int tries = 0; tries < 256; ++tries) {
    Mat u = mat_make(f, d, d);
    for (uint32_t i = 0; i < d; ++i)
      for (uint32_t j = 0; j < d; ++j) u.at(i, j) = f->sample(rng);
    if (mat_is_invertible(u)) return u;
  }
  fail(Errc::Internal, "random invertible matrix search exhausted");
}

// Seeded module of exactly `target` dimensions: walk down from the regular
// module through random split choices, then pad from the irreducible catalog.
// The catalog always offers the one-dimensional trivial module, so the target
// is reached exactly.
ModuleRef seeded_module(const GroupRef& g, const FieldRef& f, uint32_t target,
                        Rng& rng) {
  if (target == 0) return trivial_module(g, f, 0);
  ModuleRef acc;
  uint32_t have = 0;
  ModuleRef cur = regular_module(g, f);
  while (cur != nullptr && cur->dim() > target) {
    SplitResult sp = split_once(cur);
    if (!sp.proper.has_value()) {
      cur = nullptr;  // irreducible but too big; fall back to the catalog
      break;
    }
    cur = rng.below(2) == 0 ? sub_module(cur, sp.proper->space)
                            : quotient_module(cur, sp.proper->space);
  }
  if (cur != nullptr && cur->dim() > 0) {
    acc = cur;
    have = cur->dim();
  }
  const auto catalog = irreducible_catalog(g, f);
  while (have < target) {
    std::vector<ModuleRef> fits;
    for (const ModuleRef& c : catalog)
      if (c->dim() >= 1 && c->dim() <= target - have) fits.push_back(c);
    const ModuleRef& pick = fits[size_t(rng.below(fits.size()))];
    acc = acc == nullptr ? pick : direct_sum(acc, pick);
    have += pick->dim();
  }
  return acc;
}

// Irreducible carriers of an invariant symplectic form, in catalog order.
std::vector<SymplecticModule> symplectic_simples(const GroupRef& g,
                                                 const FieldRef& f,
                                                 uint32_t max_dim) {
  std::vector<SymplecticModule> out;
  for (const ModuleRef& c : irreducible_catalog(g, f)) {
    if (c->dim() == 0 || c->dim() > max_dim) continue;
    try {
      out.push_back(find_invariant_symplectic(c));
    } catch (const SymgError& e) {
      if (e.code != Errc::NoneFound) throw;
    }
  }
  return out;
}

}  // namespace

const char* instance_kind_name(InstanceKind k) {
  switch (k) {
    case InstanceKind::Hyperbolic: return "hyperbolic";
    case InstanceKind::SimpleSymplectic: return "simple_symplectic";
    case InstanceKind::Mixed: return "mixed";
    case InstanceKind::RandomGram: return "random_gram";
  }
  return "hyperbolic";
}

std::optional<InstanceKind> instance_kind_from_name(const std::string& name) {
  for (InstanceKind k : kKindOrder)
    if (name == instance_kind_name(k)) return k;
  return std::nullopt;
}

std::string spec_to_json(const InstanceSpec& spec) {
  ordered_json j;
  j["group"] = ordered_json::parse(group_desc_to_json(spec.group));
  j["field"] = ordered_json{{"p", spec.p}, {"k", spec.k}};
  j["kind"] = instance_kind_name(spec.kind);
  j["dim_budget"] = spec.dim_budget;
  j["seed"] = spec.seed;
  return j.dump();
}

Instance gen_instance(const InstanceSpec& spec, uint64_t master_seed) {
  require(spec.dim_budget >= 2 && spec.dim_budget <= 64, Errc::InvalidInput,
          "dimension budget must lie in [2, 64]");
  const GroupRef g = build_group(spec.group);
  require(g->order() % 2 == 1, Errc::InvalidInput,
          "instance groups must have odd order");
  const FieldRef f = make_field(spec.p, spec.k);
  Rng rng(hash_mix(hash_bytes(spec_to_json(spec)), master_seed));

  switch (spec.kind) {
    case InstanceKind::Hyperbolic: {
      const uint32_t half = spec.dim_budget / 2;
      const uint32_t h = 1 + uint32_t(rng.below(half));
      const SymplecticModule b = hyperbolic_double(seeded_module(g, f, h, rng));
      return {spec.group, change_basis(b, random_invertible(f, b.dim(), rng))};
    }
    case InstanceKind::SimpleSymplectic: {
      const auto picks = symplectic_simples(g, f, spec.dim_budget);
      require(!picks.empty(), Errc::Infeasible,
              "no irreducible module within budget carries an invariant "
              "symplectic form");
      return {spec.group, picks[size_t(rng.below(picks.size()))]};
    }
    case InstanceKind::Mixed: {
      const auto picks = symplectic_simples(
          g, f, spec.dim_budget >= 4 ? spec.dim_budget - 2 : 0);
      SymplecticModule part = [&] {
        if (!picks.empty()) {
          const SymplecticModule& sp = picks[size_t(rng.below(picks.size()))];
          const uint32_t rem_half = (spec.dim_budget - sp.dim()) / 2;
          const uint32_t h = 1 + uint32_t(rng.below(rem_half));
          return orthogonal_sum(sp,
                                hyperbolic_double(seeded_module(g, f, h, rng)));
        }
        // No simple carrier in budget: sum two independent doubles instead.
        const uint32_t half = spec.dim_budget / 2;
        const uint32_t h1 = 1 + uint32_t(rng.below(half));
        SymplecticModule one = hyperbolic_double(seeded_module(g, f, h1, rng));
        const uint32_t rem = (spec.dim_budget - one.dim()) / 2;
        if (rem >= 1) {
          const uint32_t h2 = 1 + uint32_t(rng.below(rem));
          one = orthogonal_sum(one,
                               hyperbolic_double(seeded_module(g, f, h2, rng)));
        }
        return one;
      }();
      return {spec.group,
              change_basis(part, random_invertible(f, part.dim(), rng))};
    }
    case InstanceKind::RandomGram: {
      // Dual pairs guarantee the invariant forms include a nonsingular one.
      const uint32_t half = spec.dim_budget / 2;
      const uint32_t target = 1 + uint32_t(rng.below(half));
      const auto catalog = irreducible_catalog(g, f);
      ModuleRef m;
      uint32_t have = 0;
      while (have < target) {
        std::vector<ModuleRef> fits;
        for (const ModuleRef& c : catalog)
          if (c->dim() >= 1 && c->dim() <= target - have) fits.push_back(c);
        const ModuleRef& pick = fits[size_t(rng.below(fits.size()))];
        const ModuleRef pair = direct_sum(pick, dual_module(pick));
        m = m == nullptr ? pair : direct_sum(m, pair);
        have += pick->dim();
      }
      const auto alts = alternating_invariant_forms(*m);
      require(!alts.empty(), Errc::Infeasible,
              "module carries no alternating invariant form");
      for (int tries = 0; tries < 64; ++tries) {
        Mat gram = mat_make(f, m->dim(), m->dim());
        for (const Mat& a : alts) {
          const FVal c = f->sample(rng);
          if (f->is_zero(c)) continue;
          for (uint32_t i = 0; i < gram.rows; ++i)
            for (uint32_t j = 0; j < gram.cols; ++j)
              gram.at(i, j) = f->add(gram.at(i, j), f->mul(c, a.at(i, j)));
        }
        if (mat_is_invertible(gram))
          return {spec.group, make_symplectic(m, std::move(gram))};
      }
      fail(Errc::Infeasible,
           "no nonsingular combination of invariant forms found");
    }
  }
  fail(Errc::Internal, "unhandled instance kind");
}

CheckResult check_theorem_A(const SymplecticModule& b) {
  const GroupRef& g = b.module->group();
  const bool direct = is_hyperbolic(b);
  bool restricted = true;
  std::string failing;
  for (const auto& members : cyclic_subgroups(*g)) {
    const SubgroupView view = subgroup_as_group(g, members);
    if (!is_hyperbolic(restrict_symplectic(b, view))) {
      restricted = false;
      failing = ordered_json(members).dump();
      break;
    }
  }
  if (direct == restricted) return {};
  if (direct)
    return {false, "hyperbolic, but the restriction to the cyclic subgroup " +
                       failing + " is not"};
  return {false,
          "every cyclic restriction is hyperbolic, but the module is not"};
}

CheckResult check_even_multiplicity(const SymplecticModule& b) {
  const GroupRef& g = b.module->group();
  require(g->order() % b.field()->p() != 0, Errc::ModularCase,
          "multiplicity probe needs characteristic coprime to the group order");
  std::string detail;
  const auto probe = [&detail](const ModuleRef& mod, const std::string& where) {
    for (const auto& comp : isotypic_decomposition(mod).components) {
      if (!are_isomorphic(comp.irreducible, dual_module(comp.irreducible)))
        continue;
      if (comp.multiplicity % 2 != 0) {
        if (!detail.empty()) detail += "; ";
        detail += where + ": self-dual constituent of dimension " +
                  std::to_string(comp.irreducible->dim()) +
                  " has odd multiplicity " + std::to_string(comp.multiplicity);
      }
    }
  };
  probe(b.module, "module");
  for (const auto& members : normal_subgroups(*g))
    probe(restrict_module(b.module, subgroup_as_group(g, members)),
          "restriction to " + ordered_json(members).dump());
  if (detail.empty()) return {};
  return {false, detail};
}

CheckResult check_self_dual_trivial(const GroupRef& g, uint32_t p) {
  require(g != nullptr, Errc::InvalidInput, "null group");
  require(g->order() % p != 0, Errc::PDividesOrder,
          "splitting field probe needs p coprime to the group order");
  const FieldRef e = make_field(p, splitting_degree(*g, p));
  uint32_t self_dual = 0;
  bool trivial_is_self_dual = false;
  std::string detail;
  for (const ModuleRef& m : irreducible_catalog(g, e)) {
    if (!absolutely_irreducible(m)) {
      if (!detail.empty()) detail += "; ";
      detail += "catalog entry of dimension " + std::to_string(m->dim()) +
                " is not absolutely irreducible over the splitting field";
      continue;
    }
    if (!are_isomorphic(m, dual_module(m))) continue;
    ++self_dual;
    if (m->dim() == 1 && is_trivial_action(*m)) trivial_is_self_dual = true;
  }
  if (!detail.empty()) return {false, detail};
  if (self_dual == 1 && trivial_is_self_dual) return {};
  return {false,
          "expected the trivial module to be the unique self-dual entry over "
          "the splitting field, found " +
              std::to_string(self_dual) + " self-dual entries " +
              (trivial_is_self_dual ? "including" : "excluding") +
              " the trivial one"};
}

CheckResult check_restriction_self_dual(const SymplecticModule& u,
                                        const std::vector<uint32_t>& elems) {
  const SubgroupView view = subgroup_as_group(u.module->group(), elems);
  const ModuleRef res = restrict_module(u.module, view);
  if (is_trivial_action(*res)) return {};  // all simples are trivial lines
  for (const auto& sub : simple_submodules(res)) {
    const ModuleRef simple = sub_module(res, sub.space);
    if (!are_isomorphic(simple, dual_module(simple)))
      return {false, "restriction to " + ordered_json(elems).dump() +
                         " has a non-self-dual simple submodule of dimension " +
                         std::to_string(simple->dim())};
  }
  return {};
}

std::optional<uint32_t> homogeneous_nontrivial_multiplicity(
    const SymplecticModule& u, const std::vector<uint32_t>& elems) {
  const SubgroupView view = subgroup_as_group(u.module->group(), elems);
  const IsotypicDecomposition dec =
      isotypic_decomposition(restrict_module(u.module, view));
  if (dec.components.size() != 1) return std::nullopt;
  const IsotypicComponent& comp = dec.components[0];
  if (comp.irreducible->dim() == 1 && is_trivial_action(*comp.irreducible))
    return std::nullopt;
  return comp.multiplicity;
}

namespace {

struct PairCtx {
  GroupDesc desc;
  uint32_t p = 3;
  uint64_t order = 1;
  bool coprime = true;
};

std::vector<PairCtx> corpus_pairs(const CorpusSpec& corpus) {
  std::vector<PairCtx> out;
  for (const GroupDesc& desc : corpus.groups) {
    const GroupRef g = build_group(desc);
    for (uint32_t p : corpus.primes)
      out.push_back({desc, p, g->order(), g->order() % p != 0});
  }
  return out;
}

// Requested kinds rotate through the list; an infeasible kind falls forward
// to the next one, so every slot yields an instance (hyperbolic always
// exists).
std::pair<InstanceSpec, Instance> realize(const InstanceSpec& want,
                                          uint64_t master_seed) {
  InstanceSpec spec = want;
  const int start = kind_index(want.kind);
  for (int t = 0; t < 4; ++t) {
    spec.kind = kKindOrder[(start + t) % 4];
    try {
      Instance inst = gen_instance(spec, master_seed);
      return {spec, std::move(inst)};
    } catch (const SymgError& e) {
      if (e.code != Errc::Infeasible) throw;
    }
  }
  fail(Errc::Infeasible, "no instance kind is feasible for the pair");
}

struct TaskOutcome {
  bool skip = false;
  std::vector<Violation> violations;
  std::vector<ProbeRow> probes;
};

struct Task {
  std::string check;
  std::string spec;
  std::function<TaskOutcome()> body;
};

struct TaskResult {
  uint32_t attempted = 0, passed = 0, skipped = 0, capped = 0;
  std::vector<Violation> violations;
  std::vector<ProbeRow> probes;
};

TaskResult run_task(const Task& t) {
  TaskResult r;
  try {
    TaskOutcome out = t.body();
    if (out.skip) {
      r.skipped = 1;
      return r;
    }
    r.attempted = 1;
    if (out.violations.empty()) r.passed = 1;
    for (Violation& v : out.violations) {
      if (v.check.empty()) v.check = t.check;
      if (v.spec.empty()) v.spec = t.spec;
      r.violations.push_back(std::move(v));
    }
    r.probes = std::move(out.probes);
  } catch (const SymgError& e) {
    r.attempted = 1;
    if (errc_is_cap(e.code)) {
      r.capped = 1;
      return r;
    }
    r.violations.push_back({"", t.check, t.spec, "",
                            std::string("unexpected error [") +
                                errc_name(e.code) + "]: " + e.what()});
  } catch (const std::exception& e) {
    r.attempted = 1;
    r.violations.push_back(
        {"", t.check, t.spec, "", std::string("unexpected error: ") + e.what()});
  }
  return r;
}

void run_section(const std::string& name, std::vector<Task> tasks,
                 uint32_t jobs, SuiteReport& report) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<TaskResult> results(tasks.size());
  std::atomic<size_t> next{0};
  const auto worker = [&tasks, &results, &next] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      results[i] = run_task(tasks[i]);
    }
  };
  if (jobs <= 1 || tasks.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const uint32_t n = std::min<uint32_t>(jobs, uint32_t(tasks.size()));
    pool.reserve(n);
    for (uint32_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  SectionReport sec;
  sec.name = name;
  for (TaskResult& r : results) {
    sec.attempted += r.attempted;
    sec.passed += r.passed;
    sec.skipped += r.skipped;
    sec.capped += r.capped;
    for (Violation& v : r.violations) {
      v.section = name;
      report.violations.push_back(std::move(v));
    }
    for (ProbeRow& p : r.probes) report.probes.push_back(std::move(p));
  }
  sec.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  report.sections.push_back(std::move(sec));
}

std::vector<Task> oracle_tasks(const CorpusSpec& corpus, uint64_t master) {
  std::vector<Task> tasks;
  const uint32_t budget = std::min<uint32_t>(corpus.dim_budget, 4);
  for (const PairCtx& pair : corpus_pairs(corpus)) {
    for (uint64_t seed = 0; seed < corpus.instances_per_pair; ++seed) {
      const InstanceSpec want{pair.desc, pair.p, 1, kind_for_seed(seed),
                              budget, seed};
      tasks.push_back({"oracle-agreement", spec_to_json(want), [want, master] {
        TaskOutcome out;
        auto [spec, inst] = realize(want, master);
        const auto witness = find_lagrangian(inst.sym);
        const bool brute = brute_is_hyperbolic(inst.sym);
        if (witness.has_value() != brute) {
          out.violations.push_back(
              {"", "", spec_to_json(spec), instance_to_json(inst),
               witness.has_value()
                   ? "search found a witness but enumeration finds none"
                   : "enumeration finds a lagrangian the search missed"});
        } else if (witness.has_value() &&
                   !is_self_perpendicular(inst.sym, *witness)) {
          out.violations.push_back({"", "", spec_to_json(spec),
                                    instance_to_json(inst),
                                    "witness is not self-perpendicular"});
        }
        return out;
      }});
    }
  }
  return tasks;
}

std::vector<Task> theorem_tasks(const CorpusSpec& corpus, uint64_t master) {
  std::vector<Task> tasks;
  for (const PairCtx& pair : corpus_pairs(corpus)) {
    const uint32_t budget =
        pair.coprime ? corpus.dim_budget : corpus.modular_dim_budget;
    for (uint64_t seed = 0; seed < corpus.instances_per_pair; ++seed) {
      const InstanceSpec want{pair.desc, pair.p, 1, kind_for_seed(seed),
                              budget, seed};
      tasks.push_back(
          {"cyclic-restriction-equivalence", spec_to_json(want),
           [want, master] {
             TaskOutcome out;
             auto [spec, inst] = realize(want, master);
             const CheckResult res = check_theorem_A(inst.sym);
             if (!res.pass)
               out.violations.push_back({"", "", spec_to_json(spec),
                                         instance_to_json(inst), res.detail});
             return out;
           }});
    }
  }
  return tasks;
}

std::vector<Task> witt_tasks(const CorpusSpec& corpus, uint64_t master) {
  std::vector<Task> tasks;
  for (const PairCtx& pair : corpus_pairs(corpus)) {
    if (!pair.coprime) continue;
    for (uint64_t seed = 0; seed < corpus.instances_per_pair; ++seed) {
      const InstanceSpec want{pair.desc, pair.p, 1, kind_for_seed(seed),
                              corpus.dim_budget, seed};
      tasks.push_back({"witt-kernel", spec_to_json(want), [want, master] {
        TaskOutcome out;
        auto [spec, inst] = realize(want, master);
        const std::string sj = spec_to_json(spec);
        const std::string ij = instance_to_json(inst);
        const auto flag = [&](const std::string& detail) {
          out.violations.push_back({"", "", sj, ij, detail});
        };
        const WittReport rep = witt_peel(inst.sym);
        if (rep.lagrangian_witness.has_value() != (rep.kernel.dim() == 0))
          flag("witness presence disagrees with the kernel dimension");
        if (rep.lagrangian_witness.has_value() &&
            !is_self_perpendicular(inst.sym, *rep.lagrangian_witness))
          flag("lifted witness is not self-perpendicular");
        uint32_t peeled = 0;
        for (const Subspace& s : rep.peeled) peeled += s.dim();
        if (inst.sym.dim() != rep.kernel.dim() + 2 * peeled)
          flag("peel dimensions do not account for the module");
        const auto parts = orthogonal_split(rep.kernel);
        uint32_t total = 0;
        for (const auto& part : parts) {
          total += part.dim();
          if (split_once(part.module).proper.has_value())
            flag("kernel summand of dimension " +
                 std::to_string(part.dim()) + " is not simple");
        }
        if (total != rep.kernel.dim())
          flag("kernel split dimensions do not add up");
        for (size_t i = 0; i < parts.size(); ++i)
          for (size_t j = i + 1; j < parts.size(); ++j)
            if (are_isomorphic(parts[i].module, parts[j].module))
              flag("kernel contains two isomorphic simple summands");
        return out;
      }});
    }
  }
  return tasks;
}

std::vector<Task> evenmult_tasks(const CorpusSpec& corpus, uint64_t master) {
  std::vector<Task> tasks;
  for (const PairCtx& pair : corpus_pairs(corpus)) {
    if (!pair.coprime) continue;
    for (uint64_t seed = 0; seed < corpus.instances_per_pair; ++seed) {
      const InstanceSpec want{pair.desc, pair.p, 1, kind_for_seed(seed),
                              corpus.dim_budget, seed};
      tasks.push_back({"even-multiplicity", spec_to_json(want), [want, master] {
        TaskOutcome out;
        auto [spec, inst] = realize(want, master);
        if (!is_hyperbolic(inst.sym)) {
          out.skip = true;  // the claim only covers hyperbolic modules
          return out;
        }
        const CheckResult res = check_even_multiplicity(inst.sym);
        if (!res.pass)
          out.violations.push_back({"", "", spec_to_json(spec),
                                    instance_to_json(inst), res.detail});
        return out;
      }});
    }
  }
  return tasks;
}

std::vector<Task> selfdual_tasks(const CorpusSpec& corpus, uint64_t master) {
  std::vector<Task> tasks;
  for (const PairCtx& pair : corpus_pairs(corpus)) {
    if (!pair.coprime) continue;
    const std::string pair_key =
        ordered_json{{"group", ordered_json::parse(group_desc_to_json(pair.desc))},
                     {"field", ordered_json{{"p", pair.p}, {"k", 1}}}}
            .dump();
    tasks.push_back(
        {"splitting-field-self-dual", pair_key, [desc = pair.desc, p = pair.p] {
           TaskOutcome out;
           const CheckResult res = check_self_dual_trivial(build_group(desc), p);
           if (!res.pass) out.violations.push_back({"", "", "", "", res.detail});
           return out;
         }});
    for (uint64_t seed = 0; seed < corpus.instances_per_pair; ++seed) {
      const InstanceSpec want{pair.desc, pair.p, 1, kind_for_seed(seed),
                              corpus.dim_budget, seed};
      tasks.push_back({"module-self-dual", spec_to_json(want), [want, master] {
        TaskOutcome out;
        auto [spec, inst] = realize(want, master);
        const std::string sj = spec_to_json(spec);
        const std::string ij = instance_to_json(inst);
        if (!are_isomorphic(inst.sym.module, dual_module(inst.sym.module)))
          out.violations.push_back(
              {"", "", sj, ij, "validated module is not self-dual"});
        if (spec.kind == InstanceKind::SimpleSymplectic) {
          const GroupRef& g = inst.sym.module->group();
          for (const auto& members : normal_subgroups(*g)) {
            const CheckResult res =
                check_restriction_self_dual(inst.sym, members);
            if (!res.pass)
              out.violations.push_back(
                  {"", "restriction-self-dual", sj, ij, res.detail});
          }
        }
        return out;
      }});
    }
  }
  return tasks;
}

std::vector<Task> probe_tasks(const CorpusSpec& corpus, uint64_t master) {
  std::vector<Task> tasks;
  for (const PairCtx& pair : corpus_pairs(corpus)) {
    if (!pair.coprime) continue;
    for (uint64_t seed = 0; seed < corpus.instances_per_pair; ++seed) {
      const InstanceSpec want{pair.desc, pair.p, 1, kind_for_seed(seed),
                              corpus.dim_budget, seed};
      tasks.push_back(
          {"restriction-multiplicity", spec_to_json(want), [want, master] {
             TaskOutcome out;
             auto [spec, inst] = realize(want, master);
             if (spec.kind != InstanceKind::SimpleSymplectic) {
               out.skip = true;  // the claim covers simple modules only
               return out;
             }
             const std::string sj = spec_to_json(spec);
             const GroupRef& g = inst.sym.module->group();
             for (const auto& members : normal_subgroups(*g)) {
               const auto mult =
                   homogeneous_nontrivial_multiplicity(inst.sym, members);
               if (!mult.has_value()) continue;
               out.probes.push_back({sj, ordered_json(members).dump(), *mult,
                                     *mult % 2 == 1});
             }
             return out;
           }});
    }
  }
  return tasks;
}

ordered_json parse_or_null(const std::string& text) {
  if (text.empty()) return nullptr;
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) return text;
  return j;
}

}  // namespace

CorpusSpec default_corpus() {
  CorpusSpec corpus;
  for (uint32_t n = 1; n <= 27; n += 2) corpus.groups.push_back(cyclic_desc(n));
  corpus.groups.push_back(product_desc({cyclic_desc(3), cyclic_desc(3)}));
  corpus.groups.push_back(product_desc({cyclic_desc(3), cyclic_desc(9)}));
  corpus.groups.push_back(
      product_desc({cyclic_desc(3), cyclic_desc(3), cyclic_desc(3)}));
  corpus.groups.push_back(product_desc({cyclic_desc(5), cyclic_desc(5)}));
  corpus.groups.push_back(semidirect_desc(7, 3, 2));
  corpus.groups.push_back(extraspecial_desc(3));
  return corpus;
}

std::vector<std::string> suite_names() {
  return {"oracle", "theorem-a", "witt", "even-mult", "self-dual", "probe"};
}

SuiteReport run_suite(const std::string& suite, const CorpusSpec& corpus,
                      uint64_t master_seed, uint32_t jobs) {
  require(!corpus.groups.empty(), Errc::InvalidInput, "empty corpus");
  require(!corpus.primes.empty(), Errc::InvalidInput, "corpus has no primes");
  require(corpus.dim_budget >= 2 && corpus.dim_budget <= 32 &&
              corpus.modular_dim_budget >= 2 && corpus.modular_dim_budget <= 32,
          Errc::InvalidInput, "dimension budgets must lie in [2, 32]");
  const auto names = suite_names();
  std::vector<std::string> selected;
  if (suite == "all") {
    selected = names;
  } else {
    require(std::find(names.begin(), names.end(), suite) != names.end(),
            Errc::InvalidInput, "unknown suite: " + suite);
    selected = {suite};
  }
  if (jobs == 0) jobs = 1;

  SuiteReport report;
  report.suite = suite;
  report.master_seed = master_seed;
  const uint64_t iso0 = isotropy_stats().isotropic_seen.load();
  const uint64_t bv0 = isotropy_stats().bound_violations.load();
  const auto t0 = std::chrono::steady_clock::now();
  for (const std::string& name : selected) {
    std::vector<Task> tasks;
    if (name == "oracle") tasks = oracle_tasks(corpus, master_seed);
    else if (name == "theorem-a") tasks = theorem_tasks(corpus, master_seed);
    else if (name == "witt") tasks = witt_tasks(corpus, master_seed);
    else if (name == "even-mult") tasks = evenmult_tasks(corpus, master_seed);
    else if (name == "self-dual") tasks = selfdual_tasks(corpus, master_seed);
    else tasks = probe_tasks(corpus, master_seed);
    run_section(name, std::move(tasks), jobs, report);
  }
  report.total_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  report.isotropic_seen = isotropy_stats().isotropic_seen.load() - iso0;
  report.bound_violations = isotropy_stats().bound_violations.load() - bv0;
  return report;
}

std::string report_to_json(const SuiteReport& r) {
  ordered_json j;
  j["report"] = "verify";
  j["version"] = library_version();
  j["suite"] = r.suite;
  j["master_seed"] = r.master_seed;
  j["consistent"] = r.consistent();
  ordered_json sections = ordered_json::array();
  ordered_json timings = ordered_json::object();
  for (const SectionReport& s : r.sections) {
    sections.push_back(ordered_json{{"name", s.name},
                                    {"attempted", s.attempted},
                                    {"passed", s.passed},
                                    {"skipped", s.skipped},
                                    {"capped", s.capped}});
    timings[s.name] = s.elapsed_ms;
  }
  j["sections"] = std::move(sections);
  ordered_json violations = ordered_json::array();
  for (const Violation& v : r.violations)
    violations.push_back(ordered_json{{"section", v.section},
                                      {"check", v.check},
                                      {"spec", parse_or_null(v.spec)},
                                      {"detail", v.detail},
                                      {"instance", parse_or_null(v.instance)}});
  j["violations"] = std::move(violations);
  ordered_json probes = ordered_json::array();
  uint32_t even_findings = 0;
  for (const ProbeRow& p : r.probes) {
    if (!p.odd) ++even_findings;
    probes.push_back(ordered_json{{"spec", parse_or_null(p.spec)},
                                  {"subgroup", parse_or_null(p.subgroup)},
                                  {"multiplicity", p.multiplicity},
                                  {"odd", p.odd}});
  }
  j["probes"] = std::move(probes);
  j["even_findings"] = even_findings;
  j["isotropy"] = ordered_json{{"isotropic_seen", r.isotropic_seen},
                               {"bound_violations", r.bound_violations}};
  timings["total"] = r.total_ms;
  j["timings_ms"] = std::move(timings);
  return j.dump(2) + "\n";
}

}  // namespace symg

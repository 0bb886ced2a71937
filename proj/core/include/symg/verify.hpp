#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symg/json_io.hpp"

namespace symg {

// The four generator presets.  Hyperbolic instances are doubled modules in a
// scrambled basis, simple_symplectic picks an irreducible carrier of an
// invariant symplectic form, mixed sums a simple part with hyperbolic filler,
// and random_gram draws a random invariant gram matrix on a module assembled
// from dual pairs.
enum class InstanceKind { Hyperbolic, SimpleSymplectic, Mixed, RandomGram };

const char* instance_kind_name(InstanceKind k);
std::optional<InstanceKind> instance_kind_from_name(const std::string& name);

// Everything that pins a generated instance except the master seed.
struct InstanceSpec {
  GroupDesc group;
  uint32_t p = 3;
  uint32_t k = 1;
  InstanceKind kind = InstanceKind::Hyperbolic;
  uint32_t dim_budget = 8;
  uint64_t seed = 0;
};

// Canonical single-line key; also the replay recipe recorded in reports.
std::string spec_to_json(const InstanceSpec& spec);

// Deterministic in (spec, master_seed).  Throws Infeasible when the requested
// kind cannot be realized for the pair, e.g. simple_symplectic when no
// irreducible module within budget carries an invariant symplectic form.
Instance gen_instance(const InstanceSpec& spec, uint64_t master_seed);

struct CheckResult {
  bool pass = true;
  std::string detail;
};

// The module is hyperbolic iff its restrictions to all cyclic subgroups are;
// both sides are decided by independent searches.
CheckResult check_theorem_A(const SymplecticModule& b);

// Hyperbolic modules in coprime characteristic: every self-dual simple
// constituent occurs with even multiplicity, on the module itself and on its
// restriction to each normal subgroup.
CheckResult check_even_multiplicity(const SymplecticModule& b);

// Coprime pairs: over the splitting field every catalog entry is absolutely
// irreducible and the trivial module is the only self-dual entry.
CheckResult check_self_dual_trivial(const GroupRef& g, uint32_t p);

// Every simple submodule of the restriction to the given subgroup is
// self-dual.
CheckResult check_restriction_self_dual(const SymplecticModule& u,
                                        const std::vector<uint32_t>& elems);

// Multiplicity of the isotypic constituent of the restriction to the given
// subgroup, when that restriction is homogeneous with nontrivial constituent;
// nullopt otherwise.
std::optional<uint32_t> homogeneous_nontrivial_multiplicity(
    const SymplecticModule& u, const std::vector<uint32_t>& elems);

struct Violation {
  std::string section;
  std::string check;
  std::string spec;      // replayable generator spec, JSON text
  std::string instance;  // full instance document when one was built
  std::string detail;
};

struct ProbeRow {
  std::string spec;      // generator spec of the probed instance
  std::string subgroup;  // JSON list of parent element indices
  uint32_t multiplicity = 0;
  bool odd = false;
};

struct SectionReport {
  std::string name;
  uint32_t attempted = 0;
  uint32_t passed = 0;
  uint32_t skipped = 0;  // precondition not met for the check
  uint32_t capped = 0;   // resource cap hit while generating or checking
  double elapsed_ms = 0.0;
};

struct SuiteReport {
  std::string suite;
  uint64_t master_seed = 0;
  std::vector<SectionReport> sections;
  std::vector<Violation> violations;
  std::vector<ProbeRow> probes;
  // Isotropy statistics accumulated by this run only.
  uint64_t isotropic_seen = 0;
  uint64_t bound_violations = 0;
  double total_ms = 0.0;

  bool consistent() const { return violations.empty() && bound_violations == 0; }
};

struct CorpusSpec {
  std::vector<GroupDesc> groups;
  std::vector<uint32_t> primes = {3, 5, 7};
  uint32_t instances_per_pair = 20;
  uint32_t dim_budget = 8;          // pairs with p coprime to the group order
  uint32_t modular_dim_budget = 6;  // pairs where p divides the group order
};

// Odd cyclic groups up to order 27, small abelian products, one metacyclic
// and one extraspecial group, over p in {3, 5, 7}.
CorpusSpec default_corpus();

// Section names accepted by run_suite, not counting the umbrella "all".
std::vector<std::string> suite_names();

// Generates and checks seeded instances over the corpus.  Tasks are
// independent; `jobs` sized worker pools run them, and reports are aggregated
// in task order so the output is identical for any job count.
SuiteReport run_suite(const std::string& suite, const CorpusSpec& corpus,
                      uint64_t master_seed, uint32_t jobs = 1);

// Pretty-printed report; all wall-clock numbers live under "timings_ms" so
// comparison tooling can drop that one key.
std::string report_to_json(const SuiteReport& r);

}  // namespace symg

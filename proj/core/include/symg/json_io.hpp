#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symg/groups.hpp"
#include "symg/symplectic.hpp"

namespace symg {

// Construction recipe for a group, as written in instance files.  Exactly one
// of the kind-specific fields is meaningful per kind.
struct GroupDesc {
  std::string kind;  // "cyclic" | "product" | "semidirect_cyclic" |
                     // "extraspecial_exp_q" | "table"
  uint32_t n = 0;                            // cyclic, semidirect_cyclic
  uint32_t m = 0, r = 0;                     // semidirect_cyclic
  uint32_t q = 0;                            // extraspecial_exp_q
  std::vector<GroupDesc> factors;            // product
  std::vector<std::vector<uint32_t>> table;  // table (row-major rows)
};

GroupDesc cyclic_desc(uint32_t n);
GroupDesc product_desc(std::vector<GroupDesc> factors);
GroupDesc semidirect_desc(uint32_t n, uint32_t m, uint32_t r);
GroupDesc extraspecial_desc(uint32_t q);
// Fallback descriptor carrying the full multiplication table.
GroupDesc table_desc(const FiniteGroup& g);

GroupRef build_group(const GroupDesc& g);

// Compact single-line forms, canonical for equal descriptors.
std::string group_desc_to_json(const GroupDesc& g);
GroupDesc group_desc_from_json(const std::string& text);

// A symplectic module joined with the group recipe needed to serialize it.
struct Instance {
  GroupDesc group;
  SymplecticModule sym;
};

// Pretty-printed, newline-terminated document with the keys
// field / group / module / gram.  Parsing validates the whole document and
// re-runs module and form validation; malformed input raises InvalidInput.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

// Row-array form of a matrix, entries in the field element encoding
// (integer for prime fields, ascending coefficient array otherwise).
std::string mat_to_json(const Mat& m);

}  // namespace symg

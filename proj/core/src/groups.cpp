#include "symg/groups.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "symg/errors.hpp"

namespace symg {
namespace {

constexpr uint32_t kMaxOrder = 512;
constexpr size_t kMaxSubgroups = 4096;

// Closure of a seed set under the table product, as a sorted member list.
std::vector<uint32_t> close_under_mul(uint32_t n, const std::vector<uint32_t>& table,
                                      const std::vector<uint32_t>& seed) {
  std::vector<char> in(n, 0);
  std::vector<uint32_t> work;
  std::vector<uint32_t> members;
  auto push = [&](uint32_t e) {
    if (!in[e]) {
      in[e] = 1;
      work.push_back(e);
      members.push_back(e);
    }
  };
  push(0);
  for (uint32_t e : seed) push(e);
  for (size_t i = 0; i < work.size(); ++i) {
    uint32_t a = work[i];
    // Multiply against every current member, both ways.
    for (size_t j = 0; j < work.size() && members.size() < n; ++j) {
      push(table[static_cast<size_t>(a) * n + work[j]]);
      push(table[static_cast<size_t>(work[j]) * n + a]);
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<uint32_t> greedy_gens(uint32_t n, const std::vector<uint32_t>& table) {
  std::vector<uint32_t> gens;
  std::vector<uint32_t> have = {0};
  while (have.size() < n) {
    uint32_t next = 0;
    for (uint32_t e = 1; e < n; ++e) {
      if (!std::binary_search(have.begin(), have.end(), e)) {
        next = e;
        break;
      }
    }
    gens.push_back(next);
    have = close_under_mul(n, table, gens);
  }
  return gens;
}

void validate_table(uint32_t n, const std::vector<uint32_t>& table) {
  require(n >= 1 && n <= kMaxOrder, Errc::InvalidInput,
          "group order must be between 1 and 512");
  require(table.size() == static_cast<size_t>(n) * n, Errc::NotAGroup,
          "multiplication table has the wrong size");
  for (uint32_t v : table)
    require(v < n, Errc::NotAGroup, "table entry out of range");
  for (uint32_t a = 0; a < n; ++a) {
    require(table[a] == a, Errc::NotAGroup, "index 0 must be a left identity");
    require(table[static_cast<size_t>(a) * n] == a, Errc::NotAGroup,
            "index 0 must be a right identity");
  }
  // Latin square: rows and columns are permutations.
  std::vector<char> seen(n);
  for (uint32_t a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (uint32_t b = 0; b < n; ++b) {
      uint32_t v = table[static_cast<size_t>(a) * n + b];
      require(!seen[v], Errc::NotAGroup, "row repeats an element");
      seen[v] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (uint32_t b = 0; b < n; ++b) {
      uint32_t v = table[static_cast<size_t>(b) * n + a];
      require(!seen[v], Errc::NotAGroup, "column repeats an element");
      seen[v] = 1;
    }
  }
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b)
      for (uint32_t c = 0; c < n; ++c) {
        uint32_t ab = table[static_cast<size_t>(a) * n + b];
        uint32_t bc = table[static_cast<size_t>(b) * n + c];
        require(table[static_cast<size_t>(ab) * n + c] ==
                    table[static_cast<size_t>(a) * n + bc],
                Errc::NotAGroup, "table is not associative");
      }
}

bool is_odd_prime_u32(uint32_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (uint32_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

GroupRef group_from_parts(uint32_t n, std::vector<uint32_t> table,
                          std::vector<uint32_t> gens, bool validate) {
  if (validate) {
    validate_table(n, table);
  } else {
    require(n >= 1 && n <= kMaxOrder, Errc::InvalidInput,
            "group order must be between 1 and 512");
  }
  if (gens.empty() && n > 1) gens = greedy_gens(n, table);
  return GroupRef(new FiniteGroup(n, std::move(table), std::move(gens)));
}

FiniteGroup::FiniteGroup(uint32_t n, std::vector<uint32_t> table,
                         std::vector<uint32_t> gens)
    : n_(n), table_(std::move(table)), gens_(std::move(gens)) {
  inv_.assign(n_, 0);
  for (uint32_t a = 0; a < n_; ++a)
    for (uint32_t b = 0; b < n_; ++b)
      if (mul(a, b) == 0) inv_[a] = b;
}

uint32_t FiniteGroup::elem_order(uint32_t a) const {
  uint32_t cur = a, ord = 1;
  while (cur != 0) {
    cur = mul(cur, a);
    ++ord;
  }
  return ord;
}

uint32_t FiniteGroup::exponent() const {
  uint64_t e = 1;
  for (uint32_t a = 0; a < n_; ++a) e = std::lcm(e, static_cast<uint64_t>(elem_order(a)));
  return static_cast<uint32_t>(e);
}

bool FiniteGroup::is_abelian() const {
  for (uint32_t a = 0; a < n_; ++a)
    for (uint32_t b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::string FiniteGroup::table_bytes() const {
  std::string s;
  s.reserve(4 + 2 * table_.size());
  for (int i = 3; i >= 0; --i) s.push_back(static_cast<char>((n_ >> (8 * i)) & 0xff));
  for (uint32_t v : table_) {
    s.push_back(static_cast<char>((v >> 8) & 0xff));
    s.push_back(static_cast<char>(v & 0xff));
  }
  return s;
}

bool same_group(const FiniteGroup& a, const FiniteGroup& b) {
  // Module generator matrices are paired with the designated generator list
  // by position, so two groups are interchangeable only when the generator
  // sequences agree as well as the tables.
  return &a == &b || (a.order() == b.order() && a.table() == b.table() &&
                      a.gens() == b.gens());
}

GroupRef group_cyclic(uint32_t n) {
  require(n >= 1 && n <= kMaxOrder, Errc::InvalidInput,
          "group order must be between 1 and 512");
  std::vector<uint32_t> table(static_cast<size_t>(n) * n);
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b) table[static_cast<size_t>(a) * n + b] = (a + b) % n;
  std::vector<uint32_t> gens;
  if (n > 1) gens.push_back(1);
  return group_from_parts(n, std::move(table), std::move(gens), false);
}

GroupRef group_product(const std::vector<GroupRef>& factors) {
  uint64_t total = 1;
  for (const GroupRef& f : factors) {
    require(f != nullptr, Errc::InvalidInput, "null factor");
    total *= f->order();
    require(total <= kMaxOrder, Errc::InvalidInput,
            "group order must be between 1 and 512");
  }
  uint32_t n = static_cast<uint32_t>(total);
  auto decode = [&](uint32_t idx, std::vector<uint32_t>& tuple) {
    for (size_t t = 0; t < factors.size(); ++t) {
      tuple[t] = idx % factors[t]->order();
      idx /= factors[t]->order();
    }
  };
  std::vector<uint32_t> table(static_cast<size_t>(n) * n);
  std::vector<uint32_t> ta(factors.size()), tb(factors.size());
  for (uint32_t a = 0; a < n; ++a) {
    decode(a, ta);
    for (uint32_t b = 0; b < n; ++b) {
      decode(b, tb);
      uint32_t idx = 0, stride = 1;
      for (size_t t = 0; t < factors.size(); ++t) {
        idx += factors[t]->mul(ta[t], tb[t]) * stride;
        stride *= factors[t]->order();
      }
      table[static_cast<size_t>(a) * n + b] = idx;
    }
  }
  std::vector<uint32_t> gens;
  uint32_t stride = 1;
  for (const GroupRef& f : factors) {
    for (uint32_t g : f->gens()) gens.push_back(g * stride);
    stride *= f->order();
  }
  return group_from_parts(n, std::move(table), std::move(gens), false);
}

GroupRef group_from_table(uint32_t n, std::vector<uint32_t> flat_table) {
  return group_from_parts(n, std::move(flat_table), {}, true);
}

GroupRef group_semidirect_cyclic(uint32_t n, uint32_t m, uint32_t r) {
  require(n >= 1 && m >= 1, Errc::InvalidInput, "factor orders must be positive");
  uint64_t total = static_cast<uint64_t>(n) * m;
  require(total <= kMaxOrder, Errc::InvalidInput,
          "group order must be between 1 and 512");
  r %= n;
  require(std::gcd(r, n) == 1, Errc::NotAGroup, "twist must be a unit mod n");
  // r^j mod n for j < m, and r^m must return to 1 so the action is by C_m.
  std::vector<uint32_t> rp(m);
  uint64_t cur = 1 % n;
  for (uint32_t j = 0; j < m; ++j) {
    rp[j] = static_cast<uint32_t>(cur);
    cur = cur * r % n;
  }
  require(cur == 1 % n, Errc::NotAGroup, "twist must satisfy r^m = 1 (mod n)");
  uint32_t N = static_cast<uint32_t>(total);
  std::vector<uint32_t> table(static_cast<size_t>(N) * N);
  for (uint32_t a = 0; a < N; ++a) {
    uint32_t i = a % n, j = a / n;
    for (uint32_t b = 0; b < N; ++b) {
      uint32_t i2 = b % n, j2 = b / n;
      uint32_t ii = static_cast<uint32_t>((i + static_cast<uint64_t>(rp[j]) * i2) % n);
      uint32_t jj = (j + j2) % m;
      table[static_cast<size_t>(a) * N + b] = ii + n * jj;
    }
  }
  std::vector<uint32_t> gens;
  if (n > 1) gens.push_back(1);
  if (m > 1) gens.push_back(n);
  return group_from_parts(N, std::move(table), std::move(gens), false);
}

GroupRef group_extraspecial_exp_q(uint32_t q) {
  require(is_odd_prime_u32(q), Errc::NotAGroup, "q must be an odd prime");
  uint64_t total = static_cast<uint64_t>(q) * q * q;
  require(total <= kMaxOrder, Errc::InvalidInput,
          "group order must be between 1 and 512");
  uint32_t N = static_cast<uint32_t>(total);
  std::vector<uint32_t> table(static_cast<size_t>(N) * N);
  for (uint32_t x = 0; x < N; ++x) {
    uint32_t a = x / (q * q), b = (x / q) % q, c = x % q;
    for (uint32_t y = 0; y < N; ++y) {
      uint32_t a2 = y / (q * q), b2 = (y / q) % q, c2 = y % q;
      uint32_t aa = (a + a2) % q;
      uint32_t bb = (b + b2) % q;
      uint32_t cc = (c + c2 + a * b2) % q;
      table[static_cast<size_t>(x) * N + y] = aa * q * q + bb * q + cc;
    }
  }
  return group_from_parts(N, std::move(table), {q * q, q}, false);
}

std::vector<uint32_t> subgroup_generated(const FiniteGroup& g,
                                         const std::vector<uint32_t>& gens) {
  for (uint32_t e : gens)
    require(e < g.order(), Errc::InvalidInput, "generator index out of range");
  return close_under_mul(g.order(), g.table(), gens);
}

SubgroupView subgroup_as_group(const GroupRef& g, const std::vector<uint32_t>& members) {
  require(g != nullptr, Errc::InvalidInput, "null group");
  std::vector<uint32_t> mem = members;
  std::sort(mem.begin(), mem.end());
  mem.erase(std::unique(mem.begin(), mem.end()), mem.end());
  require(!mem.empty() && mem[0] == 0, Errc::NotSubgroup,
          "members must include the identity");
  std::vector<int32_t> pos(g->order(), -1);
  for (size_t i = 0; i < mem.size(); ++i) {
    require(mem[i] < g->order(), Errc::NotSubgroup, "member index out of range");
    pos[mem[i]] = static_cast<int32_t>(i);
  }
  if (mem.size() == g->order()) {
    // The whole group: keep the original object so its designated generators
    // (and any caches keyed to them) stay valid.
    SubgroupView whole;
    whole.group = g;
    whole.to_parent = std::move(mem);
    return whole;
  }
  uint32_t n = static_cast<uint32_t>(mem.size());
  std::vector<uint32_t> table(static_cast<size_t>(n) * n);
  for (uint32_t x = 0; x < n; ++x)
    for (uint32_t y = 0; y < n; ++y) {
      uint32_t prod = g->mul(mem[x], mem[y]);
      require(pos[prod] >= 0, Errc::NotSubgroup, "member set is not closed");
      table[static_cast<size_t>(x) * n + y] = static_cast<uint32_t>(pos[prod]);
    }
  SubgroupView view;
  view.group = group_from_parts(n, std::move(table), {}, false);
  view.to_parent = std::move(mem);
  return view;
}

std::vector<uint32_t> center(const FiniteGroup& g) {
  std::vector<uint32_t> out;
  for (uint32_t a = 0; a < g.order(); ++a) {
    bool central = true;
    for (uint32_t b = 0; b < g.order() && central; ++b)
      central = g.mul(a, b) == g.mul(b, a);
    if (central) out.push_back(a);
  }
  return out;
}

std::vector<std::vector<uint32_t>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<char> done(g.order(), 0);
  std::vector<std::vector<uint32_t>> classes;
  for (uint32_t a = 0; a < g.order(); ++a) {
    if (done[a]) continue;
    std::vector<uint32_t> cls;
    for (uint32_t t = 0; t < g.order(); ++t) {
      uint32_t conj = g.mul(g.mul(t, a), g.inv(t));
      if (!done[conj]) {
        done[conj] = 1;
        cls.push_back(conj);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

bool is_normal(const FiniteGroup& g, const std::vector<uint32_t>& members) {
  std::vector<char> in(g.order(), 0);
  for (uint32_t e : members) {
    require(e < g.order(), Errc::InvalidInput, "member index out of range");
    in[e] = 1;
  }
  for (uint32_t h : members)
    for (uint32_t t = 0; t < g.order(); ++t)
      if (!in[g.mul(g.mul(t, h), g.inv(t))]) return false;
  return true;
}

std::vector<std::vector<uint32_t>> all_subgroups(const FiniteGroup& g) {
  std::set<std::vector<uint32_t>> seen;
  std::vector<std::vector<uint32_t>> work;
  seen.insert({0});
  work.push_back({0});
  while (!work.empty()) {
    std::vector<uint32_t> h = std::move(work.back());
    work.pop_back();
    for (uint32_t e = 1; e < g.order(); ++e) {
      if (std::binary_search(h.begin(), h.end(), e)) continue;
      std::vector<uint32_t> seed = h;
      seed.push_back(e);
      std::vector<uint32_t> k = close_under_mul(g.order(), g.table(), seed);
      if (seen.insert(k).second) {
        require(seen.size() <= kMaxSubgroups, Errc::CapExceeded,
                "subgroup lattice is too large");
        work.push_back(std::move(k));
      }
    }
  }
  std::vector<std::vector<uint32_t>> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<std::vector<uint32_t>> cyclic_subgroups(const FiniteGroup& g) {
  std::set<std::vector<uint32_t>> seen;
  for (uint32_t a = 0; a < g.order(); ++a)
    seen.insert(close_under_mul(g.order(), g.table(), {a}));
  std::vector<std::vector<uint32_t>> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<std::vector<uint32_t>> normal_subgroups(const FiniteGroup& g) {
  std::vector<std::vector<uint32_t>> out;
  for (std::vector<uint32_t>& h : all_subgroups(g))
    if (is_normal(g, h)) out.push_back(std::move(h));
  return out;
}

}  // namespace symg

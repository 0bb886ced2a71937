#include "symg/json_io.hpp"

#include <utility>

#include "json.hpp"
#include "symg/errors.hpp"
#include "symg/modrep.hpp"

namespace symg {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) { fail(Errc::InvalidInput, what); }

uint32_t get_u32(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned())
    bad(std::string("missing or non-integer field: ") + key);
  const uint64_t v = j[key].get<uint64_t>();
  if (v > UINT32_MAX) bad(std::string("field out of range: ") + key);
  return uint32_t(v);
}

ordered_json group_json(const GroupDesc& g) {
  ordered_json j;
  j["kind"] = g.kind;
  if (g.kind == "cyclic") {
    j["n"] = g.n;
  } else if (g.kind == "product") {
    ordered_json fs = ordered_json::array();
    for (const GroupDesc& f : g.factors) fs.push_back(group_json(f));
    j["factors"] = std::move(fs);
  } else if (g.kind == "semidirect_cyclic") {
    j["n"] = g.n;
    j["m"] = g.m;
    j["r"] = g.r;
  } else if (g.kind == "extraspecial_exp_q") {
    j["q"] = g.q;
  } else if (g.kind == "table") {
    j["size"] = uint32_t(g.table.size());
    j["table"] = g.table;
  } else {
    bad("unknown group kind: " + g.kind);
  }
  return j;
}

GroupDesc group_from(const ordered_json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    bad("group descriptor must be an object with a string kind");
  GroupDesc g;
  g.kind = j["kind"].get<std::string>();
  if (g.kind == "cyclic") {
    g.n = get_u32(j, "n");
  } else if (g.kind == "product") {
    if (!j.contains("factors") || !j["factors"].is_array())
      bad("product group needs a factors array");
    for (const auto& f : j["factors"]) g.factors.push_back(group_from(f));
  } else if (g.kind == "semidirect_cyclic") {
    g.n = get_u32(j, "n");
    g.m = get_u32(j, "m");
    g.r = get_u32(j, "r");
  } else if (g.kind == "extraspecial_exp_q") {
    g.q = get_u32(j, "q");
  } else if (g.kind == "table") {
    const uint32_t size = get_u32(j, "size");
    if (!j.contains("table") || !j["table"].is_array() || j["table"].size() != size)
      bad("table group needs a size-by-size table array");
    for (const auto& row : j["table"]) {
      if (!row.is_array() || row.size() != size) bad("ragged group table row");
      std::vector<uint32_t> out;
      for (const auto& e : row) {
        if (!e.is_number_unsigned() || e.get<uint64_t>() >= size)
          bad("group table entries must be element indices");
        out.push_back(e.get<uint32_t>());
      }
      g.table.push_back(std::move(out));
    }
  } else {
    bad("unknown group kind: " + g.kind);
  }
  return g;
}

ordered_json elem_json(const FieldRef& f, const FVal& v) {
  if (f->k() == 1) return ordered_json(f->to_uint(v));
  ordered_json arr = ordered_json::array();
  uint64_t idx = f->to_uint(v);
  for (uint32_t i = 0; i < f->k(); ++i) {
    arr.push_back(idx % f->p());
    idx /= f->p();
  }
  return arr;
}

FVal elem_from(const FieldRef& f, const ordered_json& j) {
  if (j.is_number_unsigned()) {
    const uint64_t v = j.get<uint64_t>();
    if (f->k() == 1) {
      if (v >= f->p()) bad("field element out of range");
      return f->from_uint(v);
    }
    bad("extension field elements must be coefficient arrays");
  }
  if (!j.is_array() || j.size() != f->k())
    bad("field element must be an integer or a k-length coefficient array");
  uint64_t idx = 0, scale = 1;
  for (const auto& c : j) {
    if (!c.is_number_unsigned() || c.get<uint64_t>() >= f->p())
      bad("field element coefficient out of range");
    idx += c.get<uint64_t>() * scale;
    scale *= f->p();
  }
  return f->from_uint(idx);
}

ordered_json mat_json(const Mat& m) {
  ordered_json rows = ordered_json::array();
  for (uint32_t i = 0; i < m.rows; ++i) {
    ordered_json row = ordered_json::array();
    for (uint32_t j = 0; j < m.cols; ++j) row.push_back(elem_json(m.field, m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from(const FieldRef& f, const ordered_json& j, uint32_t rows, uint32_t cols,
             const char* what) {
  if (!j.is_array() || j.size() != rows)
    bad(std::string(what) + ": expected " + std::to_string(rows) + " rows");
  Mat m = mat_make(f, rows, cols);
  for (uint32_t i = 0; i < rows; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != cols)
      bad(std::string(what) + ": ragged or wrongly sized row");
    for (uint32_t c = 0; c < cols; ++c) m.at(i, c) = elem_from(f, row[c]);
  }
  return m;
}

}  // namespace

GroupDesc cyclic_desc(uint32_t n) {
  GroupDesc g;
  g.kind = "cyclic";
  g.n = n;
  return g;
}

GroupDesc product_desc(std::vector<GroupDesc> factors) {
  GroupDesc g;
  g.kind = "product";
  g.factors = std::move(factors);
  return g;
}

GroupDesc semidirect_desc(uint32_t n, uint32_t m, uint32_t r) {
  GroupDesc g;
  g.kind = "semidirect_cyclic";
  g.n = n;
  g.m = m;
  g.r = r;
  return g;
}

GroupDesc extraspecial_desc(uint32_t q) {
  GroupDesc g;
  g.kind = "extraspecial_exp_q";
  g.q = q;
  return g;
}

GroupDesc table_desc(const FiniteGroup& g) {
  GroupDesc out;
  out.kind = "table";
  const uint32_t n = g.order();
  out.table.resize(n);
  for (uint32_t a = 0; a < n; ++a) {
    out.table[a].resize(n);
    for (uint32_t b = 0; b < n; ++b) out.table[a][b] = g.mul(a, b);
  }
  return out;
}

GroupRef build_group(const GroupDesc& g) {
  if (g.kind == "cyclic") return group_cyclic(g.n);
  if (g.kind == "product") {
    std::vector<GroupRef> fs;
    fs.reserve(g.factors.size());
    for (const GroupDesc& f : g.factors) fs.push_back(build_group(f));
    return group_product(fs);
  }
  if (g.kind == "semidirect_cyclic") return group_semidirect_cyclic(g.n, g.m, g.r);
  if (g.kind == "extraspecial_exp_q") return group_extraspecial_exp_q(g.q);
  if (g.kind == "table") {
    std::vector<uint32_t> flat;
    const size_t n = g.table.size();
    flat.reserve(n * n);
    for (const auto& row : g.table) {
      if (row.size() != n) bad("ragged group table");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return group_from_table(uint32_t(n), std::move(flat));
  }
  bad("unknown group kind: " + g.kind);
}

std::string group_desc_to_json(const GroupDesc& g) { return group_json(g).dump(); }

GroupDesc group_desc_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("group descriptor is not valid JSON");
  return group_from(j);
}

std::string instance_to_json(const Instance& inst) {
  const FieldRef& f = inst.sym.field();
  ordered_json j;
  j["field"] = ordered_json{{"p", f->p()}, {"k", f->k()}};
  j["group"] = group_json(inst.group);
  ordered_json mod;
  mod["dim"] = inst.sym.dim();
  ordered_json gens = ordered_json::array();
  for (const Mat& g : inst.sym.module->gen_mats()) gens.push_back(mat_json(g));
  mod["generators"] = std::move(gens);
  j["module"] = std::move(mod);
  j["gram"] = mat_json(inst.sym.gram);
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("instance is not valid JSON");
  if (!j.is_object()) bad("instance must be a JSON object");
  for (const char* key : {"field", "group", "module", "gram"})
    if (!j.contains(key)) bad(std::string("instance is missing key: ") + key);

  const auto& jf = j["field"];
  if (!jf.is_object()) bad("field must be an object with p and k");
  const uint32_t p = get_u32(jf, "p");
  const uint32_t k = get_u32(jf, "k");
  FieldRef field;
  try {
    field = make_field(p, k);
  } catch (const SymgError& e) {
    bad(std::string("bad field: ") + e.what());
  }

  GroupDesc gd = group_from(j["group"]);
  GroupRef group;
  try {
    group = build_group(gd);
  } catch (const SymgError& e) {
    bad(std::string("bad group: ") + e.what());
  }

  const auto& jm = j["module"];
  if (!jm.is_object()) bad("module must be an object");
  const uint32_t dim = get_u32(jm, "dim");
  if (!jm.contains("generators") || !jm["generators"].is_array() ||
      jm["generators"].size() != group->gens().size())
    bad("module needs one generator matrix per group generator");
  std::vector<Mat> mats;
  for (const auto& gj : jm["generators"])
    mats.push_back(mat_from(field, gj, dim, dim, "generator matrix"));

  Mat gram = mat_from(field, j["gram"], dim, dim, "gram matrix");

  try {
    ModuleRef m = mats.empty() ? trivial_module(group, field, dim)
                               : module_from_action(group, field, std::move(mats));
    return Instance{std::move(gd), make_symplectic(m, std::move(gram))};
  } catch (const SymgError& e) {
    if (e.code == Errc::InvalidInput || errc_is_cap(e.code)) throw;
    bad(std::string("instance failed validation: ") + e.what());
  }
}

std::string mat_to_json(const Mat& m) { return mat_json(m).dump(); }

}  // namespace symg

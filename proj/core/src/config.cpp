#include "symg/config.hpp"

#include <cstdlib>

namespace symg {
namespace {

uint64_t env_u64(const char* name, uint64_t fallback) {
  const char* s = std::getenv(name);
  if (!s || !*s) return fallback;
  char* end = nullptr;
  unsigned long long v = std::strtoull(s, &end, 10);
  if (end == s || *end != '\0' || v == 0) return fallback;
  return static_cast<uint64_t>(v);
}

}  // namespace

uint64_t spin_cap() { return env_u64("SYMG_SPIN_CAP", uint64_t(1) << 20); }

int meataxe_tries() {
  uint64_t v = env_u64("SYMG_MEATAXE_TRIES", 64);
  return v > 4096 ? 4096 : static_cast<int>(v);
}

uint64_t enum_cap() { return env_u64("SYMG_ENUM_CAP", uint64_t(1) << 24); }

const char* library_version() { return "0.1.0"; }

}  // namespace symg

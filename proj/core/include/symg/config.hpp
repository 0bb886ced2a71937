#pragma once

#include <cstdint>

namespace symg {

// Resource caps.  Each reads its environment override on every call so tests
// can tighten or relax a limit around a single operation.
//
//   SYMG_SPIN_CAP       bound on |field|^dim below which irreducibility is
//                       decided by spinning one representative per line
//                       (default 2^20)
//   SYMG_MEATAXE_TRIES  random algebra elements tried before giving up
//                       (default 64)
//   SYMG_ENUM_CAP       bound on |field|^(hom dimension) for exhaustive
//                       minimal-submodule enumeration (default 2^24)
uint64_t spin_cap();
int meataxe_tries();
uint64_t enum_cap();

// Library version string, matching the CMake project version.
const char* library_version();

}  // namespace symg

#include <cstdlib>
#include <string>

#include "rdmono/kernels.hpp"

namespace rdmono::kernels {

#if !(defined(__x86_64__) || defined(_M_X64) || defined(__i386__))
const KernelTable* avx2_table() { return nullptr; }
#endif
#if !(defined(__aarch64__) || defined(_M_ARM64))
const KernelTable* neon_table() { return nullptr; }
#endif

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

namespace {

const KernelTable& select() {
  const char* forced = std::getenv("RDMONO_ISA");
  const std::string want = forced ? forced : "";
  if (want == "scalar") return scalar_table();
  if (want == "avx2" && avx2_table()) return *avx2_table();
  if (want == "neon" && neon_table()) return *neon_table();
  if (const auto* t = avx2_table()) return *t;
  if (const auto* t = neon_table()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace rdmono::kernels

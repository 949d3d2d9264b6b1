#include "hamest/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace hamest::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Ops* select() {
  const char* forced = std::getenv("HAMEST_KERNELS");
  if (forced != nullptr) {
    if (std::strcmp(forced, "scalar") == 0) return &scalar_ops();
    if (std::strcmp(forced, "avx2") == 0 && cpu_has_avx2() &&
        avx2_ops() != nullptr)
      return avx2_ops();
    return &scalar_ops();  // unknown or unavailable: fall back
  }
  if (cpu_has_avx2() && avx2_ops() != nullptr) return avx2_ops();
  return &scalar_ops();
}

}  // namespace

const Ops& active() {
  static const Ops* chosen = select();
  return *chosen;
}

}  // namespace hamest::kernels

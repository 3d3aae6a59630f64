#include "rotsim/kernels.hpp"

#include <cstdlib>

#include "rotsim/errors.hpp"

namespace rotsim::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(ROTSIM_BUILD_AVX2) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Backend* resolve(const std::string& name) {
  if (name == "scalar") return &scalar::backend;
#if defined(ROTSIM_BUILD_AVX2)
  if (name == "avx2") {
    if (!cpu_has_avx2())
      throw UnsupportedError("avx2 backend requested but CPU lacks AVX2/FMA");
    return &avx2::backend;
  }
#else
  if (name == "avx2")
    throw UnsupportedError("avx2 backend was not compiled in");
#endif
  if (name == "auto") {
#if defined(ROTSIM_BUILD_AVX2)
    if (cpu_has_avx2()) return &avx2::backend;
#endif
    return &scalar::backend;
  }
  throw UnsupportedError("unknown kernel backend '" + name + "'");
}

const Backend* initial_backend() {
  if (const char* env = std::getenv("ROTSIM_SIMD")) return resolve(env);
  return resolve("auto");
}

const Backend*& active_ptr() {
  static const Backend* ptr = initial_backend();
  return ptr;
}

} // namespace

const Backend& active() { return *active_ptr(); }

void force_backend(const std::string& name) { active_ptr() = resolve(name); }

bool avx2_available() { return cpu_has_avx2(); }

} // namespace rotsim::kernels

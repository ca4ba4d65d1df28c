#include "dgn/kernels.hpp"

#include <cstdlib>

namespace dgn::kernels {
namespace {

const Kernels* g_active = nullptr;

const Kernels* pick(std::string_view name) {
  if (name == "scalar") return &scalar();
  if (name == "avx2") return avx2();
  if (name == "auto") return avx2() ? avx2() : &scalar();
  return nullptr;
}

const Kernels* initial() {
  if (const char* env = std::getenv("DGN_KERNELS")) {
    if (const Kernels* k = pick(env)) return k;
  }
  return avx2() ? avx2() : &scalar();
}

}  // namespace

const Kernels& active() {
  if (!g_active) g_active = initial();
  return *g_active;
}

bool set_active(std::string_view name) {
  const Kernels* k = pick(name);
  if (!k) return false;
  g_active = k;
  return true;
}

}  // namespace dgn::kernels

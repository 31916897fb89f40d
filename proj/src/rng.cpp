#include "streetsim/rng.hpp"

#include <atomic>
#include <cstdlib>

namespace streetsim::rng {

namespace {

constexpr uint32_t kMul0 = 0xD2511F53u;
constexpr uint32_t kMul1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;

}  // namespace

std::array<uint32_t, 4> philox4x32_10(std::array<uint32_t, 4> c,
                                      std::array<uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const uint64_t p0 = static_cast<uint64_t>(kMul0) * c[0];
    const uint64_t p1 = static_cast<uint64_t>(kMul1) * c[2];
    c = {static_cast<uint32_t>(p1 >> 32) ^ c[1] ^ key[0],
         static_cast<uint32_t>(p1),
         static_cast<uint32_t>(p0 >> 32) ^ c[3] ^ key[1],
         static_cast<uint32_t>(p0)};
  }
  return c;
}

DrawPair draws_at(uint64_t seed, uint32_t trial, uint32_t street, uint32_t slot) {
  const std::array<uint32_t, 2> key = {static_cast<uint32_t>(seed),
                                       static_cast<uint32_t>(seed >> 32)};
  const std::array<uint32_t, 4> out = philox4x32_10({slot, street, trial, 0}, key);
  return DrawPair{static_cast<uint64_t>(out[0]) | (static_cast<uint64_t>(out[1]) << 32),
                  static_cast<uint64_t>(out[2]) | (static_cast<uint64_t>(out[3]) << 32)};
}

void fill_draws_scalar(uint64_t seed, uint32_t trial, uint32_t street,
                       uint32_t slot0, int count, uint64_t* u, uint64_t* v) {
  for (int i = 0; i < count; ++i) {
    const DrawPair d = draws_at(seed, trial, street, slot0 + static_cast<uint32_t>(i));
    u[i] = d.u;
    v[i] = d.v;
  }
}

namespace {

std::atomic<bool> g_force_scalar{false};

bool env_force_scalar() {
  static const bool forced = [] {
    const char* e = std::getenv("STREETSIM_FORCE_SCALAR");
    return e != nullptr && e[0] == '1';
  }();
  return forced;
}

FillFn resolve() {
#if defined(STREETSIM_HAVE_AVX2_TU)
  if (!g_force_scalar.load(std::memory_order_relaxed) && !env_force_scalar() &&
      __builtin_cpu_supports("avx2")) {
    return &fill_draws_avx2;
  }
#endif
  return &fill_draws_scalar;
}

}  // namespace

FillFn active_fill() { return resolve(); }

const char* active_kernel_name() {
  return resolve() == &fill_draws_scalar ? "scalar" : "avx2";
}

void set_force_scalar(bool force) {
  g_force_scalar.store(force, std::memory_order_relaxed);
}

Threshold Threshold::from_prob(double p) {
  if (p >= 1.0) return Threshold{0, true};
  if (p <= 0.0) return Threshold{0, false};
  return Threshold{static_cast<uint64_t>(p * 0x1.0p64), false};
}

}  // namespace streetsim::rng

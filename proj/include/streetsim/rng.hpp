#pragma once

#include <array>
#include <cstdint>

namespace streetsim::rng {

// Counter-based generator: every draw is a pure function of
// (master_seed, trial, street, slot), so trial results are independent of
// thread scheduling and worker count.  Core block: Philox4x32-10.
//
// Counter layout: {slot, street, trial, 0}; key = {seed_lo32, seed_hi32}.
// Slots below 2^31 address per-site draws; slots at 2^31 and above are
// reserved for street-level auxiliary draws (see aux_slot).
std::array<uint32_t, 4> philox4x32_10(std::array<uint32_t, 4> counter,
                                      std::array<uint32_t, 2> key);

inline constexpr uint32_t kAuxSlotBase = 0x80000000u;
inline constexpr uint32_t aux_slot(uint32_t draw_index) {
  return kAuxSlotBase + draw_index;
}

struct DrawPair {
  uint64_t u;  // words 0,1 of the block
  uint64_t v;  // words 2,3 of the block
};

DrawPair draws_at(uint64_t seed, uint32_t trial, uint32_t street, uint32_t slot);

// Fill u[i], v[i] for slots slot0 .. slot0+count-1.
void fill_draws_scalar(uint64_t seed, uint32_t trial, uint32_t street,
                       uint32_t slot0, int count, uint64_t* u, uint64_t* v);
#if defined(STREETSIM_HAVE_AVX2_TU)
void fill_draws_avx2(uint64_t seed, uint32_t trial, uint32_t street,
                     uint32_t slot0, int count, uint64_t* u, uint64_t* v);
#endif

using FillFn = void (*)(uint64_t, uint32_t, uint32_t, uint32_t, int, uint64_t*,
                        uint64_t*);

// Runtime kernel selection: AVX2 when compiled in and supported by the CPU,
// scalar otherwise.  Both kernels are bit-identical by contract (tested).
FillFn active_fill();
const char* active_kernel_name();  // "avx2" or "scalar"
// Test hook; honoured alongside the STREETSIM_FORCE_SCALAR=1 environment
// variable (checked once at first use).
void set_force_scalar(bool force);

// Bernoulli(p) threshold on 64-bit uniforms with exact p<=0 / p>=1 behavior.
struct Threshold {
  uint64_t t = 0;
  bool all = false;
  static Threshold from_prob(double p);
  bool hit(uint64_t u) const { return all || u < t; }
};

// Uniform in [0,1) with 53 random bits.
inline double to_unit(uint64_t u) { return static_cast<double>(u >> 11) * 0x1.0p-53; }

}  // namespace streetsim::rng

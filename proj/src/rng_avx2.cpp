// Eight-lane AVX2 variant of the counter-based block generator.  Compiled
// with -mavx2 in its own translation unit; selected at runtime only when the
// CPU supports AVX2.  Must produce bit-identical output to fill_draws_scalar
// (enforced by the equivalence tests).
#include <immintrin.h>

#include "streetsim/rng.hpp"

namespace streetsim::rng {

namespace {

// hi/lo 32-bit halves of lane-wise u32 * constant products.
struct MulHiLo {
  __m256i lo;
  __m256i hi;
};

inline MulHiLo mul_hilo(__m256i x, __m256i m) {
  const __m256i pe = _mm256_mul_epu32(x, m);                        // lanes 0,2,4,6
  const __m256i po = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), m); // lanes 1,3,5,7
  return MulHiLo{
      _mm256_blend_epi32(pe, _mm256_slli_epi64(po, 32), 0xAA),
      _mm256_blend_epi32(_mm256_srli_epi64(pe, 32), po, 0xAA),
  };
}

}  // namespace

void fill_draws_avx2(uint64_t seed, uint32_t trial, uint32_t street,
                     uint32_t slot0, int count, uint64_t* u, uint64_t* v) {
  const __m256i m0 = _mm256_set1_epi32(static_cast<int>(0xD2511F53u));
  const __m256i m1 = _mm256_set1_epi32(static_cast<int>(0xCD9E8D57u));
  const __m256i w0 = _mm256_set1_epi32(static_cast<int>(0x9E3779B9u));
  const __m256i w1 = _mm256_set1_epi32(static_cast<int>(0xBB67AE85u));
  const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i key0_init = _mm256_set1_epi32(static_cast<int>(static_cast<uint32_t>(seed)));
  const __m256i key1_init = _mm256_set1_epi32(static_cast<int>(static_cast<uint32_t>(seed >> 32)));
  const __m256i street_v = _mm256_set1_epi32(static_cast<int>(street));
  const __m256i trial_v = _mm256_set1_epi32(static_cast<int>(trial));

  int i = 0;
  for (; i + 8 <= count; i += 8) {
    __m256i c0 = _mm256_add_epi32(
        _mm256_set1_epi32(static_cast<int>(slot0 + static_cast<uint32_t>(i))), lane);
    __m256i c1 = street_v;
    __m256i c2 = trial_v;
    __m256i c3 = _mm256_setzero_si256();
    __m256i k0 = key0_init;
    __m256i k1 = key1_init;
    for (int round = 0; round < 10; ++round) {
      if (round) {
        k0 = _mm256_add_epi32(k0, w0);
        k1 = _mm256_add_epi32(k1, w1);
      }
      const MulHiLo p0 = mul_hilo(c0, m0);
      const MulHiLo p1 = mul_hilo(c2, m1);
      const __m256i n0 = _mm256_xor_si256(_mm256_xor_si256(p1.hi, c1), k0);
      const __m256i n2 = _mm256_xor_si256(_mm256_xor_si256(p0.hi, c3), k1);
      c0 = n0;
      c1 = p1.lo;
      c2 = n2;
      c3 = p0.lo;
    }
    alignas(32) uint32_t x0[8], x1[8], x2[8], x3[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(x0), c0);
    _mm256_store_si256(reinterpret_cast<__m256i*>(x1), c1);
    _mm256_store_si256(reinterpret_cast<__m256i*>(x2), c2);
    _mm256_store_si256(reinterpret_cast<__m256i*>(x3), c3);
    for (int l = 0; l < 8; ++l) {
      u[i + l] = static_cast<uint64_t>(x0[l]) | (static_cast<uint64_t>(x1[l]) << 32);
      v[i + l] = static_cast<uint64_t>(x2[l]) | (static_cast<uint64_t>(x3[l]) << 32);
    }
  }
  if (i < count) {
    fill_draws_scalar(seed, trial, street, slot0 + static_cast<uint32_t>(i),
                      count - i, u + i, v + i);
  }
}

}  // namespace streetsim::rng

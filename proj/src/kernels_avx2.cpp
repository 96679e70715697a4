// SPDX-License-Identifier: Apache-2.0
#include "dcapolar/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace dcapolar::kernels {

namespace {

const __m256d kSignMask = _mm256_set1_pd(-0.0);

void f_vec_avx2(const double* a, const double* b, double* out,
                std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        __m256d mag = _mm256_min_pd(_mm256_andnot_pd(kSignMask, va),
                                    _mm256_andnot_pd(kSignMask, vb));
        // sign(a) xor sign(b)
        __m256d sgn = _mm256_and_pd(_mm256_xor_pd(va, vb), kSignMask);
        _mm256_storeu_pd(out + i, _mm256_or_pd(mag, sgn));
    }
    for (; i < n; ++i) out[i] = f_kernel(a[i], b[i]);
}

void g_vec_avx2(const double* a, const double* b, const uint8_t* bl,
                double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        // beta_l == 1 flips the sign of a
        __m128i bytes = _mm_cvtsi32_si128(
            *reinterpret_cast<const int32_t*>(bl + i));
        __m256d vbl = _mm256_cvtepi32_pd(_mm_cvtepu8_epi32(bytes));
        __m256d flip = _mm256_and_pd(
            _mm256_cmp_pd(vbl, _mm256_setzero_pd(), _CMP_NEQ_OQ), kSignMask);
        _mm256_storeu_pd(out + i,
                         _mm256_add_pd(vb, _mm256_xor_pd(va, flip)));
    }
    for (; i < n; ++i) out[i] = g_kernel(a[i], b[i], bl[i]);
}

void xor_vec_avx2(const uint8_t* a, const uint8_t* b, uint8_t* out,
                  std::size_t n) {
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i),
                            _mm256_xor_si256(va, vb));
    }
    for (; i < n; ++i) out[i] = a[i] ^ b[i];
}

void scale_vec_avx2(const double* y, double scale, double* out,
                    std::size_t n) {
    __m256d vs = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vs, _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) out[i] = scale * y[i];
}

}  // namespace

const Ops* avx2_ops() {
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    static const Ops ops{f_vec_avx2, g_vec_avx2, xor_vec_avx2, scale_vec_avx2,
                         "avx2"};
    return &ops;
}

}  // namespace dcapolar::kernels

#endif  // x86_64

// SPDX-License-Identifier: Apache-2.0
#include "dcapolar/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace dcapolar::kernels {

namespace {

void f_vec_neon(const double* a, const double* b, double* out,
                std::size_t n) {
    const uint64x2_t sign_mask = vdupq_n_u64(0x8000000000000000ULL);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t va = vld1q_f64(a + i);
        float64x2_t vb = vld1q_f64(b + i);
        float64x2_t mag = vminq_f64(vabsq_f64(va), vabsq_f64(vb));
        uint64x2_t sgn = vandq_u64(
            veorq_u64(vreinterpretq_u64_f64(va), vreinterpretq_u64_f64(vb)),
            sign_mask);
        vst1q_f64(out + i, vreinterpretq_f64_u64(
                               vorrq_u64(vreinterpretq_u64_f64(mag), sgn)));
    }
    for (; i < n; ++i) out[i] = f_kernel(a[i], b[i]);
}

void g_vec_neon(const double* a, const double* b, const uint8_t* bl,
                double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = g_kernel(a[i], b[i], bl[i]);
}

void xor_vec_neon(const uint8_t* a, const uint8_t* b, uint8_t* out,
                  std::size_t n) {
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16)
        vst1q_u8(out + i, veorq_u8(vld1q_u8(a + i), vld1q_u8(b + i)));
    for (; i < n; ++i) out[i] = a[i] ^ b[i];
}

void scale_vec_neon(const double* y, double scale, double* out,
                    std::size_t n) {
    float64x2_t vs = vdupq_n_f64(scale);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(out + i, vmulq_f64(vs, vld1q_f64(y + i)));
    for (; i < n; ++i) out[i] = scale * y[i];
}

}  // namespace

const Ops* neon_ops() {
    static const Ops ops{f_vec_neon, g_vec_neon, xor_vec_neon, scale_vec_neon,
                         "neon"};
    return &ops;
}

}  // namespace dcapolar::kernels

#endif  // __aarch64__

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace dcapolar::kernels {

// Scalar reference kernels. These are the semantic definition; the SIMD
// backends must match them bit-for-bit on finite inputs.

// Min-sum f: sgn(a)*sgn(b)*min(|a|,|b|).
inline double f_kernel(double a, double b) {
    double m = std::min(std::fabs(a), std::fabs(b));
    return std::signbit(a) != std::signbit(b) ? -m : m;
}

// g: b + a for beta_l = 0, b - a for beta_l = 1.
inline double g_kernel(double a, double b, uint8_t beta_l) {
    return beta_l ? b - a : b + a;
}

// Batch kernels over stage arrays.
struct Ops {
    // out[i] = f(a[i], b[i])
    void (*f_vec)(const double* a, const double* b, double* out, std::size_t n);
    // out[i] = g(a[i], b[i], bl[i])
    void (*g_vec)(const double* a, const double* b, const uint8_t* bl,
                  double* out, std::size_t n);
    // out[i] = a[i] ^ b[i], bits in {0,1}
    void (*xor_vec)(const uint8_t* a, const uint8_t* b, uint8_t* out,
                    std::size_t n);
    // out[i] = scale * y[i]  (channel LLR: 2*y/sigma2)
    void (*scale_vec)(const double* y, double scale, double* out,
                      std::size_t n);
    const char* name;
};

const Ops& scalar_ops();

// Backend in use; picked once at startup from CPU capabilities,
// overridable for testing.
const Ops& active_ops();

// "scalar", "avx2", "neon" or "auto". Returns false if the backend is
// unavailable on this machine.
bool set_backend(std::string_view name);

#if defined(__x86_64__) || defined(_M_X64)
const Ops* avx2_ops();  // nullptr when the CPU lacks AVX2
#endif
#if defined(__aarch64__)
const Ops* neon_ops();
#endif

}  // namespace dcapolar::kernels

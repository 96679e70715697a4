// SPDX-License-Identifier: Apache-2.0
#include "dcapolar/kernels.hpp"

namespace dcapolar::kernels {

namespace {

void f_vec_scalar(const double* a, const double* b, double* out,
                  std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f_kernel(a[i], b[i]);
}

void g_vec_scalar(const double* a, const double* b, const uint8_t* bl,
                  double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = g_kernel(a[i], b[i], bl[i]);
}

void xor_vec_scalar(const uint8_t* a, const uint8_t* b, uint8_t* out,
                    std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] ^ b[i];
}

void scale_vec_scalar(const double* y, double scale, double* out,
                      std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = scale * y[i];
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{f_vec_scalar, g_vec_scalar, xor_vec_scalar,
                         scale_vec_scalar, "scalar"};
    return ops;
}

}  // namespace dcapolar::kernels

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "dcapolar/code_config.hpp"

namespace dcapolar {

// x = u * G_N with G_N = G_2^{(x)n}, in O(N log N) butterflies.
// Self-inverse over GF(2).
BitVec polar_transform(std::span<const Bit> u);

// Message -> CRC encode -> interleave -> sub-channel allocation.
// Returns the length-N polar input vector u (not yet transformed).
BitVec assemble_input(const CodeConfig& cfg, std::span<const Bit> message);

// Recover the A message bits from a decoded input vector u_hat
// (deinterleave, strip CRC).
BitVec extract_message(const CodeConfig& cfg, std::span<const Bit> u_hat);

namespace detail {

// Per-path successive-cancellation working memory. Stage s lives at
// offset 2^s - 1 with length 2^s; the channel LLRs (stage n) stay
// outside and are read-only.
struct ScMemory {
    std::vector<double> alpha;  // stages 0..n-1, N-1 entries
    std::vector<Bit> beta;      // stages 0..n, 2N-1 entries

    explicit ScMemory(int block_len)
        : alpha(static_cast<size_t>(block_len - 1)),
          beta(static_cast<size_t>(2 * block_len - 1)) {}

    double* alpha_stage(int s) { return alpha.data() + ((1 << s) - 1); }
    Bit* beta_stage(int s) { return beta.data() + ((1 << s) - 1); }
    double leaf_llr() const { return alpha[0]; }
};

// Refresh the LLRs needed to decide bit i (f/g descent).
void update_llrs(int n, std::span<const double> channel_llr, ScMemory& mem,
                 int bit);

// Fold the decision for bit i into the partial sums. scratch must hold
// at least 2N bits and may be shared across paths of one decoder.
void update_psums(int n, ScMemory& mem, int bit, Bit value, Bit* scratch);

// Min-sum path metric penalty: pm + |alpha0| when the decision
// contradicts the LLR sign, else pm.
inline double pm_update(double pm, double alpha0, Bit u_hat) {
    bool sign_neg = alpha0 < 0.0;  // alpha0 >= 0 counts as +
    if (sign_neg != (u_hat != 0)) return pm + (alpha0 < 0.0 ? -alpha0 : alpha0);
    return pm;
}

}  // namespace detail

// Plain successive-cancellation decode; returns u_hat of length N.
BitVec sc_decode(const CodeConfig& cfg, std::span<const double> channel_llr);

}  // namespace dcapolar

// SPDX-License-Identifier: Apache-2.0
#include "dcapolar/polar.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

#include "dcapolar/kernels.hpp"

namespace dcapolar {

BitVec polar_transform(std::span<const Bit> u) {
    const size_t N = u.size();
    if (N == 0 || (N & (N - 1)) != 0)
        throw std::invalid_argument("length must be a power of two");
    const auto& ops = kernels::active_ops();
    BitVec x(u.begin(), u.end());
    for (size_t half = 1; half < N; half <<= 1)
        for (size_t i = 0; i < N; i += 2 * half)
            ops.xor_vec(x.data() + i, x.data() + i + half, x.data() + i, half);
    return x;
}

BitVec assemble_input(const CodeConfig& cfg, std::span<const Bit> message) {
    if (static_cast<int>(message.size()) != cfg.A)
        throw std::invalid_argument("message length != A");
    BitVec c;
    if (cfg.P > 0) {
        c = crc_encode(message, cfg.crc_matrix);
    } else {
        c.assign(message.begin(), message.end());
    }
    BitVec u(static_cast<size_t>(cfg.N), 0);
    for (int j = 0; j < cfg.K; ++j) {
        int channel = cfg.info_set[static_cast<size_t>(j)];
        u[static_cast<size_t>(channel)] =
            c[static_cast<size_t>(cfg.interleaver.pi[static_cast<size_t>(j)])];
    }
    return u;
}

BitVec extract_message(const CodeConfig& cfg, std::span<const Bit> u_hat) {
    BitVec c(static_cast<size_t>(cfg.K), 0);
    for (int j = 0; j < cfg.K; ++j) {
        int channel = cfg.info_set[static_cast<size_t>(j)];
        c[static_cast<size_t>(cfg.interleaver.pi[static_cast<size_t>(j)])] =
            u_hat[static_cast<size_t>(channel)];
    }
    c.resize(static_cast<size_t>(cfg.A));
    return c;
}

namespace detail {

void update_llrs(int n, std::span<const double> channel_llr, ScMemory& mem,
                 int bit) {
    const auto& ops = kernels::active_ops();
    int start;
    if (bit == 0) {
        start = n;
    } else {
        start = std::countr_zero(static_cast<unsigned>(bit));
        // entering a right child at stage 'start': g from the parent
        const double* parent = (start + 1 == n)
                                   ? channel_llr.data()
                                   : mem.alpha_stage(start + 1);
        size_t half = 1u << start;
        ops.g_vec(parent, parent + half, mem.beta_stage(start),
                  mem.alpha_stage(start), half);
    }
    for (int s = start - 1; s >= 0; --s) {
        const double* parent =
            (s + 1 == n) ? channel_llr.data() : mem.alpha_stage(s + 1);
        size_t half = 1u << s;
        ops.f_vec(parent, parent + half, mem.alpha_stage(s), half);
    }
}

void update_psums(int n, ScMemory& mem, int bit, Bit value, Bit* scratch) {
    const auto& ops = kernels::active_ops();
    Bit* cur = scratch;
    Bit* tmp = scratch + (1u << n);
    cur[0] = value;
    size_t len = 1;
    int s = 0;
    unsigned rest = static_cast<unsigned>(bit);
    while (rest & 1u) {
        // right child finished: combine with the stored left betas
        ops.xor_vec(mem.beta_stage(s), cur, tmp, len);
        std::memcpy(tmp + len, cur, len);
        std::swap(cur, tmp);
        len <<= 1;
        ++s;
        rest >>= 1;
    }
    if (s <= n) std::memcpy(mem.beta_stage(s), cur, len);
}

}  // namespace detail

BitVec sc_decode(const CodeConfig& cfg, std::span<const double> channel_llr) {
    if (static_cast<int>(channel_llr.size()) != cfg.N)
        throw std::invalid_argument("LLR length != N");
    detail::ScMemory mem(cfg.N);
    BitVec scratch(static_cast<size_t>(2 * cfg.N));
    BitVec u_hat(static_cast<size_t>(cfg.N), 0);
    for (int i = 0; i < cfg.N; ++i) {
        detail::update_llrs(cfg.n, channel_llr, mem, i);
        Bit u = 0;
        if (!cfg.is_frozen(i) && mem.leaf_llr() < 0.0) u = 1;
        u_hat[static_cast<size_t>(i)] = u;
        detail::update_psums(cfg.n, mem, i, u, scratch.data());
    }
    return u_hat;
}

}  // namespace dcapolar

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "dcapolar/crc.hpp"

namespace dcapolar {

enum class SnrKind { EsN0, EbN0 };

struct ChannelParams {
    double snr_db = 0.0;
    SnrKind kind = SnrKind::EsN0;
    double rate_for_ebn0 = 1.0;  // declared code rate for Eb/N0 runs
    double sigma2 = 0.0;         // noise variance per real dimension

    // Es = 1, sigma2 = N0/2 = 1 / (2 * 10^(snr/10))
    static ChannelParams es_n0(double snr_db);
    // Es/N0 = rate * Eb/N0
    static ChannelParams eb_n0(double snr_db, double rate);
};

// Deterministic per-frame noise source: mt19937_64 seeded through
// splitmix64 from (master seed, frame key), Gaussians via Box-Muller.
// Reproducible for a given (seed, key) regardless of how frames are
// distributed over workers.
class FrameRng {
public:
    static FrameRng for_frame(uint64_t master_seed, uint64_t frame_key);

    double gaussian();        // standard normal
    Bit bit();                // fair bit

private:
    explicit FrameRng(uint64_t seed) : engine_(seed) {}
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

uint64_t splitmix64(uint64_t x);

// BPSK: bit 0 -> +1.0, bit 1 -> -1.0
std::vector<double> modulate(std::span<const Bit> x);

// y = s + n, n iid N(0, sigma2)
std::vector<double> transmit(std::span<const double> s,
                             const ChannelParams& p, FrameRng& rng);

// llr_i = 2 y_i / sigma2; positive favors bit 0
std::vector<double> channel_llr(std::span<const double> y,
                                const ChannelParams& p);

}  // namespace dcapolar

// SPDX-License-Identifier: Apache-2.0
#include "dcapolar/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dcapolar/kernels.hpp"

namespace dcapolar {

ChannelParams ChannelParams::es_n0(double snr_db) {
    ChannelParams p;
    p.snr_db = snr_db;
    p.kind = SnrKind::EsN0;
    p.sigma2 = 1.0 / (2.0 * std::pow(10.0, snr_db / 10.0));
    return p;
}

ChannelParams ChannelParams::eb_n0(double snr_db, double rate) {
    if (rate <= 0.0) throw std::invalid_argument("rate must be positive");
    ChannelParams p;
    p.snr_db = snr_db;
    p.kind = SnrKind::EbN0;
    p.rate_for_ebn0 = rate;
    p.sigma2 = 1.0 / (2.0 * rate * std::pow(10.0, snr_db / 10.0));
    return p;
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

FrameRng FrameRng::for_frame(uint64_t master_seed, uint64_t frame_key) {
    return FrameRng(splitmix64(splitmix64(master_seed) ^ frame_key));
}

double FrameRng::gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    // Box-Muller on uniforms in (0, 1]
    constexpr double kScale = 1.0 / 18446744073709551616.0;  // 2^-64
    double u1 = (static_cast<double>(engine_()) + 1.0) * kScale;
    double u2 = static_cast<double>(engine_()) * kScale;
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

Bit FrameRng::bit() { return static_cast<Bit>(engine_() >> 63); }

std::vector<double> modulate(std::span<const Bit> x) {
    std::vector<double> s(x.size());
    for (size_t i = 0; i < x.size(); ++i) s[i] = x[i] ? -1.0 : 1.0;
    return s;
}

std::vector<double> transmit(std::span<const double> s,
                             const ChannelParams& p, FrameRng& rng) {
    if (p.sigma2 <= 0.0) throw std::invalid_argument("sigma2 must be positive");
    double sigma = std::sqrt(p.sigma2);
    std::vector<double> y(s.size());
    for (size_t i = 0; i < s.size(); ++i) y[i] = s[i] + sigma * rng.gaussian();
    return y;
}

std::vector<double> channel_llr(std::span<const double> y,
                                const ChannelParams& p) {
    if (p.sigma2 <= 0.0) throw std::invalid_argument("sigma2 must be positive");
    std::vector<double> llr(y.size());
    kernels::active_ops().scale_vec(y.data(), 2.0 / p.sigma2, llr.data(),
                                    y.size());
    return llr;
}

}  // namespace dcapolar

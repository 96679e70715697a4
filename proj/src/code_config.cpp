// SPDX-License-Identifier: Apache-2.0
#include "dcapolar/code_config.hpp"

#include <stdexcept>

namespace dcapolar {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

CodeConfig build_impl(int N, int A, int P, const CrcSpec* crc,
                      const ReliabilitySequence& reliability) {
    if (!is_power_of_two(N))
        throw std::invalid_argument("N must be a power of two");
    const int K = A + P;
    if (A < 0) throw std::invalid_argument("A must be >= 0");
    if (A == 0 && P != 0)
        throw std::invalid_argument("CRC requires at least one message bit");
    if (K > N) throw std::invalid_argument("K exceeds block length");
    if (K > 164) throw std::invalid_argument("K exceeds interleaver limit 164");

    CodeConfig cfg;
    cfg.N = N;
    cfg.n = 0;
    while ((1 << cfg.n) < N) ++cfg.n;
    cfg.K = K;
    cfg.A = A;
    cfg.P = P;
    cfg.reliability_source = reliability.source;

    cfg.info_set = reliability.most_reliable(N, K);
    cfg.is_info.assign(static_cast<size_t>(N), 0);
    for (int i : cfg.info_set) cfg.is_info[static_cast<size_t>(i)] = 1;

    if (K > 0) cfg.interleaver = build_interleaver(K, P);
    if (crc != nullptr) {
        cfg.crc = *crc;
        if (cfg.crc.degree != P)
            throw std::invalid_argument("CRC degree != P");
        cfg.crc_matrix = build_crc_matrix(cfg.crc, A);
    }

    cfg.stream_pos.assign(static_cast<size_t>(N), -1);
    cfg.source_index.assign(static_cast<size_t>(N), -1);
    cfg.crc_order.assign(static_cast<size_t>(N), 0);

    // Interleaved bit j goes on the j-th smallest information channel.
    int next_crc_order = 1;
    for (int j = 0; j < K; ++j) {
        int channel = cfg.info_set[static_cast<size_t>(j)];
        int src = cfg.interleaver.pi[static_cast<size_t>(j)];
        cfg.stream_pos[static_cast<size_t>(channel)] = j;
        cfg.source_index[static_cast<size_t>(channel)] = src;
        if (src >= A) {
            cfg.q_set.push_back(channel);
            cfg.crc_order[static_cast<size_t>(channel)] = next_crc_order++;
        }
    }
    return cfg;
}

}  // namespace

CodeConfig build_code_config(int N, int A, int P, const CrcSpec& crc,
                             const ReliabilitySequence& reliability) {
    if (P < 1) throw std::invalid_argument("P must be >= 1; use the P = 0 overload");
    return build_impl(N, A, P, &crc, reliability);
}

CodeConfig build_code_config(int N, int A,
                             const ReliabilitySequence& reliability) {
    return build_impl(N, A, 0, nullptr, reliability);
}

}  // namespace dcapolar

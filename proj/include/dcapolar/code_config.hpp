// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "dcapolar/crc.hpp"
#include "dcapolar/interleaver.hpp"
#include "dcapolar/reliability.hpp"

namespace dcapolar {

// Static description of one distributed-CRC-aided polar code.
struct CodeConfig {
    int N = 0;   // block length, power of two
    int n = 0;   // log2(N)
    int K = 0;   // A + P
    int A = 0;   // message bits
    int P = 0;   // CRC bits

    std::vector<int> info_set;    // sorted ascending, |I| = K
    std::vector<Bit> is_info;     // N flags; frozen = !is_info
    Interleaver interleaver;
    std::vector<int> q_set;       // channels carrying CRC bits, sorted

    CrcSpec crc;                  // degree 0 when P = 0
    CrcMatrix crc_matrix;

    // Per-channel decode metadata (all size N, -1 / 0 on frozen channels):
    std::vector<int> stream_pos;    // i in I -> interleaved position j
    std::vector<int> source_index;  // i in I -> pi(j), index into c;
                                    //   < A: message bit, else CRC bit pi(j)-A
    std::vector<int> crc_order;     // 1-based decode order of CRC bits, 0 otherwise

    std::string reliability_source;

    bool is_frozen(int i) const { return !is_info[static_cast<size_t>(i)]; }
};

// Allocates the K most reliable channels, builds the size-K interleaver
// and maps CRC stream positions onto channel indices (Q).
CodeConfig build_code_config(int N, int A, int P, const CrcSpec& crc,
                             const ReliabilitySequence& reliability);

// P = 0 variant: no CRC, identity-free interleaver still applied.
CodeConfig build_code_config(int N, int A,
                             const ReliabilitySequence& reliability);

}  // namespace dcapolar

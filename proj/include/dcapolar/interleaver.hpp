// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace dcapolar {

// The length-164 mother sequence the 5G-NR input-bit interleaver is
// derived from. A permutation of 0..163.
std::span<const int> mother_sequence();

// Size-K input-bit interleaver: c'_j = c[pi[j]].
struct Interleaver {
    int K = 0;
    int h = 0;                 // 164 - K
    std::vector<int> pi;       // stream position j -> source index in c
    std::vector<int> pi_inv;
};

// Scan the mother sequence, keep entries >= h = 164 - K, subtract h.
// crc_len is the CRC tail length P; K must satisfy P < K <= 164.
Interleaver build_interleaver(int K, int crc_len);

struct CrcPosition {
    int stream_pos;  // interleaved position j
    int crc_index;   // p = pi[j] - A, 0-based
};

// All CRC-bit positions in the interleaved stream, in decode order.
std::vector<CrcPosition> crc_positions(const Interleaver& il, int message_len);

// CRC bits followed by at least one later message bit.
int distributed_count(const Interleaver& il, int message_len);

}  // namespace dcapolar

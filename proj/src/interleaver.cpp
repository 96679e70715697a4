// SPDX-License-Identifier: Apache-2.0
#include "dcapolar/interleaver.hpp"

#include <stdexcept>

namespace dcapolar {

namespace {

// Transcribed row-by-row; see data/pi_il_max_v1.txt for the shipped copy.
constexpr int kMotherSequence[164] = {
    0,   2,   4,   7,   9,   14,  19,  20,  24,  25,  26,  28,
    31,  34,  42,  45,  49,  50,  51,  53,  54,  56,  58,  59,
    61,  62,  65,  66,  67,  69,  70,  71,  72,  76,  77,  81,
    82,  83,  87,  88,  89,  91,  93,  95,  98,  101, 104, 106,
    108, 110, 111, 113, 115, 118, 119, 120, 122, 123, 126, 127,
    129, 132, 134, 138, 139, 140, 1,   3,   5,   8,   10,  15,
    21,  27,  29,  32,  35,  43,  46,  52,  55,  57,  60,  63,
    68,  73,  78,  84,  90,  92,  94,  96,  99,  102, 105, 107,
    109, 112, 114, 116, 121, 124, 128, 130, 133, 135, 141, 6,
    11,  16,  22,  30,  33,  36,  44,  47,  64,  74,  79,  85,
    97,  100, 103, 117, 125, 131, 136, 142, 12,  17,  23,  37,
    48,  75,  80,  86,  137, 143, 13,  18,  38,  144, 39,  145,
    40,  146, 41,  147, 148, 149, 150, 151, 152, 153, 154, 155,
    156, 157, 158, 159, 160, 161, 162, 163};

}  // namespace

std::span<const int> mother_sequence() { return kMotherSequence; }

Interleaver build_interleaver(int K, int crc_len) {
    if (K > 164) throw std::invalid_argument("interleaver size K > 164");
    if (K <= crc_len)
        throw std::invalid_argument("interleaver size K must exceed CRC length");

    Interleaver il;
    il.K = K;
    il.h = 164 - K;
    il.pi.reserve(static_cast<size_t>(K));
    for (int e : kMotherSequence)
        if (e >= il.h) il.pi.push_back(e - il.h);

    il.pi_inv.assign(static_cast<size_t>(K), -1);
    for (int j = 0; j < K; ++j) il.pi_inv[static_cast<size_t>(il.pi[static_cast<size_t>(j)])] = j;
    return il;
}

std::vector<CrcPosition> crc_positions(const Interleaver& il, int message_len) {
    std::vector<CrcPosition> out;
    for (int j = 0; j < il.K; ++j) {
        int src = il.pi[static_cast<size_t>(j)];
        if (src >= message_len) out.push_back({j, src - message_len});
    }
    return out;
}

int distributed_count(const Interleaver& il, int message_len) {
    int count = 0;
    int last_message_pos = -1;
    for (int j = il.K - 1; j >= 0; --j) {
        if (il.pi[static_cast<size_t>(j)] < message_len) {
            last_message_pos = j;
            break;
        }
    }
    for (int j = 0; j < last_message_pos; ++j)
        if (il.pi[static_cast<size_t>(j)] >= message_len) ++count;
    return count;
}

}  // namespace dcapolar

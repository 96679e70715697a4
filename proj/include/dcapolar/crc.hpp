// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace dcapolar {

using Bit = uint8_t;
using BitVec = std::vector<Bit>;

// CRC generator polynomial g(x) = sum_k g_k x^k of degree P.
// coeffs[k] = g_k; g_P = g_0 = 1 is required.
// Degrees up to 64 are supported (remainder rows fit a word).
struct CrcSpec {
    int degree = 0;              // P
    std::vector<Bit> coeffs;     // size P+1

    // Build from an exponent list, e.g. {24,23,21,...,1,0}.
    static CrcSpec from_exponents(std::span<const int> exps);

    // 5G-NR DCI polynomial, degree 24:
    // x^24+x^23+x^21+x^20+x^17+x^15+x^13+x^12+x^8+x^4+x^2+x+1
    static CrcSpec nr_crc24();

    // g(x) = x^3 + x + 1, used by exhaustive tests.
    static CrcSpec toy_crc3();

    void validate() const;  // throws on malformed polynomial
};

// A x P generator matrix C over GF(2): parity tail of message a is a*C.
// Rows are stored as P-bit words, bit (i-1) of the word = C(row, i).
struct CrcMatrix {
    int rows = 0;  // A
    int cols = 0;  // P
    std::vector<uint64_t> row_masks;

    Bit at(int row, int col) const {  // row in 1..A, col in 1..P (1-based)
        return static_cast<Bit>((row_masks[static_cast<size_t>(row - 1)] >>
                                 (col - 1)) & 1u);
    }
};

// Recursive construction from the generator polynomial: last row holds
// g_{P-1}..g_0; row k derives from row k+1 by one division step.
CrcMatrix build_crc_matrix(const CrcSpec& spec, int message_len);

// [a | a*C]
BitVec crc_encode(std::span<const Bit> a, const CrcMatrix& m);

// Remainder of a(x)*x^P mod g(x) by shift-register long division.
// Independent of CrcMatrix; a[0] is the highest-degree message term.
BitVec crc_oracle_remainder(std::span<const Bit> a, const CrcSpec& spec);

// Running parity of a partially absorbed message. Absorbing bit k with
// value 1 XORs row k of C into the accumulators; order does not matter.
class CrcTracker {
public:
    CrcTracker() = default;
    explicit CrcTracker(const CrcMatrix& m)
        : matrix_(&m) {}

    // k is the original (pre-interleave) message bit index, 0-based.
    void absorb(int k, Bit value);

    // Parity bit expected at CRC index p (0-based), given the bits
    // absorbed so far.
    Bit expected(int p) const {
        return static_cast<Bit>((acc_ >> p) & 1u);
    }

    uint64_t accumulators() const { return acc_; }
    int consumed() const { return consumed_; }

private:
    const CrcMatrix* matrix_ = nullptr;
    uint64_t acc_ = 0;
    int consumed_ = 0;
    std::array<uint64_t, 3> seen_{};  // message indices up to 192
};

}  // namespace dcapolar

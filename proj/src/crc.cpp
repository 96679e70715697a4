// SPDX-License-Identifier: Apache-2.0
#include "dcapolar/crc.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcapolar {

CrcSpec CrcSpec::from_exponents(std::span<const int> exps) {
    if (exps.empty()) throw std::invalid_argument("empty exponent list");
    int degree = *std::max_element(exps.begin(), exps.end());
    CrcSpec spec;
    spec.degree = degree;
    spec.coeffs.assign(static_cast<size_t>(degree) + 1, 0);
    for (int e : exps) {
        if (e < 0) throw std::invalid_argument("negative exponent");
        spec.coeffs[static_cast<size_t>(e)] = 1;
    }
    spec.validate();
    return spec;
}

CrcSpec CrcSpec::nr_crc24() {
    static const int exps[] = {24, 23, 21, 20, 17, 15, 13, 12, 8, 4, 2, 1, 0};
    return from_exponents(exps);
}

CrcSpec CrcSpec::toy_crc3() {
    static const int exps[] = {3, 1, 0};
    return from_exponents(exps);
}

void CrcSpec::validate() const {
    if (degree < 1 || degree > 64)
        throw std::invalid_argument("CRC degree must be in [1, 64]");
    if (coeffs.size() != static_cast<size_t>(degree) + 1)
        throw std::invalid_argument("coefficient count != degree + 1");
    if (coeffs.front() != 1 || coeffs.back() != 1)
        throw std::invalid_argument(
            "leading and trailing CRC coefficients must be 1");
}

CrcMatrix build_crc_matrix(const CrcSpec& spec, int message_len) {
    spec.validate();
    if (message_len < 1) throw std::invalid_argument("message length must be >= 1");

    const int P = spec.degree;
    // g_row bit (i-1) = g_{P-i}, i = 1..P
    uint64_t g_row = 0;
    for (int i = 1; i <= P; ++i)
        if (spec.coeffs[static_cast<size_t>(P - i)]) g_row |= 1ull << (i - 1);

    CrcMatrix m;
    m.rows = message_len;
    m.cols = P;
    m.row_masks.assign(static_cast<size_t>(message_len), 0);

    // last row = g_{P-1}..g_0; row k from row k+1:
    //   C(k,i) = C(k+1,i+1) ^ C(k+1,1)*g_{P-i}   (i < P)
    //   C(k,P) = C(k+1,1)*g_0
    uint64_t row = g_row;
    m.row_masks[static_cast<size_t>(message_len - 1)] = row;
    for (int k = message_len - 2; k >= 0; --k) {
        uint64_t carry = row & 1u;  // C(k+1, 1)
        row >>= 1;                  // C(k,i) <- C(k+1,i+1)
        if (carry) row ^= g_row;  // g_0 = 1 lands in col P
        m.row_masks[static_cast<size_t>(k)] = row;
    }
    return m;
}

BitVec crc_encode(std::span<const Bit> a, const CrcMatrix& m) {
    if (static_cast<int>(a.size()) != m.rows)
        throw std::invalid_argument("message length != matrix rows");
    uint64_t parity = 0;
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k]) parity ^= m.row_masks[k];

    BitVec c(a.begin(), a.end());
    c.resize(a.size() + static_cast<size_t>(m.cols));
    for (int i = 0; i < m.cols; ++i)
        c[a.size() + static_cast<size_t>(i)] =
            static_cast<Bit>((parity >> i) & 1u);
    return c;
}

BitVec crc_oracle_remainder(std::span<const Bit> a, const CrcSpec& spec) {
    spec.validate();
    const int P = spec.degree;
    // Shift register holds the running remainder, reg[0] = highest degree.
    BitVec reg(static_cast<size_t>(P), 0);
    for (Bit bit : a) {
        Bit fb = static_cast<Bit>(reg[0] ^ bit);
        for (int i = 0; i < P - 1; ++i) {
            Bit tap = spec.coeffs[static_cast<size_t>(P - 1 - i)];
            reg[static_cast<size_t>(i)] = static_cast<Bit>(
                reg[static_cast<size_t>(i + 1)] ^ (fb & tap));
        }
        reg[static_cast<size_t>(P - 1)] = static_cast<Bit>(fb & spec.coeffs[0]);
    }
    return reg;
}

void CrcTracker::absorb(int k, Bit value) {
    if (matrix_ == nullptr) throw std::logic_error("tracker has no matrix");
    if (k < 0 || k >= matrix_->rows)
        throw std::out_of_range("message bit index out of range");
    uint64_t& word = seen_[static_cast<size_t>(k) / 64];
    uint64_t bit = 1ull << (static_cast<unsigned>(k) % 64);
    if (word & bit) throw std::invalid_argument("bit index absorbed twice");
    word |= bit;
    if (value) acc_ ^= matrix_->row_masks[static_cast<size_t>(k)];
    ++consumed_;
}

}  // namespace dcapolar

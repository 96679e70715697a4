// SPDX-License-Identifier: Apache-2.0
#include <random>

#include <doctest.h>

#include "dcapolar/crc.hpp"

using namespace dcapolar;

namespace {

BitVec bits_from_lsb(uint32_t v, int len) {
    BitVec a(static_cast<size_t>(len));
    for (int k = 0; k < len; ++k) a[static_cast<size_t>(k)] = static_cast<Bit>((v >> k) & 1);
    return a;
}

bool tail_matches_oracle(std::span<const Bit> a, const CrcMatrix& m,
                         const CrcSpec& spec) {
    BitVec enc = crc_encode(a, m);
    BitVec rem = crc_oracle_remainder(a, spec);
    for (int p = 0; p < spec.degree; ++p)
        if (enc[a.size() + static_cast<size_t>(p)] != rem[static_cast<size_t>(p)])
            return false;
    return true;
}

}  // namespace

TEST_CASE("toy polynomial validates") {
    CrcSpec toy = CrcSpec::toy_crc3();
    CHECK(toy.degree == 3);
    CHECK(toy.coeffs == BitVec{1, 1, 0, 1});  // 1 + x + x^3
    CHECK_NOTHROW(toy.validate());
}

TEST_CASE("malformed polynomials rejected") {
    CrcSpec bad;
    bad.degree = 3;
    bad.coeffs = {0, 1, 0, 1};  // g_0 = 0
    CHECK_THROWS(bad.validate());
    bad.coeffs = {1, 1, 0, 0};  // g_P = 0
    CHECK_THROWS(bad.validate());
    bad.coeffs = {1, 1, 0};  // wrong size
    CHECK_THROWS(bad.validate());
}

TEST_CASE("toy matrix single-row values") {
    // A = 1: c(x) = a_0 x^3 mod (x^3 + x + 1) = x + 1, so the parity of
    // message bit 1 is (0, 1, 1) in tail order c_1 c_2 c_3 (x^2, x, 1).
    CrcMatrix m = build_crc_matrix(CrcSpec::toy_crc3(), 1);
    CHECK(m.rows == 1);
    CHECK(m.cols == 3);
    CHECK(m.at(1, 1) == 0);
    CHECK(m.at(1, 2) == 1);
    CHECK(m.at(1, 3) == 1);
}

TEST_CASE("shift register oracle known remainders") {
    CrcSpec toy = CrcSpec::toy_crc3();
    // a = (1,0,0,0): a(x) x^3 = x^6; x^6 mod (x^3+x+1) = x^2 + 1.
    BitVec r = crc_oracle_remainder(BitVec{1, 0, 0, 0}, toy);
    CHECK(r == BitVec{1, 0, 1});
    // x^7 mod (x^3+x+1) = 1.
    r = crc_oracle_remainder(BitVec{1, 0, 0, 0, 0}, toy);
    CHECK(r == BitVec{0, 0, 1});
    // zero message has zero parity
    r = crc_oracle_remainder(BitVec{0, 0, 0, 0}, toy);
    CHECK(r == BitVec{0, 0, 0});
}

TEST_CASE("toy CRC-3 exhaustive matrix vs long division") {
    CrcSpec toy = CrcSpec::toy_crc3();
    for (int A = 1; A <= 12; ++A) {
        CrcMatrix m = build_crc_matrix(toy, A);
        for (uint32_t v = 0; v < (1u << A); ++v) {
            BitVec a = bits_from_lsb(v, A);
            REQUIRE(tail_matches_oracle(a, m, toy));
        }
    }
}

TEST_CASE("CRC-24 random messages match oracle") {
    CrcSpec crc = CrcSpec::nr_crc24();
    std::mt19937_64 rng(101);
    for (int A : {32, 128, 140}) {
        CrcMatrix m = build_crc_matrix(crc, A);
        for (int trial = 0; trial < 2000; ++trial) {
            BitVec a(static_cast<size_t>(A));
            for (auto& b : a) b = static_cast<Bit>(rng() & 1);
            REQUIRE(tail_matches_oracle(a, m, crc));
        }
    }
}

TEST_CASE("encoding is linear over GF(2)") {
    CrcSpec crc = CrcSpec::nr_crc24();
    CrcMatrix m = build_crc_matrix(crc, 48);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        BitVec a(48), b(48), s(48);
        for (size_t i = 0; i < 48; ++i) {
            a[i] = static_cast<Bit>(rng() & 1);
            b[i] = static_cast<Bit>(rng() & 1);
            s[i] = a[i] ^ b[i];
        }
        BitVec ea = crc_encode(a, m);
        BitVec eb = crc_encode(b, m);
        BitVec es = crc_encode(s, m);
        for (size_t i = 0; i < es.size(); ++i)
            REQUIRE(es[i] == (ea[i] ^ eb[i]));
    }
}

TEST_CASE("tracker parity is order independent") {
    CrcSpec crc = CrcSpec::nr_crc24();
    const int A = 40;
    CrcMatrix m = build_crc_matrix(crc, A);
    std::mt19937_64 rng(23);
    BitVec a(static_cast<size_t>(A));
    for (auto& b : a) b = static_cast<Bit>(rng() & 1);
    BitVec enc = crc_encode(a, m);

    std::vector<int> order(static_cast<size_t>(A));
    for (int k = 0; k < A; ++k) order[static_cast<size_t>(k)] = k;
    for (int perm = 0; perm < 20; ++perm) {
        std::shuffle(order.begin(), order.end(), rng);
        CrcTracker t(m);
        for (int k : order) t.absorb(k, a[static_cast<size_t>(k)]);
        CHECK(t.consumed() == A);
        for (int p = 0; p < 24; ++p)
            REQUIRE(t.expected(p) == enc[static_cast<size_t>(A + p)]);
    }
}

TEST_CASE("tracker rejects duplicates and bad indices") {
    CrcMatrix m = build_crc_matrix(CrcSpec::toy_crc3(), 4);
    CrcTracker t(m);
    t.absorb(2, 1);
    CHECK_THROWS(t.absorb(2, 0));
    CHECK_THROWS(t.absorb(4, 1));
    CHECK_THROWS(t.absorb(-1, 1));
}

TEST_CASE("degree above 64 rejected") {
    CrcSpec wide;
    wide.degree = 65;
    wide.coeffs.assign(66, 0);
    wide.coeffs[0] = wide.coeffs[65] = 1;
    CHECK_THROWS(wide.validate());
}

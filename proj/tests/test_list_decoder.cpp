// SPDX-License-Identifier: Apache-2.0
#include <random>

#include <doctest.h>

#include "dcapolar/list_decoder.hpp"

using namespace dcapolar;

namespace {

BitVec random_bits(size_t n, std::mt19937_64& rng) {
    BitVec v(n);
    for (auto& b : v) b = static_cast<Bit>(rng() & 1);
    return v;
}

std::vector<double> noisy_llr(const BitVec& x, double sigma,
                              std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, sigma);
    std::vector<double> llr(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        double s = x[i] ? -1.0 : 1.0;
        llr[i] = 2.0 * (s + nd(rng)) / (sigma * sigma);
    }
    return llr;
}

// Min-sum path metric of a fully specified input vector u, evaluated
// by replaying the SC recursion with every decision forced.
double forced_metric(const CodeConfig& cfg, const BitVec& u,
                     std::span<const double> llr) {
    detail::ScMemory mem(cfg.N);
    BitVec scratch(static_cast<size_t>(2 * cfg.N));
    double pm = 0.0;
    for (int i = 0; i < cfg.N; ++i) {
        detail::update_llrs(cfg.n, llr, mem, i);
        Bit v = u[static_cast<size_t>(i)];
        pm = detail::pm_update(pm, mem.leaf_llr(), v);
        detail::update_psums(cfg.n, mem, i, v, scratch.data());
    }
    return pm;
}

}  // namespace

TEST_CASE("path metric update examples") {
    CHECK(detail::pm_update(1.0, 2.5, 0) == 1.0);
    CHECK(detail::pm_update(1.0, 2.5, 1) == 3.5);
    CHECK(detail::pm_update(1.0, -2.5, 0) == 3.5);
    CHECK(detail::pm_update(1.0, -2.5, 1) == 1.0);
    // alpha = 0 counts as positive: u = 1 contradicts at zero cost
    CHECK(detail::pm_update(1.0, 0.0, 1) == 1.0);
    CHECK(detail::pm_update(1.0, 0.0, 0) == 1.0);
}

TEST_CASE("decoder config validation") {
    CodeConfig plain_code = build_code_config(64, 20, nr_universal_sequence());
    DecoderConfig dc;
    dc.L = 3;
    CHECK_THROWS(ListDecoder(plain_code, dc));
    dc.L = 4;
    dc.variant = Variant::CK;
    CHECK_THROWS(ListDecoder(plain_code, dc));  // no CRC, no Q set
    dc.variant = Variant::PLAIN;
    CHECK_NOTHROW(ListDecoder(plain_code, dc));
}

TEST_CASE("variant names round-trip") {
    for (Variant v : {Variant::PLAIN, Variant::CK, Variant::CR, Variant::CS})
        CHECK(variant_from_name(variant_name(v)) == v);
    CHECK_FALSE(variant_from_name("bogus").has_value());
}

TEST_CASE("L = 1 PLAIN matches sc_decode on noisy frames") {
    CodeConfig cfg = build_code_config(512, 32, 24, CrcSpec::nr_crc24(),
                                       nr_universal_sequence());
    DecoderConfig dc;
    dc.L = 1;
    ListDecoder decoder(cfg, dc);
    std::mt19937_64 rng(41);
    for (double sigma : {0.7, 1.0, 1.4}) {
        for (int trial = 0; trial < 100; ++trial) {
            BitVec msg = random_bits(32, rng);
            BitVec x = polar_transform(assemble_input(cfg, msg));
            std::vector<double> llr = noisy_llr(x, sigma, rng);
            DecodeOutcome out = decoder.decode(llr);
            REQUIRE(out.status == DecodeStatus::OK);
            REQUIRE(out.u_hat == sc_decode(cfg, llr));
        }
    }
}

TEST_CASE("noiseless decode recovers the message, all variants and L") {
    CodeConfig cfg = build_code_config(128, 32, 24, CrcSpec::nr_crc24(),
                                       nr_universal_sequence());
    std::mt19937_64 rng(43);
    for (Variant var : {Variant::PLAIN, Variant::CK, Variant::CR, Variant::CS}) {
        for (int L : {1, 2, 4, 8}) {
            DecoderConfig dc;
            dc.L = L;
            dc.variant = var;
            dc.check_invariants = true;
            ListDecoder decoder(cfg, dc);
            for (int trial = 0; trial < 25; ++trial) {
                BitVec msg = random_bits(32, rng);
                BitVec x = polar_transform(assemble_input(cfg, msg));
                std::vector<double> llr(x.size());
                for (size_t i = 0; i < x.size(); ++i) llr[i] = x[i] ? -6.0 : 6.0;
                DecodeOutcome out = decoder.decode(llr);
                REQUIRE(out.status == DecodeStatus::OK);
                REQUIRE(out.message == msg);
                REQUIRE(out.final_pm == 0.0);
            }
        }
    }
}

TEST_CASE("full-list SCL matches the exhaustive metric minimizer") {
    CodeConfig cfg = build_code_config(8, 4, nr_universal_sequence());
    DecoderConfig dc;
    dc.L = 16;  // 2^K paths, nothing is ever pruned
    ListDecoder decoder(cfg, dc);
    std::mt19937_64 rng(47);
    int compared = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        BitVec msg = random_bits(4, rng);
        BitVec x = polar_transform(assemble_input(cfg, msg));
        std::vector<double> llr = noisy_llr(x, 1.5, rng);

        double best = 1e300, second = 1e300;
        BitVec best_u;
        for (int v = 0; v < 16; ++v) {
            BitVec cand(4);
            for (int k = 0; k < 4; ++k)
                cand[static_cast<size_t>(k)] = static_cast<Bit>((v >> k) & 1);
            BitVec u = assemble_input(cfg, cand);
            double pm = forced_metric(cfg, u, llr);
            if (pm < best) {
                second = best;
                best = pm;
                best_u = u;
            } else if (pm < second) {
                second = pm;
            }
        }
        if (second - best < 1e-9) continue;  // ambiguous under fp noise

        DecodeOutcome out = decoder.decode(llr);
        REQUIRE(out.status == DecodeStatus::OK);
        REQUIRE(out.u_hat == best_u);
        REQUIRE(out.final_pm == doctest::Approx(best).epsilon(1e-12));
        ++compared;
    }
    CHECK(compared > 900);
}

TEST_CASE("CS forces CRC bits: survivors always pass the full CRC") {
    CodeConfig cfg = build_code_config(256, 32, 24, CrcSpec::nr_crc24(),
                                       nr_universal_sequence());
    DecoderConfig dc;
    dc.L = 4;
    dc.variant = Variant::CS;
    dc.collect_survivors = true;
    dc.check_invariants = true;
    ListDecoder decoder(cfg, dc);
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        BitVec msg = random_bits(32, rng);
        BitVec x = polar_transform(assemble_input(cfg, msg));
        std::vector<double> llr = noisy_llr(x, 1.5, rng);
        DecodeOutcome out = decoder.decode(llr);
        // CS never terminates early and never reports a failure
        REQUIRE(out.status == DecodeStatus::OK);
        REQUIRE(out.survivor_count == 4);
        for (const SurvivorInfo& s : out.survivors)
            REQUIRE(passes_full_crc(cfg, s.u));
    }
}

TEST_CASE("CR keeps only parity-consistent paths, live count <= L") {
    CodeConfig cfg = build_code_config(256, 32, 24, CrcSpec::nr_crc24(),
                                       nr_universal_sequence());
    DecoderConfig dc;
    dc.L = 8;
    dc.variant = Variant::CR;
    dc.collect_survivors = true;
    dc.check_invariants = true;  // throws inside on any violation
    ListDecoder decoder(cfg, dc);
    std::mt19937_64 rng(59);
    int terminated = 0, shrunk = 0;
    for (int trial = 0; trial < 500; ++trial) {
        BitVec msg = random_bits(32, rng);
        BitVec x = polar_transform(assemble_input(cfg, msg));
        std::vector<double> llr = noisy_llr(x, 1.6, rng);
        DecodeOutcome out = decoder.decode(llr);
        if (out.status == DecodeStatus::EARLY_TERMINATED) {
            ++terminated;
            REQUIRE(out.et_crc_index >= 1);
            REQUIRE(out.et_crc_index <= 24);
            continue;
        }
        REQUIRE(out.status == DecodeStatus::OK);
        REQUIRE(out.survivor_count <= 8);
        if (out.survivor_count < 8) ++shrunk;
        // every survivor passed all checks along the way
        for (const SurvivorInfo& s : out.survivors) {
            REQUIRE(s.crc_all_ok);
            REQUIRE(passes_full_crc(cfg, s.u));
        }
    }
    // at sigma 1.6 the check pressure must show up in both forms
    CHECK(terminated > 0);
    CHECK(shrunk > 0);
}

TEST_CASE("CK keeps failing paths but selects a valid one") {
    CodeConfig cfg = build_code_config(256, 32, 24, CrcSpec::nr_crc24(),
                                       nr_universal_sequence());
    DecoderConfig dc;
    dc.L = 8;
    dc.variant = Variant::CK;
    dc.collect_survivors = true;
    ListDecoder decoder(cfg, dc);
    std::mt19937_64 rng(61);
    int terminated = 0, no_valid = 0, ok = 0;
    for (int trial = 0; trial < 500; ++trial) {
        BitVec msg = random_bits(32, rng);
        BitVec x = polar_transform(assemble_input(cfg, msg));
        std::vector<double> llr = noisy_llr(x, 1.6, rng);
        DecodeOutcome out = decoder.decode(llr);
        switch (out.status) {
            case DecodeStatus::EARLY_TERMINATED:
                ++terminated;
                break;
            case DecodeStatus::NO_VALID_PATH:
                ++no_valid;
                break;
            case DecodeStatus::OK: {
                ++ok;
                // CK never drops paths mid-decode
                REQUIRE(out.survivor_count == 8);
                REQUIRE(passes_full_crc(cfg, out.u_hat));
                // selected = min PM among cumulatively valid paths
                double best_valid = 1e300;
                for (const SurvivorInfo& s : out.survivors)
                    if (s.crc_all_ok) best_valid = std::min(best_valid, s.pm);
                REQUIRE(out.final_pm == best_valid);
                break;
            }
        }
    }
    CHECK(ok > 0);
    CHECK(terminated > 0);
}

TEST_CASE("decoder instance is reusable without state leakage") {
    CodeConfig cfg = build_code_config(128, 32, 24, CrcSpec::nr_crc24(),
                                       nr_universal_sequence());
    DecoderConfig dc;
    dc.L = 4;
    dc.variant = Variant::CK;
    ListDecoder a(cfg, dc), b(cfg, dc);
    std::mt19937_64 rng(67);
    std::vector<std::vector<double>> frames;
    for (int trial = 0; trial < 50; ++trial) {
        BitVec msg = random_bits(32, rng);
        BitVec x = polar_transform(assemble_input(cfg, msg));
        frames.push_back(noisy_llr(x, 1.3, rng));
    }
    // decode the same frames twice with one instance, once with a fresh one
    std::vector<BitVec> first;
    for (const auto& llr : frames) first.push_back(a.decode(llr).u_hat);
    for (size_t i = 0; i < frames.size(); ++i) {
        CHECK(a.decode(frames[i]).u_hat == first[i]);
        CHECK(b.decode(frames[i]).u_hat == first[i]);
    }
}

// SPDX-License-Identifier: Apache-2.0
#include <numeric>
#include <sstream>

#include <doctest.h>

#include "dcapolar/sim.hpp"

using namespace dcapolar;

namespace {

RunConfig noisy_pbch_config() {
    RunConfig cfg = preset_run_config("pbch");
    cfg.decoders = {{Variant::CK, 2}, {Variant::CR, 2}, {Variant::CS, 2}};
    cfg.snr_db = {-8.5};
    cfg.max_frames = 3000;
    cfg.min_frame_errors = 40;
    cfg.seed = 2024;
    return cfg;
}

std::string results_csv(const SweepResult& r) {
    std::ostringstream os;
    write_results_csv(r, os);
    return os.str();
}

}  // namespace

TEST_CASE("presets") {
    RunConfig p = preset_run_config("pbch");
    CHECK(p.N == 512);
    CHECK(p.A == 32);
    CHECK(p.P == 24);
    p = preset_run_config("pdcch_a");
    CHECK(p.N == 512);
    CHECK(p.A == 140);
    p = preset_run_config("pdcch_b");
    CHECK(p.N == 256);
    CHECK(p.A == 128);
    CHECK_THROWS(preset_run_config("nope"));
}

TEST_CASE("config validation rejects unsatisfiable codes") {
    RunConfig cfg = preset_run_config("pbch");
    cfg.decoders = {{Variant::CK, 8}};
    cfg.snr_db = {0.0};
    cfg.A = 150;  // K = 174 > 164
    CHECK_THROWS(run_sweep(cfg));
    cfg = preset_run_config("pbch");
    cfg.snr_db = {0.0};
    CHECK_THROWS(run_sweep(cfg));  // no decoders
    cfg.decoders = {{Variant::CK, 8}};
    cfg.snr_db.clear();
    CHECK_THROWS(run_sweep(cfg));  // no SNR points
    cfg.snr_db = {0.0};
    cfg.min_frame_errors = 0;
    CHECK_THROWS(run_sweep(cfg));
}

TEST_CASE("high-SNR smoke run has zero errors") {
    RunConfig cfg = preset_run_config("pbch");
    cfg.decoders = {{Variant::CK, 2}, {Variant::CR, 2}, {Variant::CS, 2},
                    {Variant::PLAIN, 2}};
    cfg.snr_db = {0.0};
    cfg.max_frames = 100;
    cfg.min_frame_errors = 1;
    cfg.seed = 7;
    SweepResult r = run_sweep(cfg);
    REQUIRE(r.rows.size() == 4);
    for (const ResultRow& row : r.rows) {
        CHECK(row.stats.frames == 100);
        CHECK(row.stats.e_tot == 0);
        CHECK(row.stats.bler() == 0.0);
    }
}

TEST_CASE("accounting identities at a noisy operating point") {
    SweepResult r = run_sweep(noisy_pbch_config());
    bool saw_errors = false;
    for (const ResultRow& row : r.rows) {
        const SnrPointStats& s = row.stats;
        REQUIRE(s.e_tot == s.e_e + s.e_w + s.e_d);
        uint64_t et_sum = std::accumulate(s.et_by_crc_index.begin(),
                                          s.et_by_crc_index.end(),
                                          static_cast<uint64_t>(0));
        REQUIRE(et_sum == s.e_e);
        CHECK(s.epsilon() >= 0.0);
        CHECK(s.epsilon() <= 1.0);
        if (s.e_tot > 0) saw_errors = true;
        if (row.decoder.variant == Variant::CS) CHECK(s.e_e == 0);
    }
    CHECK(saw_errors);
}

TEST_CASE("same seed reproduces byte-identical CSV") {
    RunConfig cfg = noisy_pbch_config();
    std::string first = results_csv(run_sweep(cfg));
    std::string second = results_csv(run_sweep(cfg));
    CHECK(first == second);
    CHECK(first.find("pbch,ck,2,-8.5,esn0,") != std::string::npos);
}

TEST_CASE("results do not depend on the worker count") {
    RunConfig cfg = noisy_pbch_config();
    cfg.max_frames = 1500;
    cfg.batch_size = 97;  // odd size so worker partitions land unevenly
    cfg.threads = 1;
    std::string one = results_csv(run_sweep(cfg));
    cfg.threads = 3;
    std::string three = results_csv(run_sweep(cfg));
    cfg.threads = 8;
    std::string eight = results_csv(run_sweep(cfg));
    CHECK(one == three);
    CHECK(one == eight);
}

TEST_CASE("et histogram rows sum to epsilon") {
    SweepResult r = run_sweep(noisy_pbch_config());
    std::ostringstream os;
    write_et_histogram_csv(r, os);
    std::string hist = os.str();
    CHECK(hist.rfind("variant,L,snr_db,crc_index,e_e_i", 0) == 0);
    for (const ResultRow& row : r.rows) {
        if (row.stats.e_tot == 0) continue;
        double eps_sum = 0.0;
        for (uint64_t c : row.stats.et_by_crc_index)
            eps_sum += static_cast<double>(c) / static_cast<double>(row.stats.e_tot);
        CHECK(eps_sum == doctest::Approx(row.stats.epsilon()));
    }
}

TEST_CASE("manifest records the run parameters") {
    SweepResult r = run_sweep(noisy_pbch_config());
    std::ostringstream os;
    write_manifest_json(r, os);
    std::string m = os.str();
    CHECK(m.find("\"seed\": 2024") != std::string::npos);
    CHECK(m.find("mt19937_64") != std::string::npos);
    CHECK(m.find("e_tot = e_e + e_w + e_d") != std::string::npos);
}

TEST_CASE("stop rule: error floor ends a point before max_frames") {
    RunConfig cfg = noisy_pbch_config();
    cfg.snr_db = {-10.0};  // nearly every frame fails
    cfg.max_frames = 100000;
    cfg.min_frame_errors = 30;
    cfg.batch_size = 64;
    SweepResult r = run_sweep(cfg);
    for (const ResultRow& row : r.rows) {
        CHECK(row.stats.e_tot >= 30);
        CHECK(row.stats.frames < 1000);
    }
}

TEST_CASE("bhattacharyya reliability source is usable") {
    RunConfig cfg = preset_run_config("pbch");
    cfg.reliability = "bhattacharyya:-4";
    cfg.decoders = {{Variant::CK, 2}};
    cfg.snr_db = {0.0};
    cfg.max_frames = 50;
    cfg.min_frame_errors = 1;
    SweepResult r = run_sweep(cfg);
    CHECK(r.rows[0].stats.e_tot == 0);
    CHECK(r.reliability_source.find("bhattacharyya") != std::string::npos);
}

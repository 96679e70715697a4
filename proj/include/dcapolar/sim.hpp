// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "dcapolar/channel.hpp"
#include "dcapolar/list_decoder.hpp"

namespace dcapolar {

struct DecoderSpec {
    Variant variant = Variant::CK;
    int L = 8;
};

struct RunConfig {
    std::string code_name = "pc";  // preset name or free-form label
    int N = 512;
    int A = 32;
    int P = 24;
    std::string reliability = "nr";  // "nr", "bhattacharyya:<snr_db>", or a file path
    std::vector<DecoderSpec> decoders;
    std::vector<double> snr_db;
    SnrKind snr_kind = SnrKind::EsN0;
    uint64_t max_frames = 1000000;
    uint64_t min_frame_errors = 100;
    uint64_t seed = 1;
    int threads = 1;
    uint64_t batch_size = 256;  // stop rules fire on batch boundaries

    void validate() const;
};

// pbch = PC(512,56), pdcch_a = PC(512,164), pdcch_b = PC(256,152)
RunConfig preset_run_config(const std::string& preset);

ReliabilitySequence resolve_reliability(const std::string& spec);

// Per-(decoder, SNR) tallies. E_tot = E_e + E_w + E_d:
// early-terminated, undetected-wrong, detected-at-final-selection.
struct SnrPointStats {
    uint64_t frames = 0;
    uint64_t e_tot = 0;
    uint64_t e_e = 0;
    uint64_t e_w = 0;
    uint64_t e_d = 0;
    std::vector<uint64_t> et_by_crc_index;  // E_e(i), i = 1..P at [i-1]

    double bler() const {
        return frames ? static_cast<double>(e_tot) / static_cast<double>(frames) : 0.0;
    }
    double epsilon() const {  // E_e / E_tot
        return e_tot ? static_cast<double>(e_e) / static_cast<double>(e_tot) : 0.0;
    }
    void merge(const SnrPointStats& other);
};

struct ResultRow {
    DecoderSpec decoder;
    double snr_db = 0.0;
    SnrPointStats stats;
};

struct SweepResult {
    RunConfig config;
    std::string reliability_source;
    std::vector<ResultRow> rows;  // snr-major, decoder-minor order
};

// Monte-Carlo sweep: every decoder sees the identical noisy frame.
SweepResult run_sweep(const RunConfig& cfg);
SweepResult run_sweep(const RunConfig& cfg, const CodeConfig& code);

// (code, variant, L, snr_db, snr_kind, frames, e_tot, e_e, e_w, e_d,
//  bler, epsilon, seed)
void write_results_csv(const SweepResult& result, std::ostream& os);

// long format: (variant, L, snr_db, crc_index, e_e_i)
void write_et_histogram_csv(const SweepResult& result, std::ostream& os);

// full config echo + component versions
void write_manifest_json(const SweepResult& result, std::ostream& os);

// library version string used in manifests
const char* version_string();

}  // namespace dcapolar

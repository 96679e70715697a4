// SPDX-License-Identifier: Apache-2.0
#include "dcapolar/sim.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "dcapolar/kernels.hpp"

namespace dcapolar {

const char* version_string() { return "dcapolar 1.0.0"; }

void RunConfig::validate() const {
    if (min_frame_errors < 1)
        throw std::invalid_argument("min_frame_errors must be >= 1");
    if (decoders.empty()) throw std::invalid_argument("no decoders configured");
    if (snr_db.empty()) throw std::invalid_argument("no SNR points");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
    if (A + P > 164)
        throw std::invalid_argument("K = A + P exceeds interleaver limit 164");
    if (A + P > N) throw std::invalid_argument("K exceeds block length");
}

RunConfig preset_run_config(const std::string& preset) {
    RunConfig cfg;
    cfg.code_name = preset;
    if (preset == "pbch") {
        cfg.N = 512; cfg.A = 32; cfg.P = 24;
    } else if (preset == "pdcch_a") {
        cfg.N = 512; cfg.A = 140; cfg.P = 24;
    } else if (preset == "pdcch_b") {
        cfg.N = 256; cfg.A = 128; cfg.P = 24;
    } else {
        throw std::invalid_argument("unknown preset: " + preset);
    }
    return cfg;
}

ReliabilitySequence resolve_reliability(const std::string& spec) {
    if (spec == "nr") return nr_universal_sequence();
    if (spec.rfind("bhattacharyya:", 0) == 0) {
        double snr = std::stod(spec.substr(14));
        // block length filled in by most_reliable(); build for 1024
        return bhattacharyya_sequence(1024, snr);
    }
    return load_reliability_file(spec);
}

void SnrPointStats::merge(const SnrPointStats& other) {
    frames += other.frames;
    e_tot += other.e_tot;
    e_e += other.e_e;
    e_w += other.e_w;
    e_d += other.e_d;
    if (et_by_crc_index.size() < other.et_by_crc_index.size())
        et_by_crc_index.resize(other.et_by_crc_index.size(), 0);
    for (size_t i = 0; i < other.et_by_crc_index.size(); ++i)
        et_by_crc_index[i] += other.et_by_crc_index[i];
}

namespace {

void tally_outcome(const DecodeOutcome& out, std::span<const Bit> tx_message,
                   int crc_len, SnrPointStats& stats) {
    stats.frames += 1;
    if (stats.et_by_crc_index.empty() && crc_len > 0)
        stats.et_by_crc_index.assign(static_cast<size_t>(crc_len), 0);
    switch (out.status) {
        case DecodeStatus::OK: {
            const BitVec& msg = *out.message;
            if (!std::equal(msg.begin(), msg.end(), tx_message.begin())) {
                stats.e_tot += 1;
                stats.e_w += 1;
            }
            break;
        }
        case DecodeStatus::EARLY_TERMINATED:
            stats.e_tot += 1;
            stats.e_e += 1;
            stats.et_by_crc_index[static_cast<size_t>(out.et_crc_index - 1)] += 1;
            break;
        case DecodeStatus::NO_VALID_PATH:
            stats.e_tot += 1;
            stats.e_d += 1;
            break;
    }
}

// One worker's share of a batch: frames congruent to worker mod stride.
void run_frames(const CodeConfig& code, const ChannelParams& params,
                std::vector<ListDecoder>& decoders, uint64_t seed,
                uint64_t point_key, uint64_t begin, uint64_t end,
                uint64_t worker, uint64_t stride,
                std::vector<SnrPointStats>& local) {
    BitVec message(static_cast<size_t>(code.A));
    for (uint64_t f = begin + worker; f < end; f += stride) {
        FrameRng rng = FrameRng::for_frame(seed, (point_key << 40) | f);
        for (auto& b : message) b = rng.bit();
        BitVec u = assemble_input(code, message);
        BitVec x = polar_transform(u);
        std::vector<double> s = modulate(x);
        std::vector<double> y = transmit(s, params, rng);
        std::vector<double> llr = channel_llr(y, params);
        for (size_t d = 0; d < decoders.size(); ++d)
            tally_outcome(decoders[d].decode(llr), message, code.P, local[d]);
    }
}

ChannelParams make_params(const RunConfig& cfg, const CodeConfig& code,
                          double snr_db) {
    if (cfg.snr_kind == SnrKind::EsN0) return ChannelParams::es_n0(snr_db);
    double rate = static_cast<double>(code.A) / static_cast<double>(code.N);
    return ChannelParams::eb_n0(snr_db, rate);
}

}  // namespace

SweepResult run_sweep(const RunConfig& cfg, const CodeConfig& code) {
    cfg.validate();
    SweepResult result;
    result.config = cfg;
    result.reliability_source = code.reliability_source;

    for (size_t point = 0; point < cfg.snr_db.size(); ++point) {
        const double snr = cfg.snr_db[point];
        const ChannelParams params = make_params(cfg, code, snr);

        const int T = cfg.threads;
        // per-worker decoder instances and stats
        std::vector<std::vector<ListDecoder>> decoders(static_cast<size_t>(T));
        std::vector<std::vector<SnrPointStats>> local(static_cast<size_t>(T));
        for (int t = 0; t < T; ++t) {
            for (const DecoderSpec& d : cfg.decoders) {
                DecoderConfig dc;
                dc.L = d.L;
                dc.variant = d.variant;
                decoders[static_cast<size_t>(t)].emplace_back(code, dc);
            }
            local[static_cast<size_t>(t)].resize(cfg.decoders.size());
        }

        std::vector<SnrPointStats> totals(cfg.decoders.size());
        uint64_t frame = 0;
        while (true) {
            uint64_t batch_end =
                std::min(frame + cfg.batch_size, cfg.max_frames);
            if (batch_end <= frame) break;
            if (T == 1) {
                run_frames(code, params, decoders[0], cfg.seed, point, frame,
                           batch_end, 0, 1, local[0]);
            } else {
                std::vector<std::thread> workers;
                for (int t = 0; t < T; ++t)
                    workers.emplace_back(run_frames, std::cref(code),
                                         std::cref(params),
                                         std::ref(decoders[static_cast<size_t>(t)]),
                                         cfg.seed, point, frame, batch_end,
                                         static_cast<uint64_t>(t),
                                         static_cast<uint64_t>(T),
                                         std::ref(local[static_cast<size_t>(t)]));
                for (auto& w : workers) w.join();
            }
            for (int t = 0; t < T; ++t)
                for (size_t d = 0; d < cfg.decoders.size(); ++d) {
                    totals[d].merge(local[static_cast<size_t>(t)][d]);
                    local[static_cast<size_t>(t)][d] = SnrPointStats{};
                }
            frame = batch_end;
            bool all_enough = true;
            for (const auto& s : totals)
                if (s.e_tot < cfg.min_frame_errors) all_enough = false;
            if (all_enough || frame >= cfg.max_frames) break;
        }

        for (size_t d = 0; d < cfg.decoders.size(); ++d)
            result.rows.push_back({cfg.decoders[d], snr, totals[d]});
    }
    return result;
}

SweepResult run_sweep(const RunConfig& cfg) {
    cfg.validate();
    ReliabilitySequence rel = resolve_reliability(cfg.reliability);
    CodeConfig code =
        cfg.P > 0
            ? build_code_config(cfg.N, cfg.A, cfg.P, CrcSpec::nr_crc24(), rel)
            : build_code_config(cfg.N, cfg.A, rel);
    return run_sweep(cfg, code);
}

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

const char* snr_kind_name(SnrKind k) {
    return k == SnrKind::EsN0 ? "esn0" : "ebn0";
}

}  // namespace

void write_results_csv(const SweepResult& result, std::ostream& os) {
    os << "code,variant,L,snr_db,snr_kind,frames,e_tot,e_e,e_w,e_d,bler,"
          "epsilon,seed\n";
    for (const ResultRow& row : result.rows) {
        const SnrPointStats& s = row.stats;
        os << result.config.code_name << ',' << variant_name(row.decoder.variant)
           << ',' << row.decoder.L << ',' << fmt_double(row.snr_db) << ','
           << snr_kind_name(result.config.snr_kind) << ',' << s.frames << ','
           << s.e_tot << ',' << s.e_e << ',' << s.e_w << ',' << s.e_d << ','
           << fmt_double(s.bler()) << ',' << fmt_double(s.epsilon()) << ','
           << result.config.seed << '\n';
    }
}

void write_et_histogram_csv(const SweepResult& result, std::ostream& os) {
    os << "variant,L,snr_db,crc_index,e_e_i\n";
    for (const ResultRow& row : result.rows)
        for (size_t i = 0; i < row.stats.et_by_crc_index.size(); ++i)
            os << variant_name(row.decoder.variant) << ',' << row.decoder.L
               << ',' << fmt_double(row.snr_db) << ',' << (i + 1) << ','
               << row.stats.et_by_crc_index[i] << '\n';
}

void write_manifest_json(const SweepResult& result, std::ostream& os) {
    nlohmann::json j;
    const RunConfig& cfg = result.config;
    j["version"] = version_string();
    j["kernel_backend"] = kernels::active_ops().name;
    j["rng"] = "mt19937_64 seeded via splitmix64(seed, frame_key); "
               "Gaussians via Box-Muller";
    j["code"] = {{"name", cfg.code_name}, {"N", cfg.N}, {"A", cfg.A},
                 {"P", cfg.P}, {"reliability", result.reliability_source}};
    j["snr_kind"] = snr_kind_name(cfg.snr_kind);
    j["snr_db"] = cfg.snr_db;
    nlohmann::json decs = nlohmann::json::array();
    for (const DecoderSpec& d : cfg.decoders)
        decs.push_back({{"variant", variant_name(d.variant)}, {"L", d.L}});
    j["decoders"] = decs;
    j["seed"] = cfg.seed;
    j["max_frames"] = cfg.max_frames;
    j["min_frame_errors"] = cfg.min_frame_errors;
    j["threads"] = cfg.threads;
    j["batch_size"] = cfg.batch_size;
    // note: e_e excludes e_d; merging e_d into e_e at the final CRC index
    // restores the E_tot = E_e + E_w split
    j["accounting"] = "e_tot = e_e + e_w + e_d";
    os << j.dump(2) << '\n';
}

}  // namespace dcapolar

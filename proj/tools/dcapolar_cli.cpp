// SPDX-License-Identifier: Apache-2.0
// Command line front end: simulate | inspect | selftest.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcapolar/kernels.hpp"
#include "dcapolar/sim.hpp"

namespace dp = dcapolar;
using nlohmann::json;

namespace {

std::vector<dp::DecoderSpec> parse_decoders(const std::vector<std::string>& specs) {
    std::vector<dp::DecoderSpec> out;
    for (const std::string& s : specs) {
        auto colon = s.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--decoder", "expected variant:L, got " + s);
        auto v = dp::variant_from_name(s.substr(0, colon));
        if (!v)
            throw CLI::ValidationError("--decoder", "unknown variant in " + s);
        out.push_back({*v, std::stoi(s.substr(colon + 1))});
    }
    return out;
}

void apply_json_config(const std::string& path, dp::RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw CLI::FileError::Missing(path);
    json j = json::parse(in);
    if (j.contains("preset")) cfg = dp::preset_run_config(j["preset"]);
    if (j.contains("code_name")) cfg.code_name = j["code_name"];
    if (j.contains("N")) cfg.N = j["N"];
    if (j.contains("A")) cfg.A = j["A"];
    if (j.contains("P")) cfg.P = j["P"];
    if (j.contains("reliability")) cfg.reliability = j["reliability"];
    if (j.contains("decoders")) {
        cfg.decoders.clear();
        for (const auto& d : j["decoders"]) {
            auto v = dp::variant_from_name(d["variant"].get<std::string>());
            if (!v) throw std::invalid_argument("unknown variant in config file");
            cfg.decoders.push_back({*v, d["L"].get<int>()});
        }
    }
    if (j.contains("snr_db")) cfg.snr_db = j["snr_db"].get<std::vector<double>>();
    if (j.contains("snr_kind")) {
        std::string k = j["snr_kind"];
        cfg.snr_kind = k == "ebn0" ? dp::SnrKind::EbN0 : dp::SnrKind::EsN0;
    }
    if (j.contains("max_frames")) cfg.max_frames = j["max_frames"];
    if (j.contains("min_frame_errors")) cfg.min_frame_errors = j["min_frame_errors"];
    if (j.contains("seed")) cfg.seed = j["seed"];
    if (j.contains("threads")) cfg.threads = j["threads"];
    if (j.contains("batch_size")) cfg.batch_size = j["batch_size"];
}

std::string default_outdir() {
    const char* env = std::getenv("DCAPOLAR_OUTDIR");
    return env != nullptr ? env : ".";
}

json interleaver_json(const dp::CodeConfig& cfg) {
    json il;
    il["K"] = cfg.interleaver.K;
    il["h"] = cfg.interleaver.h;
    il["pi"] = cfg.interleaver.pi;
    il["pi_inv"] = cfg.interleaver.pi_inv;
    json crc_pos = json::array();
    for (const auto& p : dp::crc_positions(cfg.interleaver, cfg.A))
        crc_pos.push_back({{"stream_pos", p.stream_pos}, {"crc_index", p.crc_index}});
    il["crc_positions"] = crc_pos;
    il["distributed_count"] = dp::distributed_count(cfg.interleaver, cfg.A);
    return il;
}

json code_config_json(const dp::CodeConfig& cfg) {
    json j;
    j["N"] = cfg.N;
    j["n"] = cfg.n;
    j["K"] = cfg.K;
    j["A"] = cfg.A;
    j["P"] = cfg.P;
    j["reliability_source"] = cfg.reliability_source;
    j["info_set"] = cfg.info_set;
    j["q_set"] = cfg.q_set;
    if (cfg.K > 0) j["interleaver"] = interleaver_json(cfg);
    if (cfg.P > 0) {
        json exps = json::array();
        for (int k = cfg.crc.degree; k >= 0; --k)
            if (cfg.crc.coeffs[static_cast<size_t>(k)]) exps.push_back(k);
        j["crc"] = {{"degree", cfg.crc.degree}, {"exponents", exps}};
    }
    return j;
}

int run_simulate(const dp::RunConfig& cfg, const std::string& outdir,
                 const std::string& tag, bool quiet) {
    dp::SweepResult result = dp::run_sweep(cfg);

    namespace fs = std::filesystem;
    fs::create_directories(outdir);
    const std::string base = (fs::path(outdir) / tag).string();
    {
        std::ofstream os(base + "_results.csv");
        if (!os) { std::cerr << "cannot write " << base << "_results.csv\n"; return 1; }
        dp::write_results_csv(result, os);
    }
    {
        std::ofstream os(base + "_et_histogram.csv");
        dp::write_et_histogram_csv(result, os);
    }
    {
        std::ofstream os(base + "_manifest.json");
        dp::write_manifest_json(result, os);
    }
    if (!quiet) dp::write_results_csv(result, std::cout);
    return 0;
}

// Small built-in oracle suites; exits nonzero on any failure.
int run_selftest() {
    int failures = 0;
    auto report = [&failures](const char* name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
        if (!ok) ++failures;
    };

    // CRC matrix vs shift-register long division, toy poly exhaustive.
    {
        dp::CrcSpec toy = dp::CrcSpec::toy_crc3();
        bool ok = true;
        for (int A = 1; A <= 10 && ok; ++A) {
            dp::CrcMatrix m = dp::build_crc_matrix(toy, A);
            for (int v = 0; v < (1 << A) && ok; ++v) {
                dp::BitVec a(static_cast<size_t>(A));
                for (int k = 0; k < A; ++k)
                    a[static_cast<size_t>(k)] = static_cast<dp::Bit>((v >> k) & 1);
                dp::BitVec enc = dp::crc_encode(a, m);
                dp::BitVec rem = dp::crc_oracle_remainder(a, toy);
                for (int p = 0; p < 3; ++p)
                    if (enc[static_cast<size_t>(A + p)] != rem[static_cast<size_t>(p)])
                        ok = false;
            }
        }
        report("crc_matrix_vs_long_division", ok);
    }

    // CRC-24 spot check on random messages.
    {
        dp::CrcSpec crc = dp::CrcSpec::nr_crc24();
        dp::CrcMatrix m = dp::build_crc_matrix(crc, 32);
        std::mt19937_64 rng(7);
        bool ok = true;
        for (int trial = 0; trial < 1000 && ok; ++trial) {
            dp::BitVec a(32);
            for (auto& b : a) b = static_cast<dp::Bit>(rng() & 1);
            dp::BitVec enc = dp::crc_encode(a, m);
            dp::BitVec rem = dp::crc_oracle_remainder(a, crc);
            for (int p = 0; p < 24; ++p)
                if (enc[static_cast<size_t>(32 + p)] != rem[static_cast<size_t>(p)])
                    ok = false;
        }
        report("crc24_random_messages", ok);
    }

    // Interleaver is a permutation for every legal K.
    {
        bool ok = true;
        for (int K = 25; K <= 164 && ok; ++K) {
            dp::Interleaver il = dp::build_interleaver(K, 24);
            std::vector<char> seen(static_cast<size_t>(K), 0);
            for (int j = 0; j < K; ++j) seen[static_cast<size_t>(il.pi[static_cast<size_t>(j)])] = 1;
            for (char c : seen) ok = ok && c;
        }
        report("interleaver_permutation", ok);
    }

    // Polar transform is self-inverse.
    {
        std::mt19937_64 rng(11);
        bool ok = true;
        for (int trial = 0; trial < 100 && ok; ++trial) {
            dp::BitVec u(256);
            for (auto& b : u) b = static_cast<dp::Bit>(rng() & 1);
            dp::BitVec round = dp::polar_transform(dp::polar_transform(u));
            ok = round == u;
        }
        report("polar_transform_involution", ok);
    }

    // SIMD backends agree with the scalar reference.
    {
        bool ok = true;
        std::mt19937_64 rng(13);
        std::vector<double> a(257), b(257), s(257), v(257);
        std::vector<uint8_t> bl(257);
        std::normal_distribution<double> nd(0.0, 3.0);
        for (size_t i = 0; i < a.size(); ++i) {
            a[i] = nd(rng);
            b[i] = nd(rng);
            bl[i] = static_cast<uint8_t>(rng() & 1);
        }
        const dp::kernels::Ops& ref = dp::kernels::scalar_ops();
        auto check_backend = [&](const dp::kernels::Ops& ops) {
            ref.f_vec(a.data(), b.data(), s.data(), a.size());
            ops.f_vec(a.data(), b.data(), v.data(), a.size());
            if (s != v) return false;
            ref.g_vec(a.data(), b.data(), bl.data(), s.data(), a.size());
            ops.g_vec(a.data(), b.data(), bl.data(), v.data(), a.size());
            return s == v;
        };
#if defined(__x86_64__) || defined(_M_X64)
        if (const dp::kernels::Ops* ops = dp::kernels::avx2_ops())
            ok = ok && check_backend(*ops);
#endif
#if defined(__aarch64__)
        if (const dp::kernels::Ops* ops = dp::kernels::neon_ops())
            ok = ok && check_backend(*ops);
#endif
        report("kernel_backend_equivalence", ok);
    }

    // Noiseless round trip through every decoder variant.
    {
        dp::CodeConfig code = dp::build_code_config(
            128, 32, 24, dp::CrcSpec::nr_crc24(), dp::nr_universal_sequence());
        std::mt19937_64 rng(17);
        bool ok = true;
        for (dp::Variant var : {dp::Variant::PLAIN, dp::Variant::CK,
                                dp::Variant::CR, dp::Variant::CS}) {
            dp::DecoderConfig dc;
            dc.L = 4;
            dc.variant = var;
            dc.check_invariants = true;
            dp::ListDecoder decoder(code, dc);
            for (int trial = 0; trial < 20 && ok; ++trial) {
                dp::BitVec msg(32);
                for (auto& b : msg) b = static_cast<dp::Bit>(rng() & 1);
                dp::BitVec x = dp::polar_transform(dp::assemble_input(code, msg));
                std::vector<double> llr(x.size());
                for (size_t i = 0; i < x.size(); ++i) llr[i] = x[i] ? -8.0 : 8.0;
                dp::DecodeOutcome out = decoder.decode(llr);
                ok = out.status == dp::DecodeStatus::OK && out.message == msg;
            }
        }
        report("noiseless_round_trip_all_variants", ok);
    }

    std::cout << (failures == 0 ? "selftest OK" : "selftest FAILED") << '\n';
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed-CRC-aided polar code simulator"};
    app.set_version_flag("--version", dp::version_string());
    app.require_subcommand(1);

    std::string backend = "auto";
    app.add_option("--backend", backend, "LLR kernel backend: auto|scalar|avx2|neon");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run a Monte-Carlo BLER sweep");
    std::string config_path, preset, outdir = default_outdir(), tag = "run";
    std::vector<std::string> decoder_specs;
    std::vector<double> snr_list;
    std::vector<double> snr_range;  // start stop step
    std::string snr_kind = "esn0", reliability;
    dp::RunConfig cfg;
    bool quiet = false;
    int opt_n = 0, opt_a = -1, opt_p = -1, threads = 0;
    uint64_t max_frames = 0, min_errors = 0, batch = 0;
    int64_t seed = -1;
    sim->add_option("--config", config_path, "JSON config file, flags override it");
    sim->add_option("--preset", preset, "pbch | pdcch_a | pdcch_b");
    sim->add_option("--N", opt_n, "block length (power of two)");
    sim->add_option("--A", opt_a, "message length");
    sim->add_option("--P", opt_p, "CRC length (0 disables the CRC)");
    sim->add_option("--reliability", reliability,
                    "nr | bhattacharyya:<snr_db> | path to sequence file");
    sim->add_option("--decoder", decoder_specs,
                    "decoder as variant:L, repeatable (plain|ck|cr|cs)");
    sim->add_option("--snr", snr_list, "SNR points in dB");
    sim->add_option("--snr-range", snr_range, "start stop step in dB")
        ->expected(3);
    sim->add_option("--snr-kind", snr_kind, "esn0 | ebn0");
    sim->add_option("--max-frames", max_frames, "frame cap per SNR point");
    sim->add_option("--min-errors", min_errors, "frame-error floor per point");
    sim->add_option("--seed", seed, "master RNG seed");
    sim->add_option("--threads", threads, "worker count");
    sim->add_option("--batch", batch, "frames per stop-rule check");
    sim->add_option("--out", outdir, "output directory (default $DCAPOLAR_OUTDIR or .)");
    sim->add_option("--tag", tag, "output file prefix");
    sim->add_flag("--quiet", quiet, "suppress the CSV echo on stdout");

    // inspect
    auto* ins = app.add_subcommand("inspect", "Dump the code layout as JSON");
    std::string ins_preset, ins_reliability = "nr", ins_out;
    int ins_n = 512, ins_a = 32, ins_p = 24;
    ins->add_option("--preset", ins_preset, "pbch | pdcch_a | pdcch_b");
    ins->add_option("--N", ins_n, "block length");
    ins->add_option("--A", ins_a, "message length");
    ins->add_option("--P", ins_p, "CRC length");
    ins->add_option("--reliability", ins_reliability, "reliability source");
    ins->add_option("--out", ins_out, "write JSON here instead of stdout");

    // selftest
    app.add_subcommand("selftest", "Run the built-in oracle suites");

    CLI11_PARSE(app, argc, argv);

    if (!dp::kernels::set_backend(backend)) {
        std::cerr << "backend not available: " << backend << '\n';
        return 1;
    }

    try {
        if (sim->parsed()) {
            if (!config_path.empty()) apply_json_config(config_path, cfg);
            if (!preset.empty()) {
                dp::RunConfig p = dp::preset_run_config(preset);
                cfg.code_name = p.code_name;
                cfg.N = p.N;
                cfg.A = p.A;
                cfg.P = p.P;
            }
            if (opt_n > 0) cfg.N = opt_n;
            if (opt_a >= 0) cfg.A = opt_a;
            if (opt_p >= 0) cfg.P = opt_p;
            if (!reliability.empty()) cfg.reliability = reliability;
            if (!decoder_specs.empty()) cfg.decoders = parse_decoders(decoder_specs);
            if (!snr_list.empty()) cfg.snr_db = snr_list;
            if (!snr_range.empty())
                for (double s = snr_range[0]; s <= snr_range[1] + 1e-9;
                     s += snr_range[2])
                    cfg.snr_db.push_back(s);
            cfg.snr_kind = snr_kind == "ebn0" ? dp::SnrKind::EbN0 : dp::SnrKind::EsN0;
            if (max_frames > 0) cfg.max_frames = max_frames;
            if (min_errors > 0) cfg.min_frame_errors = min_errors;
            if (seed >= 0) cfg.seed = static_cast<uint64_t>(seed);
            if (threads > 0) cfg.threads = threads;
            if (batch > 0) cfg.batch_size = batch;
            if (cfg.decoders.empty())
                cfg.decoders = {{dp::Variant::CK, 8}, {dp::Variant::CR, 8},
                                {dp::Variant::CS, 8}};
            return run_simulate(cfg, outdir, tag, quiet);
        }
        if (ins->parsed()) {
            if (!ins_preset.empty()) {
                dp::RunConfig p = dp::preset_run_config(ins_preset);
                ins_n = p.N;
                ins_a = p.A;
                ins_p = p.P;
            }
            dp::ReliabilitySequence rel = dp::resolve_reliability(ins_reliability);
            dp::CodeConfig code =
                ins_p > 0
                    ? dp::build_code_config(ins_n, ins_a, ins_p,
                                            dp::CrcSpec::nr_crc24(), rel)
                    : dp::build_code_config(ins_n, ins_a, rel);
            json j = code_config_json(code);
            if (ins_out.empty()) {
                std::cout << j.dump(2) << '\n';
            } else {
                std::ofstream os(ins_out);
                if (!os) { std::cerr << "cannot write " << ins_out << '\n'; return 1; }
                os << j.dump(2) << '\n';
            }
            return 0;
        }
        return run_selftest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

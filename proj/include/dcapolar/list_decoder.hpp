// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "dcapolar/polar.hpp"

namespace dcapolar {

enum class Variant { PLAIN, CK, CR, CS };

enum class Selection { BEST_PM, BEST_PM_VALID_CRC };

const char* variant_name(Variant v);
std::optional<Variant> variant_from_name(std::string_view name);

struct DecoderConfig {
    int L = 1;  // power of two
    Variant variant = Variant::PLAIN;
    // defaulted from the variant when not set explicitly
    std::optional<Selection> selection;
    bool collect_survivors = false;  // dump final paths into the outcome
    bool check_invariants = false;   // throw on internal rule violations

    Selection effective_selection() const {
        if (selection) return *selection;
        return variant == Variant::CK ? Selection::BEST_PM_VALID_CRC
                                      : Selection::BEST_PM;
    }
};

enum class DecodeStatus { OK, EARLY_TERMINATED, NO_VALID_PATH };

struct SurvivorInfo {
    BitVec u;
    double pm = 0.0;
    bool crc_all_ok = true;
};

struct DecodeOutcome {
    std::optional<BitVec> message;  // A bits, absent unless status == OK
    DecodeStatus status = DecodeStatus::OK;
    int et_crc_index = 0;  // 1..P in decode order, 0 when not terminated
    double final_pm = 0.0;
    int survivor_count = 0;
    BitVec u_hat;  // selected path's input vector, empty unless OK
    std::vector<SurvivorInfo> survivors;  // when collect_survivors is set
};

// Does the (deinterleaved) stream carried by u_hat satisfy the full CRC?
bool passes_full_crc(const CodeConfig& cfg, std::span<const Bit> u_hat);

// SCL decoder instance; reusable across frames, one instance per thread.
class ListDecoder {
public:
    ListDecoder(const CodeConfig& cfg, DecoderConfig dec);

    DecodeOutcome decode(std::span<const double> channel_llr);

    const CodeConfig& code() const { return *cfg_; }
    const DecoderConfig& config() const { return dec_; }

private:
    struct Path {
        detail::ScMemory mem;
        BitVec u;
        double pm = 0.0;
        CrcTracker tracker;
        uint64_t create_idx = 0;
        bool crc_all_ok = true;   // cumulative over all checks so far
        bool crc_ok_now = true;   // most recent check only

        explicit Path(int block_len)
            : mem(block_len), u(static_cast<size_t>(block_len), 0) {}
    };

    struct Candidate {
        int parent;   // position in order_buf_
        Bit bit;
        double pm;
        uint64_t parent_create_idx;
    };

    void extend_and_prune(int bit);
    int select_index() const;

    const CodeConfig* cfg_;
    DecoderConfig dec_;
    std::vector<Path> paths_;       // 2L slots, reused across frames
    int live_ = 0;
    uint64_t next_create_idx_ = 0;
    BitVec scratch_;
    std::vector<Candidate> cands_;
    // per-decode bookkeeping, kept as members to avoid reallocation
    std::vector<int> order_buf_;       // live slot ids in list order
    std::vector<int> free_buf_;        // unused slot ids
    std::vector<int> new_order_buf_;
    std::vector<int> per_parent_buf_;
    std::vector<int> clone_slot_buf_;
    std::vector<Bit> first_done_buf_;
};

// Convenience wrapper.
DecodeOutcome scl_decode(const CodeConfig& cfg, const DecoderConfig& dec,
                         std::span<const double> channel_llr);

}  // namespace dcapolar

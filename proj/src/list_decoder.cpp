// SPDX-License-Identifier: Apache-2.0
#include "dcapolar/list_decoder.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace dcapolar {

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::PLAIN: return "plain";
        case Variant::CK: return "ck";
        case Variant::CR: return "cr";
        case Variant::CS: return "cs";
    }
    return "?";
}

std::optional<Variant> variant_from_name(std::string_view name) {
    if (name == "plain") return Variant::PLAIN;
    if (name == "ck") return Variant::CK;
    if (name == "cr") return Variant::CR;
    if (name == "cs") return Variant::CS;
    return std::nullopt;
}

ListDecoder::ListDecoder(const CodeConfig& cfg, DecoderConfig dec)
    : cfg_(&cfg), dec_(dec), scratch_(static_cast<size_t>(2 * cfg.N)) {
    if (dec_.L < 1 || (dec_.L & (dec_.L - 1)) != 0)
        throw std::invalid_argument("list size must be a power of two");
    if ((dec_.variant == Variant::CR || dec_.variant == Variant::CS ||
         dec_.variant == Variant::CK) &&
        cfg.q_set.empty())
        throw std::invalid_argument("CK/CR/CS require a CRC (Q set)");
    paths_.reserve(static_cast<size_t>(2 * dec_.L));
    for (int i = 0; i < 2 * dec_.L; ++i) paths_.emplace_back(cfg.N);
    cands_.reserve(static_cast<size_t>(2 * dec_.L));
}

namespace {

struct SlotSet {
    // live slot ids in list order, plus a free stack over paths_
    std::vector<int> order;
    std::vector<int> free_slots;
};

}  // namespace

// Duplicate every live path on an unconstrained bit, apply the path
// metric and keep the min(2V, L) best.
void ListDecoder::extend_and_prune(int bit) {
    cands_.clear();
    for (int p = 0; p < live_; ++p) {
        Path& path = paths_[static_cast<size_t>(order_buf_[static_cast<size_t>(p)])];
        double a0 = path.mem.leaf_llr();
        cands_.push_back({p, 0, detail::pm_update(path.pm, a0, 0),
                          path.create_idx});
        cands_.push_back({p, 1, detail::pm_update(path.pm, a0, 1),
                          path.create_idx});
    }
    std::sort(cands_.begin(), cands_.end(),
              [](const Candidate& x, const Candidate& y) {
                  if (x.pm != y.pm) return x.pm < y.pm;
                  if (x.parent_create_idx != y.parent_create_idx)
                      return x.parent_create_idx < y.parent_create_idx;
                  return x.bit < y.bit;
              });
    int keep = std::min(2 * live_, dec_.L);
    cands_.resize(static_cast<size_t>(keep));

    // materialize: one child reuses the parent slot, a second child
    // clones it; clones happen before any slot is modified
    std::vector<int>& survivors_per_parent = per_parent_buf_;
    survivors_per_parent.assign(static_cast<size_t>(live_), 0);
    for (const Candidate& c : cands_)
        ++survivors_per_parent[static_cast<size_t>(c.parent)];

    std::vector<int>& clone_slot = clone_slot_buf_;
    clone_slot.assign(static_cast<size_t>(live_), -1);
    for (int p = 0; p < live_; ++p) {
        if (survivors_per_parent[static_cast<size_t>(p)] == 2) {
            int src = order_buf_[static_cast<size_t>(p)];
            int dst = free_buf_.back();
            free_buf_.pop_back();
            Path& to = paths_[static_cast<size_t>(dst)];
            const Path& from = paths_[static_cast<size_t>(src)];
            to.mem.alpha = from.mem.alpha;
            to.mem.beta = from.mem.beta;
            to.u = from.u;
            to.tracker = from.tracker;
            to.crc_all_ok = from.crc_all_ok;
            clone_slot[static_cast<size_t>(p)] = dst;
        } else if (survivors_per_parent[static_cast<size_t>(p)] == 0) {
            free_buf_.push_back(order_buf_[static_cast<size_t>(p)]);
        }
    }

    std::vector<int>& new_order = new_order_buf_;
    new_order.clear();
    std::vector<Bit>& first_done = first_done_buf_;
    first_done.assign(static_cast<size_t>(live_), 0);
    const int src_idx = cfg_->source_index[static_cast<size_t>(bit)];
    for (const Candidate& c : cands_) {
        int slot;
        if (!first_done[static_cast<size_t>(c.parent)]) {
            slot = order_buf_[static_cast<size_t>(c.parent)];
            first_done[static_cast<size_t>(c.parent)] = 1;
        } else {
            slot = clone_slot[static_cast<size_t>(c.parent)];
        }
        Path& path = paths_[static_cast<size_t>(slot)];
        path.pm = c.pm;
        path.create_idx = next_create_idx_++;
        path.u[static_cast<size_t>(bit)] = c.bit;
        if (cfg_->P > 0 && src_idx >= 0 && src_idx < cfg_->A)
            path.tracker.absorb(src_idx, c.bit);
        detail::update_psums(cfg_->n, path.mem, bit, c.bit, scratch_.data());
        new_order.push_back(slot);
    }
    order_buf_.swap(new_order);
    live_ = keep;
}

int ListDecoder::select_index() const {
    const bool need_valid =
        dec_.effective_selection() == Selection::BEST_PM_VALID_CRC &&
        cfg_->P > 0;
    int best = -1;
    double best_pm = std::numeric_limits<double>::infinity();
    uint64_t best_idx = 0;
    for (int p = 0; p < live_; ++p) {
        const Path& path = paths_[static_cast<size_t>(order_buf_[static_cast<size_t>(p)])];
        if (need_valid && !path.crc_all_ok) continue;
        if (best < 0 || path.pm < best_pm ||
            (path.pm == best_pm && path.create_idx < best_idx)) {
            best = order_buf_[static_cast<size_t>(p)];
            best_pm = path.pm;
            best_idx = path.create_idx;
        }
    }
    return best;
}

DecodeOutcome ListDecoder::decode(std::span<const double> channel_llr) {
    if (static_cast<int>(channel_llr.size()) != cfg_->N)
        throw std::invalid_argument("LLR length != N");

    // reset
    order_buf_.clear();
    order_buf_.push_back(0);
    free_buf_.clear();
    for (int i = 2 * dec_.L - 1; i >= 1; --i) free_buf_.push_back(i);
    live_ = 1;
    next_create_idx_ = 0;
    {
        Path& root = paths_[0];
        root.pm = 0.0;
        root.create_idx = next_create_idx_++;
        root.crc_all_ok = true;
        root.tracker = cfg_->P > 0 ? CrcTracker(cfg_->crc_matrix) : CrcTracker();
    }

    DecodeOutcome out;
    for (int i = 0; i < cfg_->N; ++i) {
        for (int p = 0; p < live_; ++p)
            detail::update_llrs(cfg_->n, channel_llr,
                                paths_[static_cast<size_t>(order_buf_[static_cast<size_t>(p)])].mem, i);

        if (cfg_->is_frozen(i)) {
            for (int p = 0; p < live_; ++p) {
                Path& path = paths_[static_cast<size_t>(order_buf_[static_cast<size_t>(p)])];
                path.pm = detail::pm_update(path.pm, path.mem.leaf_llr(), 0);
                path.u[static_cast<size_t>(i)] = 0;
                detail::update_psums(cfg_->n, path.mem, i, 0, scratch_.data());
            }
            continue;
        }

        const int src = cfg_->source_index[static_cast<size_t>(i)];
        const bool crc_bit = cfg_->P > 0 && src >= cfg_->A;
        const int crc_idx = crc_bit ? src - cfg_->A : -1;

        if (crc_bit && dec_.variant == Variant::CS) {
            // dynamic frozen bit: force the tracker parity, never duplicate
            for (int p = 0; p < live_; ++p) {
                Path& path = paths_[static_cast<size_t>(order_buf_[static_cast<size_t>(p)])];
                Bit forced = path.tracker.expected(crc_idx);
                path.pm = detail::pm_update(path.pm, path.mem.leaf_llr(), forced);
                path.u[static_cast<size_t>(i)] = forced;
                detail::update_psums(cfg_->n, path.mem, i, forced,
                                     scratch_.data());
            }
            continue;
        }

        extend_and_prune(i);

        if (crc_bit && dec_.variant != Variant::PLAIN) {
            int valid = 0;
            for (int p = 0; p < live_; ++p) {
                Path& path = paths_[static_cast<size_t>(order_buf_[static_cast<size_t>(p)])];
                bool ok = path.u[static_cast<size_t>(i)] ==
                          path.tracker.expected(crc_idx);
                path.crc_ok_now = ok;
                path.crc_all_ok = path.crc_all_ok && ok;
                if (ok) ++valid;
            }
            if (valid == 0) {
                out.status = DecodeStatus::EARLY_TERMINATED;
                out.et_crc_index = cfg_->crc_order[static_cast<size_t>(i)];
                double best = std::numeric_limits<double>::infinity();
                for (int p = 0; p < live_; ++p)
                    best = std::min(
                        best,
                        paths_[static_cast<size_t>(order_buf_[static_cast<size_t>(p)])].pm);
                out.final_pm = best;
                out.survivor_count = 0;
                return out;
            }
            if (dec_.variant == Variant::CR) {
                std::vector<int>& kept = new_order_buf_;
                kept.clear();
                for (int p = 0; p < live_; ++p) {
                    int slot = order_buf_[static_cast<size_t>(p)];
                    if (paths_[static_cast<size_t>(slot)].crc_ok_now)
                        kept.push_back(slot);
                    else
                        free_buf_.push_back(slot);
                }
                order_buf_.swap(kept);
                live_ = valid;
                if (dec_.check_invariants) {
                    if (live_ > dec_.L)
                        throw std::logic_error("CR: live count exceeds L");
                    for (int p = 0; p < live_; ++p)
                        if (!paths_[static_cast<size_t>(order_buf_[static_cast<size_t>(p)])].crc_ok_now)
                            throw std::logic_error("CR: invalid survivor");
                }
            }
        }
    }

    out.survivor_count = live_;
    if (dec_.collect_survivors) {
        for (int p = 0; p < live_; ++p) {
            const Path& path =
                paths_[static_cast<size_t>(order_buf_[static_cast<size_t>(p)])];
            out.survivors.push_back({path.u, path.pm, path.crc_all_ok});
        }
    }
    if (dec_.check_invariants && dec_.variant == Variant::CS) {
        for (int p = 0; p < live_; ++p) {
            const Path& path =
                paths_[static_cast<size_t>(order_buf_[static_cast<size_t>(p)])];
            if (!passes_full_crc(*cfg_, path.u))
                throw std::logic_error("CS: survivor fails full CRC");
        }
    }
    int chosen = select_index();
    if (chosen < 0) {
        out.status = DecodeStatus::NO_VALID_PATH;
        double best = std::numeric_limits<double>::infinity();
        for (int p = 0; p < live_; ++p)
            best = std::min(best,
                            paths_[static_cast<size_t>(order_buf_[static_cast<size_t>(p)])].pm);
        out.final_pm = best;
        return out;
    }
    const Path& win = paths_[static_cast<size_t>(chosen)];
    out.status = DecodeStatus::OK;
    out.final_pm = win.pm;
    out.u_hat = win.u;
    out.message = extract_message(*cfg_, win.u);
    return out;
}

bool passes_full_crc(const CodeConfig& cfg, std::span<const Bit> u_hat) {
    if (cfg.P == 0) return true;
    BitVec c(static_cast<size_t>(cfg.K), 0);
    for (int j = 0; j < cfg.K; ++j) {
        int channel = cfg.info_set[static_cast<size_t>(j)];
        c[static_cast<size_t>(cfg.interleaver.pi[static_cast<size_t>(j)])] =
            u_hat[static_cast<size_t>(channel)];
    }
    BitVec expected = crc_encode(
        std::span<const Bit>(c.data(), static_cast<size_t>(cfg.A)),
        cfg.crc_matrix);
    return std::equal(c.begin(), c.end(), expected.begin());
}

DecodeOutcome scl_decode(const CodeConfig& cfg, const DecoderConfig& dec,
                         std::span<const double> channel_llr) {
    ListDecoder decoder(cfg, dec);
    return decoder.decode(channel_llr);
}

}  // namespace dcapolar

// SPDX-License-Identifier: Apache-2.0
#include "dcapolar/kernels.hpp"

namespace dcapolar::kernels {

namespace {

const Ops* pick_default() {
#if defined(__x86_64__) || defined(_M_X64)
    if (const Ops* o = avx2_ops()) return o;
#endif
#if defined(__aarch64__)
    if (const Ops* o = neon_ops()) return o;
#endif
    return &scalar_ops();
}

const Ops*& active_slot() {
    static const Ops* active = pick_default();
    return active;
}

}  // namespace

const Ops& active_ops() { return *active_slot(); }

bool set_backend(std::string_view name) {
    if (name == "auto") {
        active_slot() = pick_default();
        return true;
    }
    if (name == "scalar") {
        active_slot() = &scalar_ops();
        return true;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2") {
        if (const Ops* o = avx2_ops()) {
            active_slot() = o;
            return true;
        }
        return false;
    }
#endif
#if defined(__aarch64__)
    if (name == "neon") {
        if (const Ops* o = neon_ops()) {
            active_slot() = o;
            return true;
        }
        return false;
    }
#endif
    return false;
}

}  // namespace dcapolar::kernels

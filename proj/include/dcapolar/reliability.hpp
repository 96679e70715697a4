// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

namespace dcapolar {

// Channel reliability order, least reliable first.
struct ReliabilitySequence {
    std::vector<int> order;  // ascending reliability
    std::string source;

    // The K most reliable channel indices below N, sorted ascending.
    std::vector<int> most_reliable(int block_len, int count) const;
};

// 5G universal sequence, length 1024 (covers N up to 1024).
ReliabilitySequence nr_universal_sequence();

// Bhattacharyya-parameter construction for arbitrary N and design SNR,
// for non-5G experimentation.
ReliabilitySequence bhattacharyya_sequence(int block_len, double design_snr_db);

// Plain-text file: '#' comments, optional "version:" line, a required
// "order: most_reliable_last|most_reliable_first" line, then integers.
ReliabilitySequence load_reliability_file(const std::string& path);

}  // namespace dcapolar

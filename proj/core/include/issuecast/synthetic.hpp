#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "issuecast/ingest.hpp"

namespace issuecast::synthetic {

/// Issue counts follow a Poisson draw around a mean-reverting AR(1) level;
/// bugs are round(bug_ratio * issues) plus integer noise in
/// [-noise_amplitude, noise_amplitude], enhancements likewise with their own
/// ratio, both clamped so bugs + enhancements <= issues.
struct CorpusConfig {
    std::size_t weeks = 104;
    double base_level = 20.0;
    double ar_coefficient = 0.7;
    double innovation_sd = 4.0;
    double bug_ratio = 0.5;
    double enhancement_ratio = 0.3;
    int noise_amplitude = 1;
    /// When false, bugs are drawn independently of issues around the same mean.
    bool coupled = true;
    std::string start_date = "2019-01-07";
};

ingest::ProjectBundle make_project(const std::string& project_id, std::uint64_t seed,
                                   const CorpusConfig& config = {});

/// `count` projects named `<prefix>-NNN`, seeded from `seed`.
std::vector<ingest::ProjectBundle> make_corpus(std::size_t count, std::uint64_t seed,
                                               const CorpusConfig& config = {},
                                               const std::string& prefix = "synthetic");

}  // namespace issuecast::synthetic

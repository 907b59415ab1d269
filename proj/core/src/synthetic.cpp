#include "issuecast/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace issuecast::synthetic {

ingest::ProjectBundle make_project(const std::string& project_id, std::uint64_t seed, const CorpusConfig& config) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> innovation(0.0, config.innovation_sd);
    std::uniform_int_distribution<int> noise(-config.noise_amplitude, config.noise_amplitude);

    const std::size_t n = config.weeks;
    std::vector<std::int64_t> issues(n), bugs(n), enhancements(n);
    double deviation = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        deviation = config.ar_coefficient * deviation + innovation(rng);
        const double rate = std::max(config.base_level + deviation, 0.5);
        issues[t] = std::poisson_distribution<std::int64_t>(rate)(rng);

        const double bug_centre = config.coupled ? config.bug_ratio * static_cast<double>(issues[t])
                                                 : config.bug_ratio * std::max(config.base_level + innovation(rng), 0.0);
        const auto b = static_cast<std::int64_t>(std::llround(bug_centre)) + noise(rng);
        bugs[t] = std::clamp<std::int64_t>(b, 0, issues[t]);

        const auto e = static_cast<std::int64_t>(std::llround(config.enhancement_ratio * static_cast<double>(issues[t]))) +
                       noise(rng);
        enhancements[t] = std::clamp<std::int64_t>(e, 0, issues[t] - bugs[t]);
    }

    filter::ProjectMeta meta;
    meta.duration_weeks = static_cast<std::int64_t>(n);
    for (auto v : issues) meta.issue_count += v;
    meta.pull_request_count = meta.issue_count / 2;
    meta.commit_count = 10 * meta.issue_count;
    meta.contributor_count = 8 + static_cast<std::int64_t>(seed % 17);
    meta.release_count = 1 + static_cast<std::int64_t>(n / 26);
    return ingest::make_bundle(project_id, meta, parse_date(config.start_date), std::move(issues), std::move(bugs),
                               std::move(enhancements));
}

std::vector<ingest::ProjectBundle> make_corpus(std::size_t count, std::uint64_t seed, const CorpusConfig& config,
                                               const std::string& prefix) {
    std::vector<ingest::ProjectBundle> out;
    out.reserve(count);
    std::seed_seq seq{seed};
    std::vector<std::uint64_t> seeds(count);
    {
        std::vector<std::uint32_t> raw(count * 2);
        seq.generate(raw.begin(), raw.end());
        for (std::size_t i = 0; i < count; ++i) seeds[i] = (std::uint64_t{raw[2 * i]} << 32) | raw[2 * i + 1];
    }
    for (std::size_t i = 0; i < count; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "-%03zu", i);
        out.push_back(make_project(prefix + name, seeds[i], config));
    }
    return out;
}

}  // namespace issuecast::synthetic

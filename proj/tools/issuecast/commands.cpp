#include "issuecast/commands.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "issuecast/cache.hpp"
#include "issuecast/csv.hpp"
#include "issuecast/error.hpp"
#include "issuecast/filter.hpp"
#include "issuecast/github_client.hpp"
#include "issuecast/parallel.hpp"
#include "issuecast/synthetic.hpp"

namespace issuecast::cli {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

Failure failure_from(const std::string& project, const std::exception& e) {
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        return {project, std::string(to_string(err->code())), err->what()};
    }
    return {project, "Unexpected", e.what()};
}

struct Corpus {
    std::vector<ingest::ProjectBundle> bundles;
    std::vector<Failure> failures;
};

Corpus load_corpus(const std::vector<std::string>& dirs) {
    Corpus out;
    for (const auto& dir : dirs) {
        for (const auto& file : ingest::list_cache_files(dir)) {
            try {
                out.bundles.push_back(ingest::load_cache(file));
            } catch (const std::exception& e) {
                out.failures.push_back(failure_from(file.string(), e));
            }
        }
    }
    std::stable_sort(out.bundles.begin(), out.bundles.end(),
                     [](const auto& a, const auto& b) { return a.project_id < b.project_id; });
    return out;
}

std::string mode_name(arima::TransferMode mode) {
    return mode == arima::TransferMode::Coefficients ? "coefficients" : "direct";
}

ordered_json config_json(const RunConfig& c) {
    return {
        {"train_weeks", c.window.train_weeks},
        {"test_weeks", c.window.test_weeks},
        {"step_weeks", c.window.step_weeks},
        {"mode", mode_name(c.mode)},
        {"significance", stats::kSignificanceLevel},
    };
}

// summary.json is shared by several commands; each owns one top-level key.
void merge_summary(const fs::path& out_dir, const std::string& key, ordered_json value, CommandResult& result) {
    const auto path = out_dir / "summary.json";
    ordered_json doc = ordered_json::object();
    if (std::ifstream in(path); in) {
        try {
            in >> doc;
        } catch (const nlohmann::json::exception&) {
            doc = ordered_json::object();
        }
        if (!doc.is_object()) doc = ordered_json::object();
    }
    doc[key] = std::move(value);
    write_file(path, doc.dump(2) + "\n");
    result.written.push_back(path);
}

void finish(CommandResult& result, const std::string& command, const fs::path& out_dir) {
    if (!result.failures.empty()) {
        const auto path = out_dir / "failures.json";
        write_file(path, failures_json(command, result.failures) + "\n");
        result.written.push_back(path);
        result.exit_code = 2;
    }
}

std::string plan_header(const std::string& command, const RunConfig& c) {
    std::ostringstream os;
    os << "command: " << command << "\n";
    for (const auto& in : c.inputs) os << "input: " << in << "\n";
    os << "out: " << c.out_dir.string() << "\n";
    os << "jobs: " << c.resolved_jobs() << "\n";
    return os.str();
}

ordered_json result_json(const eval::RollingEvalResult& r) {
    return {
        {"attribute", ts::to_string(r.target_attribute)},
        {"source", eval::to_string(r.model_source)},
        {"steps", r.steps},
        {"mean_mae", r.mean_mae},
        {"mae_variance", r.mae_variance},
        {"fallback_windows", r.fallback_windows},
        {"clamped_values", r.clamped_values},
        {"series_too_short", r.series_too_short},
    };
}

}  // namespace

void RunConfig::validate() const {
    window.validate();
    if (out_dir.empty()) {
        throw Error(Errc::InvalidArgument, "--out must name a directory");
    }
}

unsigned RunConfig::resolved_jobs() const {
    return jobs == 0 ? default_jobs() : jobs;
}

std::string failures_json(const std::string& command, const std::vector<Failure>& failures) {
    ordered_json doc{{"command", command}, {"failures", ordered_json::array()}};
    for (const auto& f : failures) {
        doc["failures"].push_back({{"project", f.project}, {"code", f.code}, {"message", f.message}});
    }
    return doc.dump();
}

// ---------------------------------------------------------------------------

CommandResult cmd_fetch(const RunConfig& config) {
    config.validate();
    CommandResult result;
    const auto until = config.until.value_or(std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now()));
    {
        std::ostringstream os;
        os << plan_header("fetch", config) << "base_url: " << config.base_url << "\n"
           << "until: " << format_date(until) << "\n";
        if (config.since) os << "since: " << format_date(*config.since) << "\n";
        for (const auto& repo : config.inputs) {
            os << "write: " << (config.out_dir / (ingest::project_file_stem(repo) + ".csv")).string() << "\n";
        }
        result.plan = os.str();
    }
    if (config.dry_run) return result;

    const auto patterns = config.patterns ? ingest::LabelPatterns::load(*config.patterns) : ingest::LabelPatterns{};
    fs::create_directories(config.out_dir);

    std::vector<std::optional<Failure>> failures(config.inputs.size());
    std::vector<fs::path> written(config.inputs.size());
    parallel_for(config.inputs.size(), config.resolved_jobs(), [&](std::size_t i) {
        const auto& repo = config.inputs[i];
        try {
            ingest::ClientConfig cc;
            cc.base_url = config.base_url;
            cc.token = config.token.empty() ? ingest::token_from_environment() : config.token;
            ingest::GitHubClient client(cc);
            const auto records = client.fetch_issues(repo, config.since, patterns);

            Date start = until;
            for (const auto& r : records) {
                if (!r.is_pull_request) start = std::min(start, std::chrono::floor<std::chrono::days>(r.created_at));
            }
            const auto buckets = ingest::bucket_weekly(records, start, until, repo);
            const auto meta = client.fetch_meta(repo, records, static_cast<std::int64_t>(buckets.issues.size()),
                                                config.software_dev);
            ingest::ProjectBundle bundle{repo, meta, buckets.issues, buckets.bugs, buckets.enhancements};
            const auto path = config.out_dir / (ingest::project_file_stem(repo) + ".csv");
            ingest::save_cache(bundle, path);
            written[i] = path;
        } catch (const std::exception& e) {
            failures[i] = failure_from(repo, e);
        }
    });
    for (std::size_t i = 0; i < config.inputs.size(); ++i) {
        if (failures[i]) {
            result.failures.push_back(*failures[i]);
        } else {
            result.written.push_back(written[i]);
        }
    }
    finish(result, "fetch", config.out_dir);
    return result;
}

// ---------------------------------------------------------------------------

CommandResult cmd_filter(const RunConfig& config) {
    config.validate();
    CommandResult result;
    result.plan = plan_header("filter", config) + "write: " + (config.out_dir / "filter_report.csv").string() + "\n" +
                  "write: " + (config.out_dir / "filter_projects.csv").string() + "\n";
    if (config.dry_run) return result;

    std::vector<std::string> corpus_names;
    std::vector<std::array<std::size_t, filter::kAllRules.size() + 1>> discards;
    std::ostringstream projects;
    projects << "corpus,project_id,passed";
    for (auto rule : filter::kAllRules) projects << ',' << filter::to_string(rule);
    projects << '\n';

    for (const auto& dir : config.inputs) {
        const auto corpus = load_corpus({dir});
        result.failures.insert(result.failures.end(), corpus.failures.begin(), corpus.failures.end());
        auto name = fs::path(dir).lexically_normal().filename().string();
        if (name.empty()) name = fs::path(dir).lexically_normal().parent_path().filename().string();
        corpus_names.push_back(name);
        auto& counts = discards.emplace_back();
        counts.fill(0);
        for (const auto& bundle : corpus.bundles) {
            const auto outcome = filter::evaluate_filters(bundle.meta);
            ++counts[filter::first_failed_rule(bundle.meta)];
            projects << name << ',' << bundle.project_id << ',' << (outcome.passed ? "true" : "false");
            for (auto rule : filter::kAllRules) projects << ',' << (outcome.verdict(rule) ? "true" : "false");
            projects << '\n';
        }
    }

    std::ostringstream report;
    report << "rule";
    for (const auto& n : corpus_names) report << ',' << n;
    report << '\n';
    for (std::size_t r = 0; r < filter::kAllRules.size(); ++r) {
        report << filter::to_string(filter::kAllRules[r]);
        for (const auto& c : discards) report << ',' << c[r];
        report << '\n';
    }
    report << "Projects after filtering";
    for (const auto& c : discards) report << ',' << c[filter::kAllRules.size()];
    report << '\n';

    write_file(config.out_dir / "filter_report.csv", report.str());
    write_file(config.out_dir / "filter_projects.csv", projects.str());
    result.written = {config.out_dir / "filter_report.csv", config.out_dir / "filter_projects.csv"};
    finish(result, "filter", config.out_dir);
    return result;
}

// ---------------------------------------------------------------------------

CommandResult cmd_evaluate(const RunConfig& config) {
    config.validate();
    CommandResult result;
    {
        std::ostringstream os;
        os << plan_header("evaluate", config) << "train_weeks: " << config.window.train_weeks << "\n"
           << "test_weeks: " << config.window.test_weeks << "\n"
           << "step_weeks: " << config.window.step_weeks << "\n"
           << "mode: " << mode_name(config.mode) << "\n";
        for (const char* f : {"evaluation.csv", "forecasts.csv", "summary.json"}) {
            os << "write: " << (config.out_dir / f).string() << "\n";
        }
        result.plan = os.str();
    }
    if (config.dry_run) return result;

    const auto corpus = load_corpus(config.inputs);
    result.failures = corpus.failures;
    const auto evaluations = eval::evaluate_projects(corpus.bundles, config.window, config.mode, config.resolved_jobs());

    std::ostringstream steps;
    steps << kEvaluationHeader << '\n';
    std::ostringstream forecasts;
    forecasts << kForecastHeader << '\n';
    ordered_json projects = ordered_json::array();

    std::map<std::string, const ingest::ProjectBundle*> by_id;
    for (const auto& b : corpus.bundles) by_id.emplace(b.project_id, &b);

    for (const auto& pe : evaluations) {
        if (pe.error) {
            result.failures.push_back({pe.project_id, "EvaluationError", *pe.error});
            continue;
        }
        const auto& bundle = *by_id.at(pe.project_id);
        ordered_json entry{{"project_id", pe.project_id}, {"weeks", bundle.weeks()}, {"results", ordered_json::array()}};
        std::vector<const eval::RollingEvalResult*> all;
        for (const auto& r : pe.local) all.push_back(&r);
        for (const auto& r : pe.issue) all.push_back(&r);
        for (const auto* r : all) {
            entry["results"].push_back(result_json(*r));
            if (r->series_too_short) {
                result.failures.push_back({pe.project_id, "SeriesTooShort",
                                           std::string(ts::to_string(r->target_attribute)) + "/" +
                                               std::string(eval::to_string(r->model_source)) +
                                               ": fewer weeks than one train+test window"});
            }
            const auto attr = ts::to_string(r->target_attribute);
            const auto src = eval::to_string(r->model_source);
            const auto actual = bundle.series(r->target_attribute).values();
            for (std::size_t s = 0; s < r->steps; ++s) {
                steps << pe.project_id << ',' << attr << ',' << src << ',' << s << ',' << fmt_real(r->per_step_mae[s])
                      << '\n';
                const auto& fc = r->forecasts[s];
                for (std::size_t h = 0; h < fc.values.size(); ++h) {
                    const auto week = fc.origin_index + 1 + h;
                    forecasts << pe.project_id << ',' << attr << ',' << src << ',' << s << ',' << fc.origin_index << ','
                              << h + 1 << ',' << week << ',' << actual[week] << ',' << fmt_real(fc.values[h]) << '\n';
                }
            }
        }
        projects.push_back(std::move(entry));
    }

    fs::create_directories(config.out_dir);
    write_file(config.out_dir / "evaluation.csv", steps.str());
    write_file(config.out_dir / "forecasts.csv", forecasts.str());
    result.written = {config.out_dir / "evaluation.csv", config.out_dir / "forecasts.csv"};
    merge_summary(config.out_dir, "config", config_json(config), result);
    merge_summary(config.out_dir, "evaluation", std::move(projects), result);
    finish(result, "evaluate", config.out_dir);
    return result;
}

// ---------------------------------------------------------------------------

CommandResult cmd_correlate(const RunConfig& config) {
    config.validate();
    CommandResult result;
    result.plan = plan_header("correlate", config) + "write: " + (config.out_dir / "correlations.csv").string() +
                  "\nwrite: " + (config.out_dir / "summary.json").string() + "\n";
    if (config.dry_run) return result;

    const auto corpus = load_corpus(config.inputs);
    result.failures = corpus.failures;
    std::vector<eval::CorrelationReport> reports(corpus.bundles.size());
    std::vector<std::optional<Failure>> failures(corpus.bundles.size());
    parallel_for(corpus.bundles.size(), config.resolved_jobs(), [&](std::size_t i) {
        try {
            reports[i] = eval::run_rq2(corpus.bundles[i]);
        } catch (const std::exception& e) {
            failures[i] = failure_from(corpus.bundles[i].project_id, e);
        }
    });

    std::ostringstream csv;
    csv << kCorrelationHeader << '\n';
    ordered_json block = ordered_json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (failures[i]) {
            result.failures.push_back(*failures[i]);
            continue;
        }
        const auto& r = reports[i];
        ordered_json entry{{"project_id", r.project_id}};
        auto emit = [&](const char* pair, const std::optional<double>& rho, stats::CorrelationStrength s) {
            csv << r.project_id << ',' << pair << ',' << (rho ? fmt_real(*rho) : std::string("NA")) << ','
                << stats::to_string(s) << '\n';
            entry[pair] = {{"rho", rho ? ordered_json(*rho) : ordered_json(nullptr)}, {"strength", stats::to_string(s)}};
        };
        emit("issues_bugs", r.rho_issues_bugs, r.strength_issues_bugs);
        emit("issues_enhancements", r.rho_issues_enhancements, r.strength_issues_enhancements);
        emit("bugs_enhancements", r.rho_bugs_enhancements, r.strength_bugs_enhancements);
        block.push_back(std::move(entry));
    }
    write_file(config.out_dir / "correlations.csv", csv.str());
    result.written.push_back(config.out_dir / "correlations.csv");
    merge_summary(config.out_dir, "correlations", std::move(block), result);
    finish(result, "correlate", config.out_dir);
    return result;
}

// ---------------------------------------------------------------------------

CommandResult cmd_compare(const RunConfig& config) {
    config.validate();
    CommandResult result;
    result.plan = plan_header("compare", config) + "write: " + (config.out_dir / "comparison.csv").string() +
                  "\nwrite: " + (config.out_dir / "summary.json").string() + "\n";
    if (config.dry_run) return result;

    // (project, attribute) -> traces
    struct Traces {
        std::vector<double> issue, local;
    };
    std::map<std::pair<std::string, std::string>, Traces> traces;
    std::map<std::string, Traces> pooled;
    for (const auto& dir : config.inputs) {
        const auto table = read_csv(fs::path(dir) / "evaluation.csv");
        const auto c_project = table.column("project_id");
        const auto c_attr = table.column("attribute");
        const auto c_source = table.column("source");
        const auto c_mae = table.column("mae");
        for (const auto& row : table.rows) {
            if (row[c_attr] == "issues") continue;
            const double v = std::stod(row[c_mae]);
            auto& t = traces[{row[c_project], row[c_attr]}];
            auto& p = pooled[row[c_attr]];
            if (row[c_source] == "ISSUE") {
                t.issue.push_back(v);
                p.issue.push_back(v);
            } else if (row[c_source] == "LOCAL") {
                t.local.push_back(v);
                p.local.push_back(v);
            } else {
                throw Error(Errc::FormatError, "unknown model source '" + row[c_source] + "'");
            }
        }
    }

    std::ostringstream csv;
    csv << kComparisonHeader << '\n';
    ordered_json block = ordered_json::array();
    auto emit = [&](const std::string& scope, const std::string& attr, const Traces& t) {
        try {
            const auto outcome = eval::run_rq4(t.issue, t.local);
            const auto& w = outcome.welch;
            csv << scope << ',' << attr << ',' << w.n_a << ',' << w.n_b << ',' << fmt_real(w.mean_a) << ','
                << fmt_real(w.mean_b) << ',' << fmt_real(w.t_statistic) << ',' << fmt_real(w.degrees_of_freedom) << ','
                << fmt_real(w.p_value) << ',' << (outcome.hypothesis_rejected ? "true" : "false") << '\n';
            block.push_back({{"scope", scope},
                             {"attribute", attr},
                             {"n_issue", w.n_a},
                             {"n_local", w.n_b},
                             {"mean_issue", w.mean_a},
                             {"mean_local", w.mean_b},
                             {"t_statistic", w.t_statistic},
                             {"degrees_of_freedom", w.degrees_of_freedom},
                             {"p_value", w.p_value},
                             {"hypothesis_rejected", outcome.hypothesis_rejected},
                             {"both_zero_variance", w.both_zero_variance},
                             {"decision", outcome.decision}});
        } catch (const std::exception& e) {
            result.failures.push_back(failure_from(scope + "/" + attr, e));
        }
    };
    for (const auto& [key, t] : traces) emit(key.first, key.second, t);
    for (const auto& [attr, t] : pooled) emit("ALL", attr, t);

    write_file(config.out_dir / "comparison.csv", csv.str());
    result.written.push_back(config.out_dir / "comparison.csv");
    merge_summary(config.out_dir, "comparisons", std::move(block), result);
    finish(result, "compare", config.out_dir);
    return result;
}

// ---------------------------------------------------------------------------

CommandResult cmd_synth(const RunConfig& config, std::size_t projects, std::uint64_t seed, std::size_t weeks) {
    config.validate();
    CommandResult result;
    result.plan = plan_header("synth", config) + "projects: " + std::to_string(projects) +
                  "\nseed: " + std::to_string(seed) + "\nweeks: " + std::to_string(weeks) + "\n";
    if (config.dry_run) return result;
    synthetic::CorpusConfig cc;
    cc.weeks = weeks;
    fs::create_directories(config.out_dir);
    for (const auto& bundle : synthetic::make_corpus(projects, seed, cc)) {
        const auto path = config.out_dir / (ingest::project_file_stem(bundle.project_id) + ".csv");
        ingest::save_cache(bundle, path);
        result.written.push_back(path);
    }
    return result;
}

}  // namespace issuecast::cli

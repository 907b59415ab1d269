#include <iostream>

#include <CLI11.hpp>

#include "issuecast/commands.hpp"
#include "issuecast/error.hpp"

using namespace issuecast;

namespace {

void add_common(CLI::App* cmd, cli::RunConfig& c, bool windowed) {
    cmd->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--jobs", c.jobs, "Parallel projects (0 = all cores)")->capture_default_str();
    cmd->add_flag("--dry-run", c.dry_run, "Print the resolved plan and exit");
    if (!windowed) return;
    cmd->add_option("--train-weeks", c.window.train_weeks, "Training window length")->capture_default_str();
    cmd->add_option("--test-weeks", c.window.test_weeks, "Forecast horizon")->capture_default_str();
    cmd->add_option("--step-weeks", c.window.step_weeks, "Window advance")->capture_default_str();
    cmd->add_option("--mode", c.mode, "Transfer mode")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, arima::TransferMode>{{"coefficients", arima::TransferMode::Coefficients},
                                                       {"direct", arima::TransferMode::Direct}}))
        ->default_str("coefficients");
}

Date date_arg(const std::string& s) { return parse_date(s); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weekly issue, bug and enhancement forecasting for software repositories"};
    app.require_subcommand(1);

    cli::RunConfig config;
    std::string since, until;
    std::size_t synth_projects = 50;
    std::uint64_t synth_seed = 2024;
    std::size_t synth_weeks = 104;
    std::string patterns;

    auto* fetch = app.add_subcommand("fetch", "Mine repositories into cache files");
    fetch->add_option("repos", config.inputs, "owner/name identifiers")->required();
    fetch->add_option("--patterns", patterns, "Label pattern file (JSON)")->check(CLI::ExistingFile);
    fetch->add_option("--since", since, "Earliest creation date (YYYY-MM-DD)");
    fetch->add_option("--until", until, "Last day bucketed (YYYY-MM-DD, default today)");
    fetch->add_option("--base-url", config.base_url, "API root")->capture_default_str();
    fetch->add_option("--token", config.token, "API token (default: $GITHUB_TOKEN)");
    fetch->add_flag("!--not-software", config.software_dev, "Mark projects as not software development");
    add_common(fetch, config, false);

    auto* filt = app.add_subcommand("filter", "Apply the project selection rules");
    filt->add_option("cache_dirs", config.inputs, "One cache directory per corpus")->required();
    add_common(filt, config, false);

    auto* evaluate = app.add_subcommand("evaluate", "Rolling-window LOCAL and ISSUE evaluation");
    evaluate->add_option("cache_dirs", config.inputs, "Cache directories")->required();
    evaluate->add_option("--patterns", patterns, "Label pattern file (unused for cached data)")
        ->check(CLI::ExistingFile);
    add_common(evaluate, config, true);

    auto* correlate = app.add_subcommand("correlate", "Spearman correlation between attributes");
    correlate->add_option("cache_dirs", config.inputs, "Cache directories")->required();
    add_common(correlate, config, false);

    auto* compare = app.add_subcommand("compare", "Welch comparison of ISSUE and LOCAL errors");
    compare->add_option("eval_dirs", config.inputs, "Directories holding evaluation.csv")->required();
    add_common(compare, config, false);

    auto* report = app.add_subcommand("report", "Markdown summary and SVG charts");
    report->add_option("output_dirs", config.inputs, "Directories holding command outputs")->required();
    add_common(report, config, false);

    auto* synth = app.add_subcommand("synth", "Write a synthetic corpus of cache files");
    synth->add_option("--projects", synth_projects)->capture_default_str();
    synth->add_option("--seed", synth_seed)->capture_default_str();
    synth->add_option("--weeks", synth_weeks)->capture_default_str();
    add_common(synth, config, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!since.empty()) config.since = date_arg(since);
        if (!until.empty()) config.until = date_arg(until);
        if (!patterns.empty()) config.patterns = patterns;

        cli::CommandResult result;
        std::string name;
        if (fetch->parsed()) {
            name = "fetch", result = cli::cmd_fetch(config);
        } else if (filt->parsed()) {
            name = "filter", result = cli::cmd_filter(config);
        } else if (evaluate->parsed()) {
            name = "evaluate", result = cli::cmd_evaluate(config);
        } else if (correlate->parsed()) {
            name = "correlate", result = cli::cmd_correlate(config);
        } else if (compare->parsed()) {
            name = "compare", result = cli::cmd_compare(config);
        } else if (report->parsed()) {
            name = "report", result = cli::cmd_report(config);
        } else {
            name = "synth", result = cli::cmd_synth(config, synth_projects, synth_seed, synth_weeks);
        }

        if (config.dry_run) {
            std::cout << result.plan;
            return 0;
        }
        for (const auto& p : result.written) std::cout << "wrote " << p.string() << "\n";
        if (!result.failures.empty()) {
            std::cerr << cli::failures_json(name, result.failures) << "\n";
        }
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#include <gtest/gtest.h>

#include "issuecast/error.hpp"
#include "issuecast/eval.hpp"
#include "issuecast/synthetic.hpp"
#include "support.hpp"

using namespace issuecast;
using namespace issuecast::eval;

namespace {

ingest::ProjectBundle constant_project(std::size_t weeks, std::int64_t level) {
    return ingest::make_bundle("const", {}, parse_date("2020-01-06"), std::vector<std::int64_t>(weeks, level),
                               std::vector<std::int64_t>(weeks, level / 2), std::vector<std::int64_t>(weeks, level / 4));
}

}  // namespace

TEST(WindowConfig, Validation) {
    EXPECT_NO_THROW(WindowConfig{}.validate());
    EXPECT_THROW((WindowConfig{20, 0, 1}.validate()), Error);
    EXPECT_THROW((WindowConfig{20, 4, 0}.validate()), Error);
    EXPECT_THROW((WindowConfig{11, 4, 1}.validate()), Error);
}

TEST(StepCount, Examples) {
    EXPECT_EQ(rolling_step_count(24, {}), 1U);
    EXPECT_EQ(rolling_step_count(30, {}), 7U);
    EXPECT_EQ(rolling_step_count(23, {}), 0U);
}

TEST(StepCount, FormulaAndEvaluationAgree) {
    std::mt19937_64 rng(81);
    for (int s = 0; s < 40; ++s) {
        const WindowConfig cfg{12 + static_cast<int>(rng() % 10), 1 + static_cast<int>(rng() % 5),
                               1 + static_cast<int>(rng() % 4)};
        const std::size_t n = static_cast<std::size_t>(cfg.train_weeks + cfg.test_weeks) + rng() % 20;
        std::vector<std::int64_t> v(n);
        for (auto& x : v) x = static_cast<std::int64_t>(rng() % 9);
        const ts::WeeklySeries series("p", ts::Attribute::Issues, parse_date("2020-01-06"), v);
        const auto r = rolling_eval(series, nullptr, cfg);
        const auto expected = (n - static_cast<std::size_t>(cfg.train_weeks + cfg.test_weeks)) /
                                  static_cast<std::size_t>(cfg.step_weeks) + 1;
        EXPECT_EQ(r.steps, expected);
        EXPECT_EQ(r.per_step_mae.size(), expected);
        EXPECT_EQ(r.forecasts.size(), expected);
        for (std::size_t k = 0; k < expected; ++k) {
            EXPECT_EQ(r.forecasts[k].origin_index, k * cfg.step_weeks + cfg.train_weeks - 1);
            EXPECT_EQ(r.forecasts[k].values.size(), static_cast<std::size_t>(cfg.test_weeks));
        }
    }
}

TEST(RollingEval, ConstantTargetIsExact) {
    const ts::WeeklySeries s("p", ts::Attribute::Bugs, parse_date("2020-01-06"), std::vector<std::int64_t>(40, 5));
    const auto r = rolling_eval(s, nullptr);
    EXPECT_EQ(r.steps, 17U);
    for (double m : r.per_step_mae) EXPECT_EQ(m, 0.0);
    EXPECT_EQ(r.mae_variance, 0.0);
}

TEST(RollingEval, ShortProjectsAreFlagged) {
    const auto p = constant_project(23, 8);
    for (const auto& r : run_rq1(p)) {
        EXPECT_TRUE(r.series_too_short);
        EXPECT_EQ(r.steps, 0U);
    }
    for (const auto& r : run_rq3(p)) EXPECT_TRUE(r.series_too_short);
}

TEST(RollingEval, ConstantProjectHasZeroError) {
    const auto p = constant_project(50, 8);
    for (const auto& r : run_rq1(p)) EXPECT_EQ(r.mean_mae, 0.0);
    for (const auto& r : run_rq3(p)) EXPECT_EQ(r.mean_mae, 0.0);
}

TEST(RollingEval, SelfTransferEqualsLocal) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto p = synthetic::make_project("p", seed, {.weeks = 50});
        const ts::WeeklySeries bugs("p", ts::Attribute::Bugs, p.issues.start_date(), p.issues.values());
        const auto local = rolling_eval(bugs, nullptr);
        for (auto mode : {arima::TransferMode::Coefficients, arima::TransferMode::Direct}) {
            const auto issue = rolling_eval(bugs, &p.issues, {}, mode);
            EXPECT_EQ(issue.per_step_mae, local.per_step_mae);
            EXPECT_EQ(issue.model_source, ModelSource::Issue);
        }
    }
}

TEST(RollingEval, Mismatch) {
    auto p = synthetic::make_project("p", 1, {.weeks = 40});
    const ts::WeeklySeries shorter("p", ts::Attribute::Bugs, p.issues.start_date(),
                                   std::vector<std::int64_t>(30, 1));
    EXPECT_THROW(rolling_eval(shorter, &p.issues), Error);
}

TEST(RollingEval, UncoupledBugsFavourLocal) {
    synthetic::CorpusConfig cfg;
    cfg.weeks = 60;
    cfg.coupled = false;
    double issue = 0.0, local = 0.0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto p = synthetic::make_project("p", seed, cfg);
        issue += run_rq3(p)[0].mean_mae;
        local += run_rq1(p)[1].mean_mae;
    }
    EXPECT_GE(issue, local);
}

TEST(Correlation, IdenticalSeries) {
    auto p = synthetic::make_project("p", 3);
    p.bugs = ts::WeeklySeries("p", ts::Attribute::Bugs, p.issues.start_date(), p.issues.values());
    p.enhancements = ts::WeeklySeries("p", ts::Attribute::Enhancements, p.issues.start_date(),
                                      std::vector<std::int64_t>(p.weeks(), 0));
    const auto r = run_rq2(p);
    EXPECT_DOUBLE_EQ(*r.rho_issues_bugs, 1.0);
    EXPECT_EQ(r.strength_issues_bugs, stats::CorrelationStrength::ModerateToStrong);
    EXPECT_FALSE(r.rho_issues_enhancements);
    EXPECT_EQ(r.strength_issues_enhancements, stats::CorrelationStrength::Undefined);
}

TEST(Correlation, CoupledPairsAreStrong) {
    int strong = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        strong += *run_rq2(synthetic::make_project("p", seed)).rho_issues_bugs >= 0.7;
    }
    EXPECT_GE(strong, 90);
}

TEST(Comparison, IdenticalTraces) {
    const std::vector<double> e{1.0, 2.0, 0.5, 3.0};
    const auto r = run_rq4(e, e);
    EXPECT_DOUBLE_EQ(r.welch.t_statistic, 0.0);
    EXPECT_DOUBLE_EQ(r.welch.p_value, 0.5);
    EXPECT_FALSE(r.hypothesis_rejected);
    EXPECT_THROW(run_rq4(std::vector<double>{}, e), Error);
}

TEST(Comparison, TenfoldIssueErrorsRejected) {
    const std::vector<double> local{1.0, 1.5, 0.5, 1.2, 0.8, 1.1, 0.9};
    std::vector<double> issue(local);
    for (auto& v : issue) v *= 10.0;
    const auto r = run_rq4(issue, local);
    EXPECT_LT(r.welch.p_value, 1e-3);
    EXPECT_TRUE(r.hypothesis_rejected);
    EXPECT_FALSE(r.decision.empty());
}

TEST(Comparison, PoolConcatenates) {
    RollingEvalResult a, b;
    a.per_step_mae = {1, 2};
    b.per_step_mae = {3};
    const std::vector<RollingEvalResult> v{a, b};
    EXPECT_EQ(pool_errors(v), (std::vector<double>{1, 2, 3}));
}

TEST(EvaluateProjects, DeterministicAcrossJobCounts) {
    auto corpus = synthetic::make_corpus(12, 5, {.weeks = 40});
    std::reverse(corpus.begin(), corpus.end());
    const auto one = evaluate_projects(corpus, {}, arima::TransferMode::Coefficients, 1);
    const auto eight = evaluate_projects(corpus, {}, arima::TransferMode::Coefficients, 8);
    ASSERT_EQ(one.size(), eight.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(one[i].project_id, eight[i].project_id);
        if (i) EXPECT_LT(one[i - 1].project_id, one[i].project_id);
        for (int a = 0; a < 3; ++a) EXPECT_EQ(one[i].local[a].per_step_mae, eight[i].local[a].per_step_mae);
        for (int a = 0; a < 2; ++a) EXPECT_EQ(one[i].issue[a].per_step_mae, eight[i].issue[a].per_step_mae);
    }
}

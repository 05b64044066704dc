#pragma once

// The three experiment pipelines. Each takes a resolved configuration and
// returns a report table; rows are in a fixed order independent of the thread
// count, and timing is only recorded when asked for, so reruns with the same
// configuration produce identical output.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ustat/config.hpp"

namespace ustat {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct ExperimentReport {
    std::string experiment;
    std::vector<std::pair<std::string, std::string>> settings;  // resolved configuration
    Table table;
    Table plot;  // tidy long form: series, x, metric, value
    std::vector<std::pair<std::string, std::string>> summary;
};

// `# key=value` lines for the settings, then the table, then `# key=value`
// summary lines. With plot_data the long-form table is written instead.
void write_report(std::ostream& out, const ExperimentReport& report, bool plot_data);

struct MixtureSettings {
    std::size_t dim = 40;
    std::size_t classes = 10;
    std::size_t subspace_dim = 15;
    double variance = 0.02;
    double mean_scale = 0.25;
    std::size_t n_train = 2000;
    std::size_t n_test = 1000;
};

struct OneTimeSamplingConfig {
    std::uint64_t seed = 1;
    MixtureSettings data;
    std::vector<std::size_t> p_grid{20, 40, 60, 80};
    std::size_t trials = 50;
    std::size_t steps = 500;
    double threshold = 2.0;
    std::vector<double> eta_grid{1, 2.5, 5, 10, 25, 50};
    std::size_t pilot_trials = 3;
    std::size_t test_pairs = 100000;
    std::size_t validation_pairs = 20000;
    std::string incomplete_scheme = "with_replacement";
    bool record_timing = false;

    static OneTimeSamplingConfig from(const Config& cfg);
    std::vector<std::pair<std::string, std::string>> describe() const;
};

struct SgdCompareConfig {
    std::uint64_t seed = 1;
    MixtureSettings data;
    std::vector<std::uint64_t> m_grid{10, 28, 55, 105, 253};
    std::size_t runs = 20;
    std::size_t steps = 2000;
    double threshold = 2.0;
    std::vector<double> eta_grid{1, 2.5, 5, 10, 25, 50};
    std::size_t pilot_runs = 2;
    std::size_t train_pairs = 20000;
    std::size_t test_pairs = 20000;
    std::size_t record_every = 200;
    bool project_every_step = false;
    bool record_timing = false;

    static SgdCompareConfig from(const Config& cfg);
    std::vector<std::pair<std::string, std::string>> describe() const;
};

struct ModelSelectConfig {
    std::uint64_t seed = 1;
    std::string dataset;     // CSV path; empty = synthetic clusters
    std::string partitions;  // CSV path; empty = agglomerative Ward
    std::size_t n = 500;
    std::size_t dim = 5;
    std::size_t clusters = 8;
    double separation = 12.0;
    double spread = 1.0;
    std::size_t max_models = 20;
    double c = 1.1;
    std::uint64_t b = 500;
    std::string scheme = "with_replacement";
    std::size_t trials = 100;
    bool record_timing = false;

    static ModelSelectConfig from(const Config& cfg);
    std::vector<std::pair<std::string, std::string>> describe() const;
};

ExperimentReport run_one_time_sampling(const OneTimeSamplingConfig& cfg);
ExperimentReport run_sgd_compare(const SgdCompareConfig& cfg);
ExperimentReport run_model_select(const ModelSelectConfig& cfg);

// Seed of trial `t` in the stream `stream` derived from a base seed.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t t);

}  // namespace ustat

#include "ustat/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ustat/csv.hpp"
#include "ustat/harness.hpp"
#include "ustat/variance_bounds.hpp"

namespace ustat {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double v) { return csv::format_double(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }

template <class T>
std::string join(const std::vector<T>& xs) {
    nlohmann::json j = xs;
    return j.dump();
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

MixtureSettings read_mixture(const Config& cfg, const std::string& section) {
    MixtureSettings d;
    d.dim = cfg.get(section, "dim", d.dim);
    d.classes = cfg.get(section, "classes", d.classes);
    d.subspace_dim = cfg.get(section, "subspace_dim", d.subspace_dim);
    d.variance = cfg.get(section, "variance", d.variance);
    d.mean_scale = cfg.get(section, "mean_scale", d.mean_scale);
    d.n_train = cfg.get(section, "n_train", d.n_train);
    d.n_test = cfg.get(section, "n_test", d.n_test);
    return d;
}

void describe_mixture(std::vector<std::pair<std::string, std::string>>& out, const MixtureSettings& d) {
    out.emplace_back("dim", std::to_string(d.dim));
    out.emplace_back("classes", std::to_string(d.classes));
    out.emplace_back("subspace_dim", std::to_string(d.subspace_dim));
    out.emplace_back("variance", fmt(d.variance));
    out.emplace_back("mean_scale", fmt(d.mean_scale));
    out.emplace_back("n_train", std::to_string(d.n_train));
    out.emplace_back("n_test", std::to_string(d.n_test));
}

void require_positive(std::size_t v, const std::string& name) {
    require(v >= 1, ErrorCode::Config, name + " must be >= 1");
}

// Training and test samples of one mixture, plus fixed evaluation pair sets.
struct MetricData {
    Sample train;
    Sample test;
    PairBatch test_pairs;
    PairBatch train_pairs;
};

MetricData make_metric_data(std::uint64_t seed, const MixtureSettings& d, std::size_t test_pairs,
                            std::size_t train_pairs) {
    require(d.n_train >= 2 && d.n_test >= 2, ErrorCode::Config, "n_train and n_test must be >= 2");
    const Rng root(seed);
    GaussianMixture mixture(d.dim, d.classes, d.subspace_dim, d.variance, root.split(0).seed(), d.mean_scale);
    MetricData out;
    Rng r1 = root.split(1);
    out.train = mixture.sample(d.n_train, r1);
    Rng r2 = root.split(2);
    out.test = mixture.sample(d.n_test, r2);
    Rng r3 = root.split(3);
    out.test_pairs = PairBatch::build(out.test, random_pairs(d.n_test, test_pairs, r3));
    Rng r4 = root.split(4);
    out.train_pairs = PairBatch::build(out.train, random_pairs(d.n_train, train_pairs, r4));
    return out;
}

double mean_hinge(const PairBatch& batch, const Eigen::MatrixXd& m, double b) {
    return hinge_loss_sum(batch, m, b) / static_cast<double>(batch.size());
}

// Projected gradient descent from M = 0 with eta_t = 1/(eta0 t).
Eigen::MatrixXd fit_metric(const PairBatch& batch, std::size_t steps, double eta0, double b) {
    const Eigen::Index p = batch.delta.cols();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p, p);
    const double inv = 1.0 / static_cast<double>(batch.size());
    for (std::size_t t = 1; t <= steps; ++t) {
        const Eigen::MatrixXd g = hinge_gradient_sum(batch, m, b) * inv;
        m = project_psd(m - g / (eta0 * static_cast<double>(t)));
    }
    return m;
}

Eigen::VectorXd project_psd_vector(const MetricHingeObjective& objective, Eigen::VectorXd theta) {
    objective.project(theta);
    return theta;
}

std::vector<std::uint32_t> sorted_subset(std::size_t n, std::size_t p, Rng& rng) {
    std::vector<std::uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0u);
    for (std::size_t i = 0; i < p; ++i) std::swap(pool[i], pool[i + rng.uniform_below(n - i)]);
    pool.resize(p);
    std::sort(pool.begin(), pool.end());
    return pool;
}

TupleList all_pairs_among(const IndexSpace& space, const std::vector<std::uint32_t>& points) {
    TupleList out(space);
    out.reserve(points.size() * (points.size() - 1) / 2);
    std::uint32_t pair[2];
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            pair[0] = points[i];
            pair[1] = points[j];
            out.push_back(TupleRef(pair, space.offsets()));
        }
    }
    return out;
}

enum class Arm { Incomplete, CompleteSubsample };

const char* arm_name(Arm a) { return a == Arm::Incomplete ? "incomplete" : "complete_subsample"; }

// The p(p-1)/2 training pairs of one arm.
PairBatch arm_pairs(Arm arm, Scheme scheme, const Sample& train, std::size_t p, Rng& rng) {
    const IndexSpace space({train.size()}, {2});
    const std::size_t budget = p * (p - 1) / 2;
    TupleList pairs = arm == Arm::Incomplete ? sample_terms(scheme, space, budget, rng).terms()
                                             : all_pairs_among(space, sorted_subset(train.size(), p, rng));
    require(pairs.size() == budget, ErrorCode::InvalidArgument, "pair budget mismatch");
    return PairBatch::build(train, pairs);
}

double mean(const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double mu = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::size_t argmin_first(const std::vector<double>& v) {
    return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t t) {
    return Rng(base).split(stream).split(t).seed();
}

void write_report(std::ostream& out, const ExperimentReport& report, bool plot_data) {
    out << "# experiment=" << report.experiment << '\n';
    for (const auto& [k, v] : report.settings) out << "# " << k << '=' << v << '\n';
    const Table& t = plot_data ? report.plot : report.table;
    for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
        out << '\n';
    }
    for (const auto& [k, v] : report.summary) out << "# " << k << '=' << v << '\n';
}

// ------------------------------------------------------------ one-time sampling

OneTimeSamplingConfig OneTimeSamplingConfig::from(const Config& cfg) {
    const std::string s = "one-time-sampling";
    OneTimeSamplingConfig c;
    c.seed = cfg.get(s, "seed", c.seed);
    c.data = read_mixture(cfg, s);
    c.p_grid = cfg.get(s, "p_grid", c.p_grid);
    c.trials = cfg.get(s, "trials", c.trials);
    c.steps = cfg.get(s, "steps", c.steps);
    c.threshold = cfg.get(s, "threshold", c.threshold);
    c.eta_grid = cfg.get(s, "eta_grid", c.eta_grid);
    c.pilot_trials = cfg.get(s, "pilot_trials", c.pilot_trials);
    c.test_pairs = cfg.get(s, "test_pairs", c.test_pairs);
    c.validation_pairs = cfg.get(s, "validation_pairs", c.validation_pairs);
    c.incomplete_scheme = cfg.get(s, "incomplete_scheme", c.incomplete_scheme);
    c.record_timing = cfg.get(s, "record_timing", c.record_timing);
    return c;
}

std::vector<std::pair<std::string, std::string>> OneTimeSamplingConfig::describe() const {
    std::vector<std::pair<std::string, std::string>> out{{"seed", fmt(seed)}};
    describe_mixture(out, data);
    out.emplace_back("p_grid", join(p_grid));
    out.emplace_back("trials", std::to_string(trials));
    out.emplace_back("steps", std::to_string(steps));
    out.emplace_back("threshold", fmt(threshold));
    out.emplace_back("eta_grid", join(eta_grid));
    out.emplace_back("pilot_trials", std::to_string(pilot_trials));
    out.emplace_back("test_pairs", std::to_string(test_pairs));
    out.emplace_back("validation_pairs", std::to_string(validation_pairs));
    out.emplace_back("incomplete_scheme", incomplete_scheme);
    out.emplace_back("record_timing", record_timing ? "true" : "false");
    return out;
}

ExperimentReport run_one_time_sampling(const OneTimeSamplingConfig& cfg) {
    require_positive(cfg.trials, "trials");
    require_positive(cfg.pilot_trials, "pilot_trials");
    require_positive(cfg.test_pairs, "test_pairs");
    require_positive(cfg.validation_pairs, "validation_pairs");
    require(!cfg.p_grid.empty() && !cfg.eta_grid.empty(), ErrorCode::Config, "p_grid and eta_grid must be nonempty");
    for (auto p : cfg.p_grid) {
        require(p >= 2, ErrorCode::InvalidArgument, "p must be >= 2");
        require(p <= cfg.data.n_train, ErrorCode::InvalidArgument, "p exceeds the training sample size");
    }
    for (double e : cfg.eta_grid) require(e > 0.0, ErrorCode::Config, "eta_grid values must be > 0");
    const Scheme scheme = parse_scheme(cfg.incomplete_scheme);
    require(scheme != Scheme::Bernoulli, ErrorCode::Config, "the incomplete arm needs a fixed-size design");

    const MetricData data = make_metric_data(cfg.seed, cfg.data, cfg.test_pairs, cfg.validation_pairs);
    const std::vector<Arm> arms{Arm::Incomplete, Arm::CompleteSubsample};

    // Step-size selection on pilot draws, scored on held-out training pairs.
    struct Pilot {
        std::size_t arm, p, eta, pilot;
    };
    std::vector<Pilot> pilots;
    for (std::size_t a = 0; a < arms.size(); ++a)
        for (std::size_t p = 0; p < cfg.p_grid.size(); ++p)
            for (std::size_t e = 0; e < cfg.eta_grid.size(); ++e)
                for (std::size_t k = 0; k < cfg.pilot_trials; ++k) pilots.push_back({a, p, e, k});
    std::vector<double> pilot_risk(pilots.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t j = 0; j < pilots.size(); ++j) {
        const Pilot& q = pilots[j];
        Rng rng(trial_seed(cfg.seed, 100 + q.arm, q.p * 1'000'003 + q.pilot));
        const PairBatch batch = arm_pairs(arms[q.arm], scheme, data.train, cfg.p_grid[q.p], rng);
        const Eigen::MatrixXd m = fit_metric(batch, cfg.steps, cfg.eta_grid[q.eta], cfg.threshold);
        pilot_risk[j] = mean_hinge(data.train_pairs, m, cfg.threshold);
    }
    std::vector<std::vector<double>> chosen(arms.size(), std::vector<double>(cfg.p_grid.size()));
    for (std::size_t a = 0; a < arms.size(); ++a) {
        for (std::size_t p = 0; p < cfg.p_grid.size(); ++p) {
            std::vector<double> score(cfg.eta_grid.size(), 0.0);
            for (std::size_t j = 0; j < pilots.size(); ++j)
                if (pilots[j].arm == a && pilots[j].p == p) score[pilots[j].eta] += pilot_risk[j];
            chosen[a][p] = cfg.eta_grid[argmin_first(score)];
        }
    }

    struct Job {
        std::size_t arm, p, trial;
    };
    std::vector<Job> jobs;
    for (std::size_t a = 0; a < arms.size(); ++a)
        for (std::size_t p = 0; p < cfg.p_grid.size(); ++p)
            for (std::size_t t = 0; t < cfg.trials; ++t) jobs.push_back({a, p, t});
    struct Outcome {
        std::uint64_t seed = 0;
        std::size_t terms = 0;
        double train = 0.0, test = 0.0, seconds = 0.0;
    };
    std::vector<Outcome> results(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const Job& q = jobs[j];
        Outcome& o = results[j];
        o.seed = trial_seed(cfg.seed, 1 + q.arm, q.p * 1'000'003 + q.trial);
        Rng rng(o.seed);
        const PairBatch batch = arm_pairs(arms[q.arm], scheme, data.train, cfg.p_grid[q.p], rng);
        o.terms = static_cast<std::size_t>(batch.size());
        const auto start = Clock::now();
        const Eigen::MatrixXd m = fit_metric(batch, cfg.steps, chosen[q.arm][q.p], cfg.threshold);
        o.seconds = seconds_since(start);
        o.train = mean_hinge(batch, m, cfg.threshold);
        o.test = mean_hinge(data.test_pairs, m, cfg.threshold);
    }

    ExperimentReport rep;
    rep.experiment = "one-time-sampling";
    rep.settings = cfg.describe();
    rep.table.columns = {"scheme", "p", "trial", "seed", "eta0", "terms", "train_risk", "test_risk", "seconds"};
    rep.plot.columns = {"series", "x", "trial", "metric", "value"};
    std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> test_by;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> time_by;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const Job& q = jobs[j];
        const Outcome& o = results[j];
        const std::string scheme = arm_name(arms[q.arm]);
        const std::string p = std::to_string(cfg.p_grid[q.p]);
        const std::string secs = cfg.record_timing ? fmt(o.seconds) : "NA";
        rep.table.rows.push_back({scheme, p, std::to_string(q.trial), fmt(o.seed), fmt(chosen[q.arm][q.p]),
                                  std::to_string(o.terms), fmt(o.train), fmt(o.test), secs});
        rep.plot.rows.push_back({scheme, p, std::to_string(q.trial), "test_risk", fmt(o.test)});
        rep.plot.rows.push_back({scheme, p, std::to_string(q.trial), "train_risk", fmt(o.train)});
        if (cfg.record_timing) rep.plot.rows.push_back({scheme, p, std::to_string(q.trial), "seconds", secs});
        test_by[{q.arm, q.p}].push_back(o.test);
        time_by[{q.arm, q.p}].push_back(o.seconds);
    }
    for (std::size_t a = 0; a < arms.size(); ++a) {
        for (std::size_t p = 0; p < cfg.p_grid.size(); ++p) {
            const std::string key = std::string(arm_name(arms[a])) + ".p" + std::to_string(cfg.p_grid[p]);
            rep.summary.emplace_back(key + ".mean_test_risk", fmt(mean(test_by[{a, p}])));
            rep.summary.emplace_back(key + ".sd_test_risk", fmt(stddev(test_by[{a, p}])));
            if (cfg.record_timing) rep.summary.emplace_back(key + ".mean_seconds", fmt(mean(time_by[{a, p}])));
        }
    }
    return rep;
}

// ---------------------------------------------------------------- sgd compare

SgdCompareConfig SgdCompareConfig::from(const Config& cfg) {
    const std::string s = "sgd-compare";
    SgdCompareConfig c;
    c.seed = cfg.get(s, "seed", c.seed);
    c.data = read_mixture(cfg, s);
    c.m_grid = cfg.get(s, "m_grid", c.m_grid);
    c.runs = cfg.get(s, "runs", c.runs);
    c.steps = cfg.get(s, "steps", c.steps);
    c.threshold = cfg.get(s, "threshold", c.threshold);
    c.eta_grid = cfg.get(s, "eta_grid", c.eta_grid);
    c.pilot_runs = cfg.get(s, "pilot_runs", c.pilot_runs);
    c.train_pairs = cfg.get(s, "train_pairs", c.train_pairs);
    c.test_pairs = cfg.get(s, "test_pairs", c.test_pairs);
    c.record_every = cfg.get(s, "record_every", c.record_every);
    c.project_every_step = cfg.get(s, "project_every_step", c.project_every_step);
    c.record_timing = cfg.get(s, "record_timing", c.record_timing);
    return c;
}

std::vector<std::pair<std::string, std::string>> SgdCompareConfig::describe() const {
    std::vector<std::pair<std::string, std::string>> out{{"seed", fmt(seed)}};
    describe_mixture(out, data);
    out.emplace_back("m_grid", join(m_grid));
    out.emplace_back("runs", std::to_string(runs));
    out.emplace_back("steps", std::to_string(steps));
    out.emplace_back("threshold", fmt(threshold));
    out.emplace_back("eta_grid", join(eta_grid));
    out.emplace_back("pilot_runs", std::to_string(pilot_runs));
    out.emplace_back("train_pairs", std::to_string(train_pairs));
    out.emplace_back("test_pairs", std::to_string(test_pairs));
    out.emplace_back("record_every", std::to_string(record_every));
    out.emplace_back("project_every_step", project_every_step ? "true" : "false");
    out.emplace_back("record_timing", record_timing ? "true" : "false");
    return out;
}

ExperimentReport run_sgd_compare(const SgdCompareConfig& cfg) {
    require_positive(cfg.runs, "runs");
    require_positive(cfg.pilot_runs, "pilot_runs");
    require_positive(cfg.train_pairs, "train_pairs");
    require_positive(cfg.test_pairs, "test_pairs");
    require(!cfg.m_grid.empty() && !cfg.eta_grid.empty(), ErrorCode::Config, "m_grid and eta_grid must be nonempty");
    for (double e : cfg.eta_grid) require(e > 0.0, ErrorCode::Config, "eta_grid values must be > 0");

    const MetricData data = make_metric_data(cfg.seed, cfg.data, cfg.test_pairs, cfg.train_pairs);
    const SampleSet train(data.train);
    const auto dim = static_cast<Eigen::Index>(cfg.data.dim);
    const MetricHingeObjective objective(dim, cfg.threshold);
    const Eigen::VectorXd theta0 = Eigen::VectorXd::Zero(dim * dim);

    struct Arm {
        GradientMode mode;
        const char* name;
    };
    const std::vector<Arm> arms{{GradientMode::Incomplete, "sgd_incomplete"},
                                {GradientMode::CompleteSubsample, "sgd_complete"}};

    std::vector<std::size_t> n_prime(cfg.m_grid.size());
    std::vector<std::uint64_t> budget(cfg.m_grid.size());
    for (std::size_t i = 0; i < cfg.m_grid.size(); ++i) {
        n_prime[i] = complete_subsample_size(cfg.m_grid[i]);
        require(n_prime[i] <= cfg.data.n_train, ErrorCode::InvalidArgument, "mini-batch exceeds the training set");
        budget[i] = static_cast<std::uint64_t>(n_prime[i]) * (n_prime[i] - 1) / 2;
    }
    auto make_config = [&](std::size_t a, std::size_t i, double eta0, std::uint64_t seed) {
        SgdConfig c;
        c.steps = cfg.steps;
        c.eta0 = eta0;
        c.mode = arms[a].mode;
        if (c.mode == GradientMode::Incomplete) {
            c.b = budget[i];
        } else {
            c.subsample_sizes = {n_prime[i]};
        }
        c.projection = cfg.project_every_step ? ProjectionPolicy::EveryStep : ProjectionPolicy::FinalOnly;
        c.seed = seed;
        return c;
    };

    struct Pilot {
        std::size_t arm, m, eta, run;
    };
    std::vector<Pilot> pilots;
    for (std::size_t a = 0; a < arms.size(); ++a)
        for (std::size_t i = 0; i < cfg.m_grid.size(); ++i)
            for (std::size_t e = 0; e < cfg.eta_grid.size(); ++e)
                for (std::size_t k = 0; k < cfg.pilot_runs; ++k) pilots.push_back({a, i, e, k});
    std::vector<double> pilot_risk(pilots.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t j = 0; j < pilots.size(); ++j) {
        const Pilot& q = pilots[j];
        const auto seed = trial_seed(cfg.seed, 100 + q.arm, q.m * 1'000'003 + q.run);
        const SgdResult r = sgd(objective, train, make_config(q.arm, q.m, cfg.eta_grid[q.eta], seed), theta0);
        pilot_risk[j] = mean_hinge(data.train_pairs, objective.as_matrix(project_psd_vector(objective, r.theta)),
                                   cfg.threshold);
    }
    std::vector<std::vector<double>> chosen(arms.size(), std::vector<double>(cfg.m_grid.size()));
    for (std::size_t a = 0; a < arms.size(); ++a) {
        for (std::size_t i = 0; i < cfg.m_grid.size(); ++i) {
            std::vector<double> score(cfg.eta_grid.size(), 0.0);
            for (std::size_t j = 0; j < pilots.size(); ++j)
                if (pilots[j].arm == a && pilots[j].m == i) score[pilots[j].eta] += pilot_risk[j];
            chosen[a][i] = cfg.eta_grid[argmin_first(score)];
        }
    }

    struct Job {
        std::size_t arm, m, run;
    };
    std::vector<Job> jobs;
    for (std::size_t a = 0; a < arms.size(); ++a)
        for (std::size_t i = 0; i < cfg.m_grid.size(); ++i)
            for (std::size_t r = 0; r < cfg.runs; ++r) jobs.push_back({a, i, r});
    struct Outcome {
        std::uint64_t seed = 0;
        std::vector<SgdRecord> trajectory;
        double seconds = 0.0;
    };
    std::vector<Outcome> results(jobs.size());
    const RiskProbe probe = [&](const Eigen::VectorXd& theta) {
        return mean_hinge(data.test_pairs, objective.as_matrix(project_psd_vector(objective, theta)), cfg.threshold);
    };
#pragma omp parallel for schedule(dynamic)
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const Job& q = jobs[j];
        Outcome& o = results[j];
        o.seed = trial_seed(cfg.seed, 1 + q.arm, q.m * 1'000'003 + q.run);
        SgdConfig c = make_config(q.arm, q.m, chosen[q.arm][q.m], o.seed);
        c.record_every = cfg.record_every;
        const auto start = Clock::now();
        o.trajectory = sgd(objective, train, c, theta0, probe).trajectory;
        o.seconds = seconds_since(start);
    }

    ExperimentReport rep;
    rep.experiment = "sgd-compare";
    rep.settings = cfg.describe();
    rep.table.columns = {"strategy", "m", "n_prime", "budget", "eta0", "run", "seed", "t", "test_risk", "seconds"};
    rep.plot.columns = {"series", "x", "trial", "metric", "value"};
    std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> final_by;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const Job& q = jobs[j];
        const Outcome& o = results[j];
        const std::string series = std::string(arms[q.arm].name) + ".m" + std::to_string(cfg.m_grid[q.m]);
        for (const auto& rec : o.trajectory) {
            const bool last = &rec == &o.trajectory.back();
            rep.table.rows.push_back({arms[q.arm].name, fmt(cfg.m_grid[q.m]), std::to_string(n_prime[q.m]),
                                      fmt(budget[q.m]), fmt(chosen[q.arm][q.m]), std::to_string(q.run), fmt(o.seed),
                                      std::to_string(rec.t), fmt(*rec.risk),
                                      last && cfg.record_timing ? fmt(o.seconds) : "NA"});
            rep.plot.rows.push_back({series, std::to_string(rec.t), std::to_string(q.run), "test_risk", fmt(*rec.risk)});
        }
        final_by[{q.arm, q.m}].push_back(*o.trajectory.back().risk);
    }
    for (std::size_t a = 0; a < arms.size(); ++a) {
        for (std::size_t i = 0; i < cfg.m_grid.size(); ++i) {
            const std::string key = std::string(arms[a].name) + ".m" + std::to_string(cfg.m_grid[i]);
            rep.summary.emplace_back(key + ".mean_final_test_risk", fmt(mean(final_by[{a, i}])));
            rep.summary.emplace_back(key + ".sd_final_test_risk", fmt(stddev(final_by[{a, i}])));
        }
    }
    return rep;
}

// ------------------------------------------------------------- model select

ModelSelectConfig ModelSelectConfig::from(const Config& cfg) {
    const std::string s = "model-select";
    ModelSelectConfig c;
    c.seed = cfg.get(s, "seed", c.seed);
    c.dataset = cfg.get(s, "dataset", c.dataset);
    c.partitions = cfg.get(s, "partitions", c.partitions);
    c.n = cfg.get(s, "n", c.n);
    c.dim = cfg.get(s, "dim", c.dim);
    c.clusters = cfg.get(s, "clusters", c.clusters);
    c.separation = cfg.get(s, "separation", c.separation);
    c.spread = cfg.get(s, "spread", c.spread);
    c.max_models = cfg.get(s, "max_models", c.max_models);
    c.c = cfg.get(s, "c", c.c);
    c.b = cfg.get(s, "B", c.b);
    c.scheme = cfg.get(s, "scheme", c.scheme);
    c.trials = cfg.get(s, "trials", c.trials);
    c.record_timing = cfg.get(s, "record_timing", c.record_timing);
    return c;
}

std::vector<std::pair<std::string, std::string>> ModelSelectConfig::describe() const {
    return {{"seed", fmt(seed)},
            {"dataset", dataset.empty() ? "synthetic" : dataset},
            {"partitions", partitions.empty() ? "ward" : partitions},
            {"n", std::to_string(n)},
            {"dim", std::to_string(dim)},
            {"clusters", std::to_string(clusters)},
            {"separation", fmt(separation)},
            {"spread", fmt(spread)},
            {"max_models", std::to_string(max_models)},
            {"c", fmt(c)},
            {"B", fmt(b)},
            {"scheme", scheme},
            {"trials", std::to_string(trials)},
            {"record_timing", record_timing ? "true" : "false"}};
}

ExperimentReport run_model_select(const ModelSelectConfig& cfg) {
    require_positive(cfg.trials, "trials");
    require_positive(cfg.max_models, "max_models");
    require(cfg.b >= 1, ErrorCode::InvalidArgument, "B must be >= 1");
    require(cfg.c >= 0.0, ErrorCode::Config, "penalty constant c must be >= 0");
    const Scheme scheme = parse_scheme(cfg.scheme);

    const Sample data = cfg.dataset.empty()
                            ? generate_separated_clusters(cfg.dim, cfg.clusters, cfg.n, cfg.separation, cfg.spread,
                                                          Rng(cfg.seed).split(0).seed())
                            : load_csv_dataset({cfg.dataset}).block(0);
    const std::size_t n = data.size();
    require(n >= 2, ErrorCode::InvalidArgument, "model selection needs at least two points");
    NestedPartitions parts =
        cfg.partitions.empty() ? agglomerative_ward(data, std::min(cfg.max_models, n)) : load_partitions_csv(cfg.partitions);
    if (parts.size() > cfg.max_models) parts.resize(cfg.max_models);
    for (const auto& p : parts)
        require(p.size() == n, ErrorCode::InvalidArgument, "partition length does not match the dataset size");
    const std::size_t models = parts.size();

    const SampleSet samples(data);
    const IndexSpace space({n}, {2});
    std::vector<ClusteringKernel> kernels;
    for (const auto& p : parts) kernels.emplace_back(euclidean_distance, p);
    std::vector<std::size_t> indices(models);
    std::vector<double> penalties(models);
    for (std::size_t m = 0; m < models; ++m) {
        indices[m] = m + 1;
        penalties[m] = cfg.c * std::log(static_cast<double>(m + 1));
    }

    const auto t0 = Clock::now();
    std::vector<double> complete_risk(models);
    for (std::size_t m = 0; m < models; ++m) complete_risk[m] = complete_u(kernels[m], samples, space).value;
    const double complete_seconds = seconds_since(t0);
    const std::size_t complete_pick = select_penalized(indices, complete_risk, penalties);

    const std::size_t p_sub = complete_subsample_size(cfg.b);
    require(p_sub <= n, ErrorCode::InvalidArgument, "subsample baseline needs more points than the dataset has");

    struct Outcome {
        std::uint64_t seed_inc = 0, seed_sub = 0;
        std::size_t pick_inc = 0, pick_sub = 0;
        double sec_inc = 0.0, sec_sub = 0.0;
        std::vector<double> risk_inc;
    };
    std::vector<Outcome> results(cfg.trials);
    std::string error;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        try {
            Outcome& o = results[t];
            o.seed_inc = trial_seed(cfg.seed, 1, t);
            auto start = Clock::now();
            Rng rng(o.seed_inc);
            const TermSet terms = sample_terms(scheme, space, cfg.b, rng);
            o.risk_inc.resize(models);
            for (std::size_t m = 0; m < models; ++m) {
                o.risk_inc[m] = scheme == Scheme::Bernoulli ? horvitz_thompson(kernels[m], samples, terms).value
                                                            : incomplete_u(kernels[m], samples, terms).value;
            }
            o.pick_inc = select_penalized(indices, o.risk_inc, penalties);
            o.sec_inc = seconds_since(start);

            o.seed_sub = trial_seed(cfg.seed, 2, t);
            start = Clock::now();
            Rng sub_rng(o.seed_sub);
            const auto pts = sorted_subset(n, p_sub, sub_rng);
            const SampleSet sub(data.subset(pts));
            const IndexSpace sub_space({p_sub}, {2});
            std::vector<double> risk_sub(models);
            for (std::size_t m = 0; m < models; ++m) {
                std::vector<std::uint32_t> labels(p_sub);
                for (std::size_t i = 0; i < p_sub; ++i) labels[i] = parts[m].labels[pts[i]];
                const ClusteringKernel k(euclidean_distance, Partition(std::move(labels), parts[m].clusters));
                risk_sub[m] = complete_u(k, sub, sub_space).value;
            }
            o.pick_sub = select_penalized(indices, risk_sub, penalties);
            o.sec_sub = seconds_since(start);
        } catch (const std::exception& e) {
#pragma omp critical
            if (error.empty()) error = e.what();
        }
    }
    if (!error.empty()) fail(ErrorCode::InvalidArgument, error);

    ExperimentReport rep;
    rep.experiment = "model-select";
    rep.settings = cfg.describe();
    rep.settings.emplace_back("models", std::to_string(models));
    rep.settings.emplace_back("subsample_p", std::to_string(p_sub));
    rep.settings.emplace_back("complete_terms", space.cardinality().str());
    rep.settings.emplace_back("ordered_pair_terms", std::to_string(static_cast<std::uint64_t>(n) * (n - 1)));
    rep.table.columns = {"arm", "trial", "seed", "selected_m", "agrees", "seconds"};
    rep.plot.columns = {"series", "x", "trial", "metric", "value"};
    rep.table.rows.push_back({"complete", "NA", "NA", std::to_string(complete_pick), "1",
                              cfg.record_timing ? fmt(complete_seconds) : "NA"});
    std::size_t agree_inc = 0, agree_sub = 0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        const Outcome& o = results[t];
        agree_inc += o.pick_inc == complete_pick;
        agree_sub += o.pick_sub == complete_pick;
        rep.table.rows.push_back({"incomplete", std::to_string(t), fmt(o.seed_inc), std::to_string(o.pick_inc),
                                  o.pick_inc == complete_pick ? "1" : "0", cfg.record_timing ? fmt(o.sec_inc) : "NA"});
    }
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        const Outcome& o = results[t];
        rep.table.rows.push_back({"complete_subsample", std::to_string(t), fmt(o.seed_sub), std::to_string(o.pick_sub),
                                  o.pick_sub == complete_pick ? "1" : "0", cfg.record_timing ? fmt(o.sec_sub) : "NA"});
    }
    for (std::size_t m = 0; m < models; ++m) {
        const std::string x = std::to_string(m + 1);
        rep.plot.rows.push_back({"complete", x, "NA", "risk", fmt(complete_risk[m])});
        rep.plot.rows.push_back({"complete", x, "NA", "penalized_risk", fmt(complete_risk[m] + penalties[m])});
    }
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        for (std::size_t m = 0; m < models; ++m) {
            const std::string x = std::to_string(m + 1);
            const double r = results[t].risk_inc[m];
            rep.plot.rows.push_back({"incomplete", x, std::to_string(t), "risk", fmt(r)});
            rep.plot.rows.push_back({"incomplete", x, std::to_string(t), "penalized_risk", fmt(r + penalties[m])});
        }
    }
    const auto trials = static_cast<double>(cfg.trials);
    rep.summary.emplace_back("complete_selected_m", std::to_string(complete_pick));
    rep.summary.emplace_back("agreement_incomplete", fmt(static_cast<double>(agree_inc) / trials));
    rep.summary.emplace_back("agreement_complete_subsample", fmt(static_cast<double>(agree_sub) / trials));
    return rep;
}

}  // namespace ustat

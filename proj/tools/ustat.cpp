// Command-line front end: estimators, bounds, model selection, SGD, the three
// experiment pipelines and synthetic data generation. All output is CSV.
// Exit status: 0 success, 2 configuration/input error, 3 numeric/domain error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ustat/config.hpp"
#include "ustat/csv.hpp"
#include "ustat/estimators.hpp"
#include "ustat/experiments.hpp"
#include "ustat/harness.hpp"
#include "ustat/learning.hpp"
#include "ustat/variance_bounds.hpp"

namespace {

using namespace ustat;
using csv::format_double;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

// Writes to a file when a path is given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            require(static_cast<bool>(*file_), ErrorCode::Config, "cannot write " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

Eigen::MatrixXd read_matrix_csv(const std::string& path, double* threshold) {
    const auto rows = csv::read_file(path);
    require(rows.size() >= 2, ErrorCode::ParseError, path + ": expected a header and matrix rows");
    std::size_t start = 1;
    if (rows[1].fields.size() == 2 && rows[1].fields[0] == "b") {
        if (threshold) *threshold = csv::parse_double(rows[1].fields[1], rows[1].line, 1);
        start = 2;
    }
    const std::size_t p = rows.size() - start;
    Eigen::MatrixXd m(p, p);
    for (std::size_t r = 0; r < p; ++r) {
        const auto& row = rows[start + r];
        require(row.fields.size() == p, ErrorCode::ParseError,
                path + ": matrix row at line " + std::to_string(row.line) + " is not of length " + std::to_string(p));
        for (std::size_t c = 0; c < p; ++c) m(r, c) = csv::parse_double(row.fields[c], row.line, c);
    }
    return m;
}

// Header, a `b,<threshold>` row, then the p x p matrix.
void write_model_csv(const std::string& path, const Eigen::MatrixXd& m, double threshold) {
    std::ofstream out(path);
    require(static_cast<bool>(out), ErrorCode::Config, "cannot write " + path);
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << "m" << c;
    out << "\nb," << format_double(threshold) << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << format_double(m(r, c));
        out << '\n';
    }
}

double first_feature(std::span<const double> x) { return x[0]; }

// ------------------------------------------------------------------ estimate

struct EstimateArgs {
    std::vector<std::string> data;
    std::string kernel = "abs_diff";
    std::string estimator = "complete";
    std::string scheme = "with_replacement";
    std::uint64_t b = 0;
    std::uint64_t seed = 0;
    std::uint64_t cap = kDefaultEnumerationCap;
    bool parallel = false;
    double threshold = 2.0;
    std::string matrix;
    std::string partitions;
    std::size_t model = 1;
    std::string termset_out;
    std::string out;
};

std::unique_ptr<Kernel> make_kernel(const EstimateArgs& a, const SampleSet& samples) {
    const std::size_t k = samples.blocks();
    auto need_one_sample = [&] {
        require(k == 1, ErrorCode::Config, "kernel '" + a.kernel + "' takes exactly one data file");
    };
    if (a.kernel == "abs_diff") {
        need_one_sample();
        return std::make_unique<FunctionKernel>(std::vector<std::size_t>{2}, [](const SampleSet& s, TupleRef t) {
            return std::abs(s.block(0).row(t[0])[0] - s.block(0).row(t[1])[0]);
        });
    }
    if (a.kernel == "sq_dist") {
        need_one_sample();
        return std::make_unique<FunctionKernel>(std::vector<std::size_t>{2}, [](const SampleSet& s, TupleRef t) {
            return squared_euclidean_distance(s.block(0).row(t[0]), s.block(0).row(t[1]));
        });
    }
    if (a.kernel == "metric_hinge") {
        need_one_sample();
        double b = a.threshold;
        const auto p = static_cast<Eigen::Index>(samples.block(0).dim());
        Eigen::MatrixXd m = a.matrix.empty() ? Eigen::MatrixXd::Identity(p, p) : read_matrix_csv(a.matrix, &b);
        return std::make_unique<MetricHingeKernel>(MetricModel(m, b));
    }
    if (a.kernel == "clustering") {
        need_one_sample();
        require(!a.partitions.empty(), ErrorCode::Config, "clustering kernel needs --partitions");
        const auto parts = load_partitions_csv(a.partitions);
        require(a.model >= 1 && a.model <= parts.size(), ErrorCode::Config, "--model is out of range");
        return std::make_unique<ClusteringKernel>(euclidean_distance, parts[a.model - 1]);
    }
    if (a.kernel == "ranking") {
        need_one_sample();
        return std::make_unique<RankingKernel>(score_rule(first_feature));
    }
    if (a.kernel == "vus") return std::make_unique<VusKernel>(first_feature, k);
    fail(ErrorCode::Config, "unknown kernel '" + a.kernel + "'");
}

int run_estimate(const EstimateArgs& a) {
    const SampleSet samples = load_csv_dataset(a.data);
    const auto kernel = make_kernel(a, samples);
    const IndexSpace space(samples.sizes(), kernel->degrees());
    EstimatorOptions opt;
    opt.execution = a.parallel ? Execution::Parallel : Execution::Sequential;
    opt.enumeration_cap = a.cap;

    std::optional<EstimateResult> r;
    if (a.estimator == "complete") {
        r = complete_u(*kernel, samples, space, opt);
    } else {
        require(a.estimator == "incomplete" || a.estimator == "ht", ErrorCode::Config,
                "unknown estimator '" + a.estimator + "'");
        require(a.b >= 1, ErrorCode::Config, "--B is required for sampled estimators");
        Rng rng(a.seed);
        const TermSet terms = sample_terms(parse_scheme(a.scheme), space, a.b, rng);
        if (!a.termset_out.empty()) {
            std::ofstream ts(a.termset_out);
            require(static_cast<bool>(ts), ErrorCode::Config, "cannot write " + a.termset_out);
            write_termset(ts, terms);
        }
        r = a.estimator == "incomplete" ? incomplete_u(*kernel, samples, terms, opt)
                                        : horvitz_thompson(*kernel, samples, terms, opt);
    }
    Output out(a.out);
    out.stream() << "estimator,kernel,scheme,value,terms_used,cardinality,seed\n"
                 << a.estimator << ',' << a.kernel << ',' << r->scheme << ',' << format_double(r->value) << ','
                 << r->terms_used << ',' << space.cardinality().str() << ','
                 << (r->seed ? std::to_string(*r->seed) : "NA") << '\n';
    return 0;
}

// -------------------------------------------------------------------- bounds

struct BoundArgs {
    std::string kind = "incomplete_vs_complete";
    double m = 1.0;
    double v = 1.0;
    std::optional<std::uint64_t> n_blocks;
    std::optional<double> log_lambda;
    std::optional<std::string> cardinality;
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> degrees;
    std::uint64_t b = 1;
    double delta = 0.05;
    std::optional<std::uint64_t> pooled_n;
    std::size_t model = 1;
    std::optional<double> envelope;
};

int run_bounds(const BoundArgs& a, const std::string& out_path) {
    BoundInputs in;
    in.kernel_bound = a.m;
    in.vc_dimension = a.v;
    in.b = a.b;
    in.delta = a.delta;
    if (!a.sizes.empty() || !a.degrees.empty()) {
        const IndexSpace space(a.sizes, a.degrees);
        in = BoundInputs::from_space(space, a.m, a.v, a.b, a.delta);
    }
    if (a.cardinality) {
        BigInt card;
        try {
            card = BigInt(*a.cardinality);
        } catch (const std::exception&) {
            fail(ErrorCode::Config, "--cardinality must be an integer");
        }
        require(card >= 1, ErrorCode::Config, "--cardinality must be >= 1");
        in.log_lambda = std::log1p(static_cast<double>(card));
    }
    if (a.n_blocks) in.min_blocks = *a.n_blocks;
    if (a.log_lambda) in.log_lambda = *a.log_lambda;
    if (a.pooled_n) in.pooled_n = *a.pooled_n;

    double value = 0.0;
    if (a.kind == "complete") {
        value = complete_deviation_bound(in);
    } else if (a.kind == "incomplete_vs_complete") {
        value = incomplete_vs_complete_bound(in);
    } else if (a.kind == "incomplete_total") {
        value = incomplete_total_bound(in);
    } else if (a.kind == "ht_bernoulli") {
        value = ht_deviation_bound(in, Scheme::Bernoulli);
    } else if (a.kind == "ht_without_replacement") {
        value = ht_deviation_bound(in, Scheme::WithoutReplacement);
    } else if (a.kind == "penalty") {
        PenaltyInputs p{in.b, in.pooled_n, in.min_blocks, in.log_lambda, a.envelope.value_or(a.m)};
        value = penalty(p, ModelSpec{a.model, a.v, a.m, 0.0});
    } else {
        fail(ErrorCode::Config, "unknown bound kind '" + a.kind + "'");
    }
    Output out(out_path);
    out.stream() << "kind,M,V,N,log_lambda,B,delta,n,m,value\n"
                 << a.kind << ',' << format_double(in.kernel_bound) << ',' << format_double(in.vc_dimension) << ','
                 << in.min_blocks << ',' << format_double(in.log_lambda) << ',' << in.b << ','
                 << format_double(in.delta) << ',' << in.pooled_n << ',' << a.model << ',' << format_double(value)
                 << '\n';
    return 0;
}

// -------------------------------------------------------------- select-model

int run_select_model(const std::string& models_path, const PenaltyInputs& base, std::optional<double> envelope,
                     const std::string& out_path) {
    const auto rows = csv::read_file(models_path);
    require(rows.size() >= 2, ErrorCode::ParseError, models_path + ": expected a header and at least one model");
    const std::vector<std::string> want{"model_index", "vc_dimension", "kernel_bound", "risk"};
    require(rows[0].fields == want, ErrorCode::ParseError,
            models_path + ": header must be model_index,vc_dimension,kernel_bound,risk");
    std::vector<ModelSpec> models;
    double sup_m = 0.0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        require(row.fields.size() == 4, ErrorCode::ParseError,
                models_path + ": ragged row at line " + std::to_string(row.line));
        const long long idx = csv::parse_int(row.fields[0], row.line, 0);
        require(idx >= 1, ErrorCode::ParseError, models_path + ": model_index must be >= 1 at line " +
                                                     std::to_string(row.line));
        ModelSpec m{static_cast<std::size_t>(idx), csv::parse_double(row.fields[1], row.line, 1),
                    csv::parse_double(row.fields[2], row.line, 2), csv::parse_double(row.fields[3], row.line, 3)};
        sup_m = std::max(sup_m, m.kernel_bound);
        models.push_back(m);
    }
    PenaltyInputs in = base;
    in.envelope = envelope.value_or(sup_m);
    const Selection sel = select_model(models, in);
    Output out(out_path);
    out.stream() << "model_index,risk,penalty,criterion,selected\n";
    for (std::size_t i = 0; i < models.size(); ++i) {
        out.stream() << models[i].model_index << ',' << format_double(models[i].risk) << ','
                     << format_double(sel.penalties[i]) << ',' << format_double(sel.criteria[i]) << ','
                     << (models[i].model_index == sel.model_index ? 1 : 0) << '\n';
    }
    return 0;
}

// ----------------------------------------------------------------------- sgd

struct SgdArgs {
    std::string data;
    double threshold = 2.0;
    std::string mode = "incomplete";
    std::uint64_t b = 0;
    std::size_t n_prime = 0;
    std::size_t steps = 1000;
    double eta0 = 10.0;
    std::string projection = "final_only";
    std::uint64_t seed = 0;
    std::size_t record_every = 100;
    std::size_t eval_pairs = 10000;
    std::string model_out;
    std::string out;
};

int run_sgd(const SgdArgs& a) {
    const SampleSet samples = load_csv_dataset({a.data});
    const Sample& s = samples.block(0);
    require(s.has_labels(), ErrorCode::Config, "sgd needs a labeled dataset");
    const auto p = static_cast<Eigen::Index>(s.dim());
    const MetricHingeObjective objective(p, a.threshold);

    SgdConfig c;
    c.steps = a.steps;
    c.eta0 = a.eta0;
    c.seed = a.seed;
    c.record_every = a.record_every;
    if (a.mode == "incomplete") {
        c.mode = GradientMode::Incomplete;
        c.b = a.b;
    } else if (a.mode == "complete_subsample") {
        c.mode = GradientMode::CompleteSubsample;
        c.subsample_sizes = {a.n_prime};
    } else if (a.mode == "full") {
        c.mode = GradientMode::Full;
    } else {
        fail(ErrorCode::Config, "unknown gradient mode '" + a.mode + "'");
    }
    if (a.projection == "every_step") {
        c.projection = ProjectionPolicy::EveryStep;
    } else {
        require(a.projection == "final_only", ErrorCode::Config, "unknown projection policy '" + a.projection + "'");
        c.projection = ProjectionPolicy::FinalOnly;
    }

    Rng eval_rng = Rng(a.seed).split(0xe7a1);
    const PairBatch eval = PairBatch::build(s, random_pairs(s.size(), a.eval_pairs, eval_rng));
    const RiskProbe probe = [&](const Eigen::VectorXd& theta) {
        Eigen::VectorXd projected = theta;
        objective.project(projected);
        return hinge_loss_sum(eval, objective.as_matrix(projected), a.threshold) / static_cast<double>(eval.size());
    };
    const SgdResult r = sgd(objective, samples, c, Eigen::VectorXd::Zero(p * p), probe);

    Output out(a.out);
    out.stream() << "t,risk,gradient_norm\n";
    for (const auto& rec : r.trajectory)
        out.stream() << rec.t << ',' << format_double(*rec.risk) << ',' << format_double(rec.gradient_norm) << '\n';
    if (!a.model_out.empty()) write_model_csv(a.model_out, objective.as_matrix(r.theta), a.threshold);
    return 0;
}

// ---------------------------------------------------------------- experiment

struct ExperimentArgs {
    std::string config;
    std::vector<std::string> set;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    bool record_timing = false;
    bool plot_data = false;
    std::string out;
};

int run_experiment(const std::string& id, const ExperimentArgs& a) {
    Config cfg = a.config.empty() ? Config() : Config::load(a.config);
    for (const auto& kv : a.set) {
        const auto eq = kv.find('=');
        require(eq != std::string::npos, ErrorCode::Config, "--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (a.seed) cfg.set_json(id + ".seed", *a.seed);
    if (a.record_timing) cfg.set_json(id + ".record_timing", true);

    ExperimentReport rep;
    if (id == "one-time-sampling") {
        if (a.trials) cfg.set_json(id + ".trials", *a.trials);
        rep = run_one_time_sampling(OneTimeSamplingConfig::from(cfg));
    } else if (id == "sgd-compare") {
        if (a.trials) cfg.set_json(id + ".runs", *a.trials);
        rep = run_sgd_compare(SgdCompareConfig::from(cfg));
    } else {
        if (a.trials) cfg.set_json(id + ".trials", *a.trials);
        rep = run_model_select(ModelSelectConfig::from(cfg));
    }
    Output out(a.out);
    write_report(out.stream(), rep, a.plot_data);
    return 0;
}

// ------------------------------------------------------------------ gen-data

struct GenArgs {
    std::string kind = "mixture";
    std::size_t n = 2000;
    std::size_t dim = 40;
    std::size_t classes = 10;
    std::size_t subspace_dim = 15;
    double variance = 0.02;
    double mean_scale = 0.25;
    double separation = 12.0;
    double spread = 1.0;
    std::uint64_t seed = 1;
    std::string out;
    std::string test_out;
    std::size_t n_test = 1000;
};

int run_gen_data(const GenArgs& a) {
    Sample train;
    std::optional<Sample> test;
    if (a.kind == "mixture") {
        const Rng root(a.seed);
        GaussianMixture mixture(a.dim, a.classes, a.subspace_dim, a.variance, root.split(0).seed(), a.mean_scale);
        Rng r1 = root.split(1);
        train = mixture.sample(a.n, r1);
        if (!a.test_out.empty()) {
            Rng r2 = root.split(2);
            test = mixture.sample(a.n_test, r2);
        }
    } else if (a.kind == "clusters") {
        train = generate_separated_clusters(a.dim, a.classes, a.n, a.separation, a.spread, Rng(a.seed).split(0).seed());
    } else {
        fail(ErrorCode::Config, "unknown data kind '" + a.kind + "'");
    }
    Output out(a.out);
    csv::write_sample(out.stream(), train);
    if (test) csv::write_sample_file(a.test_out, *test);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Incomplete U-statistics: estimation, bounds, model selection, SGD and experiments"};
    app.require_subcommand(1);

    EstimateArgs est;
    auto* c_est = app.add_subcommand("estimate", "Complete, incomplete or Horvitz-Thompson estimate on CSV data");
    c_est->add_option("--data", est.data, "Sample CSV, one per block")->required();
    c_est->add_option("--kernel", est.kernel, "abs_diff | sq_dist | metric_hinge | clustering | ranking | vus");
    c_est->add_option("--estimator", est.estimator, "complete | incomplete | ht");
    c_est->add_option("--scheme", est.scheme, "with_replacement | without_replacement | bernoulli");
    c_est->add_option("--B", est.b, "Number of terms (expected number for bernoulli)");
    c_est->add_option("--seed", est.seed);
    c_est->add_option("--cap", est.cap, "Refuse complete enumeration above this many terms");
    c_est->add_flag("--parallel", est.parallel, "Chunked OpenMP reduction");
    c_est->add_option("--threshold", est.threshold, "metric_hinge threshold b");
    c_est->add_option("--matrix", est.matrix, "metric_hinge model CSV (default identity)");
    c_est->add_option("--partitions", est.partitions, "clustering partitions CSV");
    c_est->add_option("--model", est.model, "clustering: use partition P_m");
    c_est->add_option("--termset-out", est.termset_out, "Write the sampled terms to this CSV");
    c_est->add_option("--out", est.out);

    BoundArgs bnd;
    std::string bnd_out;
    auto* c_bnd = app.add_subcommand("bounds", "Evaluate a deviation bound or penalty");
    c_bnd->add_option("--kind", bnd.kind,
                      "complete | incomplete_vs_complete | incomplete_total | ht_bernoulli | "
                      "ht_without_replacement | penalty");
    c_bnd->add_option("--M", bnd.m, "Kernel bound (M_m for penalty)");
    c_bnd->add_option("--V", bnd.v, "VC dimension");
    c_bnd->add_option("--N", bnd.n_blocks, "min_k floor(n_k/d_k)");
    c_bnd->add_option("--log-lambda", bnd.log_lambda, "ln(1 + #Lambda)");
    c_bnd->add_option("--cardinality", bnd.cardinality, "#Lambda as an integer");
    c_bnd->add_option("--sizes", bnd.sizes, "Sample sizes; with --degrees derives N, #Lambda and n")->delimiter(',');
    c_bnd->add_option("--degrees", bnd.degrees)->delimiter(',');
    c_bnd->add_option("--B", bnd.b);
    c_bnd->add_option("--delta", bnd.delta);
    c_bnd->add_option("--n", bnd.pooled_n, "Pooled sample size (penalty)");
    c_bnd->add_option("--m", bnd.model, "Model index (penalty)");
    c_bnd->add_option("--envelope", bnd.envelope, "Envelope M >= sup M_m (penalty; default --M)");
    c_bnd->add_option("--out", bnd_out);

    std::string sel_models, sel_out;
    PenaltyInputs sel_in;
    std::optional<double> sel_env;
    auto* c_sel = app.add_subcommand("select-model", "Penalized model selection from a table of risks");
    c_sel->add_option("--models", sel_models, "CSV: model_index,vc_dimension,kernel_bound,risk")->required();
    c_sel->add_option("--B", sel_in.b)->required();
    c_sel->add_option("--n", sel_in.pooled_n)->required();
    c_sel->add_option("--N", sel_in.min_blocks)->required();
    c_sel->add_option("--log-lambda", sel_in.log_lambda)->required();
    c_sel->add_option("--envelope", sel_env, "Envelope M (default: largest kernel_bound)");
    c_sel->add_option("--out", sel_out);

    SgdArgs sg;
    auto* c_sgd = app.add_subcommand("sgd", "Metric learning by SGD on a labeled CSV");
    c_sgd->add_option("--data", sg.data)->required();
    c_sgd->add_option("--threshold", sg.threshold);
    c_sgd->add_option("--mode", sg.mode, "incomplete | complete_subsample | full");
    c_sgd->add_option("--B", sg.b, "Terms per step (incomplete)");
    c_sgd->add_option("--n-prime", sg.n_prime, "Subsample size per step (complete_subsample)");
    c_sgd->add_option("--steps", sg.steps);
    c_sgd->add_option("--eta0", sg.eta0, "Step size 1/(eta0 t)");
    c_sgd->add_option("--projection", sg.projection, "every_step | final_only");
    c_sgd->add_option("--seed", sg.seed);
    c_sgd->add_option("--record-every", sg.record_every);
    c_sgd->add_option("--eval-pairs", sg.eval_pairs, "Random pairs used for the risk column");
    c_sgd->add_option("--model-out", sg.model_out, "Write the final matrix and threshold");
    c_sgd->add_option("--out", sg.out);

    ExperimentArgs ex;
    std::string ex_id;
    auto* c_ex = app.add_subcommand("experiment", "Run an experiment pipeline");
    c_ex->add_option("id", ex_id, "one-time-sampling | sgd-compare | model-select")
        ->required()
        ->check(CLI::IsMember({"one-time-sampling", "sgd-compare", "model-select"}));
    c_ex->add_option("--config", ex.config, "Config file ([section] and key = JSON value lines)");
    c_ex->add_option("--set", ex.set, "Override a config key: key=value (repeatable)");
    c_ex->add_option("--seed", ex.seed);
    c_ex->add_option("--trials", ex.trials, "Trials (runs for sgd-compare)");
    c_ex->add_flag("--record-timing", ex.record_timing, "Record wall times (output is no longer reproducible)");
    c_ex->add_flag("--plot-data", ex.plot_data, "Emit tidy long-format CSV");
    c_ex->add_option("--out", ex.out);

    GenArgs gen;
    auto* c_gen = app.add_subcommand("gen-data", "Generate a synthetic dataset");
    c_gen->add_option("--kind", gen.kind, "mixture | clusters");
    c_gen->add_option("--n", gen.n);
    c_gen->add_option("--dim", gen.dim);
    c_gen->add_option("--classes", gen.classes, "Classes (mixture) or clusters");
    c_gen->add_option("--subspace-dim", gen.subspace_dim);
    c_gen->add_option("--variance", gen.variance);
    c_gen->add_option("--mean-scale", gen.mean_scale);
    c_gen->add_option("--separation", gen.separation);
    c_gen->add_option("--spread", gen.spread);
    c_gen->add_option("--seed", gen.seed);
    c_gen->add_option("--out", gen.out);
    c_gen->add_option("--test-out", gen.test_out, "Also write a test sample from the same mixture");
    c_gen->add_option("--n-test", gen.n_test);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*c_est) return run_estimate(est);
        if (*c_bnd) return run_bounds(bnd, bnd_out);
        if (*c_sel) return run_select_model(sel_models, sel_in, sel_env, sel_out);
        if (*c_sgd) return run_sgd(sg);
        if (*c_ex) return run_experiment(ex_id, ex);
        if (*c_gen) return run_gen_data(gen);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.is_input_error() ? kExitConfig : kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return 0;
}

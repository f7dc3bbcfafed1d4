// Copyright 2026 The gcans Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "gcans/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "json.hpp"

#include "gcans/statevector.hpp"

namespace gcans::bench {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

double cost_usd(std::uint64_t iterations, std::uint64_t shots, std::uint64_t terms) {
    return 0.3 * static_cast<double>(terms) * static_cast<double>(iterations) +
           0.00035 * static_cast<double>(shots);
}

double time_seconds(std::uint64_t iterations, std::uint64_t shots, std::uint64_t terms) {
    return 0.1 * static_cast<double>(terms) * static_cast<double>(iterations) +
           0.0002 * static_cast<double>(shots);
}

Observable ProblemSpec::observable() const {
    if (kind == Kind::tfim) {
        return tfim(num_qubits, field, boundary);
    }
    std::ifstream in(hamiltonian_file, std::ios::binary);
    if (!in) {
        throw SpecError(fmt::format("cannot open Hamiltonian file '{}'", hamiltonian_file.string()));
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_observable(text.str());
}

std::string ProblemSpec::describe() const {
    if (kind == Kind::tfim) {
        return fmt::format("tfim(n={}, g={}, {}) depth {}", num_qubits, field,
                           boundary == Boundary::open ? "open" : "periodic", depth);
    }
    return fmt::format("{} depth {}", hamiltonian_file.string(), depth);
}

OptimizerConfig OptimizerSpec::config(double default_lipschitz, ShotCount budget) const {
    const double l = lipschitz.value_or(default_lipschitz);
    OptimizerConfig c = default_config(l, budget, learning_rate_multiplier);
    if (mu) c.mu = *mu;
    if (min_shots) c.min_shots = *min_shots;
    if (max_shots_per_component) c.max_shots_per_component = *max_shots_per_component;
    if (icans_bias) c.icans_bias = *icans_bias;
    if (adam_beta1) c.adam_beta1 = *adam_beta1;
    if (adam_beta2) c.adam_beta2 = *adam_beta2;
    if (adam_epsilon) c.adam_epsilon = *adam_epsilon;
    if (adam_shots) c.adam_shots = *adam_shots;
    if (sgd_initial_shots) c.sgd_initial_shots = *sgd_initial_shots;
    if (sgd_common_ratio) c.sgd_common_ratio = *sgd_common_ratio;
    return c;
}

void ExperimentSpec::validate() const {
    if (budget == 0) {
        throw SpecError("budget must be positive");
    }
    if (seeds.empty()) {
        throw SpecError("seeds must be non-empty");
    }
    if (optimizers.empty()) {
        throw SpecError("at least one optimizer is required");
    }
    if (problem.depth == 0) {
        throw SpecError("depth must be positive");
    }
    if (problem.kind == ProblemSpec::Kind::file && !std::filesystem::exists(problem.hamiltonian_file)) {
        throw SpecError(
            fmt::format("Hamiltonian file '{}' does not exist", problem.hamiltonian_file.string()));
    }
    if (threshold && !(*threshold > 0.0)) {
        throw SpecError("threshold must be positive");
    }
    if (!(threshold_fraction > 0.0)) {
        throw SpecError("threshold_fraction must be positive");
    }
    std::set<std::string> labels;
    for (const auto &o : optimizers) {
        if (!labels.insert(o.label).second) {
            throw SpecError(fmt::format("duplicate optimizer label '{}'", o.label));
        }
    }
    std::set<std::uint64_t> unique(seeds.begin(), seeds.end());
    if (unique.size() != seeds.size()) {
        throw SpecError("seeds must be distinct");
    }
    for (const auto &[axis, values] : sweep_values) {
        parse_axis(axis);
        if (values.empty()) {
            throw SpecError(fmt::format("sweep axis '{}' has no values", axis));
        }
    }
}

namespace {

/// Consumes keys from a JSON object; leftover keys are reported as unknown.
class ObjectReader {
  public:
    ObjectReader(const Json &obj, std::string where) : obj_(obj), where_(std::move(where)) {
        if (!obj_.is_object()) {
            throw SpecError(fmt::format("{}: expected an object", where_));
        }
    }

    const Json *get(const std::string &key) {
        seen_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    const Json &require(const std::string &key) {
        const Json *v = get(key);
        if (v == nullptr) {
            throw SpecError(fmt::format("{}: missing key '{}'", where_, key));
        }
        return *v;
    }

    template <typename T> T as(const Json &v, const std::string &key) const {
        try {
            if constexpr (std::is_same_v<T, double>) {
                if (!v.is_number()) throw SpecError("");
            } else if constexpr (std::is_integral_v<T>) {
                // 2e6 is accepted as long as it is a whole non-negative number
                if (v.is_number_float()) {
                    const double x = v.get<double>();
                    if (!(x >= 0.0 && x < 1.8e19 && std::floor(x) == x)) throw SpecError("");
                    return static_cast<T>(x);
                }
                if (!v.is_number_unsigned()) throw SpecError("");
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (!v.is_string()) throw SpecError("");
            }
            return v.get<T>();
        } catch (const std::exception &) {
            throw SpecError(fmt::format("{}: key '{}' has the wrong type", where_, key));
        }
    }

    template <typename T> void optional(const std::string &key, std::optional<T> &out) {
        if (const Json *v = get(key)) {
            out = as<T>(*v, key);
        }
    }

    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (!seen_.contains(it.key())) {
                throw SpecError(fmt::format("{}: unknown key '{}'", where_, it.key()));
            }
        }
    }

    [[nodiscard]] const std::string &where() const { return where_; }

  private:
    const Json &obj_;
    std::string where_;
    std::set<std::string> seen_;
};

ProblemSpec parse_problem(const Json &j, const std::filesystem::path &base_dir) {
    ObjectReader r(j, "problem");
    ProblemSpec p;
    p.depth = r.as<std::size_t>(r.require("depth"), "depth");
    const Json *t = r.get("tfim");
    const Json *f = r.get("hamiltonian_file");
    if ((t == nullptr) == (f == nullptr)) {
        throw SpecError("problem: exactly one of 'tfim' and 'hamiltonian_file' is required");
    }
    if (t != nullptr) {
        ObjectReader tr(*t, "problem.tfim");
        p.kind = ProblemSpec::Kind::tfim;
        p.num_qubits = tr.as<std::size_t>(tr.require("n"), "n");
        p.field = tr.as<double>(tr.require("g"), "g");
        if (const Json *b = tr.get("boundary")) {
            try {
                p.boundary = parse_boundary(tr.as<std::string>(*b, "boundary"));
            } catch (const std::invalid_argument &e) {
                throw SpecError(fmt::format("problem.tfim: {}", e.what()));
            }
        }
        tr.finish();
    } else {
        p.kind = ProblemSpec::Kind::file;
        std::filesystem::path path = r.as<std::string>(*f, "hamiltonian_file");
        p.hamiltonian_file = path.is_absolute() || base_dir.empty() ? path : base_dir / path;
    }
    r.finish();
    return p;
}

OptimizerSpec parse_optimizer_entry(const Json &j, std::size_t index) {
    OptimizerSpec o;
    auto kind_of = [&](const std::string &name) {
        try {
            return parse_optimizer(name);
        } catch (const std::invalid_argument &e) {
            throw SpecError(fmt::format("optimizers[{}]: {}", index, e.what()));
        }
    };
    if (j.is_string()) {
        o.kind = kind_of(j.get<std::string>());
        o.label = std::string(to_string(o.kind));
        return o;
    }
    ObjectReader r(j, fmt::format("optimizers[{}]", index));
    o.kind = kind_of(r.as<std::string>(r.require("name"), "name"));
    o.label = std::string(to_string(o.kind));
    if (const Json *v = r.get("label")) {
        o.label = r.as<std::string>(*v, "label");
        if (o.label.empty() || o.label.find_first_of("/\\") != std::string::npos) {
            throw SpecError(fmt::format("{}: invalid label '{}'", r.where(), o.label));
        }
    }
    if (const Json *v = r.get("learning_rate_multiplier")) {
        o.learning_rate_multiplier = r.as<double>(*v, "learning_rate_multiplier");
    }
    r.optional("lipschitz", o.lipschitz);
    r.optional("mu", o.mu);
    r.optional("min_shots", o.min_shots);
    r.optional("max_shots_per_component", o.max_shots_per_component);
    r.optional("icans_bias", o.icans_bias);
    r.optional("adam_beta1", o.adam_beta1);
    r.optional("adam_beta2", o.adam_beta2);
    r.optional("adam_epsilon", o.adam_epsilon);
    r.optional("adam_shots", o.adam_shots);
    r.optional("sgd_initial_shots", o.sgd_initial_shots);
    r.optional("sgd_common_ratio", o.sgd_common_ratio);
    r.finish();
    return o;
}

} // namespace

ExperimentSpec parse_spec(std::string_view text, const std::filesystem::path &base_dir) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw SpecError(fmt::format("spec is not valid JSON: {}", e.what()));
    }
    ObjectReader r(j, "spec");
    ExperimentSpec spec;
    spec.problem = parse_problem(r.require("problem"), base_dir);

    const Json &opts = r.require("optimizers");
    if (!opts.is_array()) {
        throw SpecError("spec: 'optimizers' must be an array");
    }
    for (std::size_t i = 0; i < opts.size(); ++i) {
        spec.optimizers.push_back(parse_optimizer_entry(opts[i], i));
    }

    spec.budget = r.as<ShotCount>(r.require("budget"), "budget");
    const Json &seeds = r.require("seeds");
    if (!seeds.is_array()) {
        throw SpecError("spec: 'seeds' must be an array");
    }
    for (const auto &s : seeds) {
        spec.seeds.push_back(r.as<std::uint64_t>(s, "seeds"));
    }
    r.optional("threshold", spec.threshold);
    if (const Json *v = r.get("threshold_fraction")) {
        spec.threshold_fraction = r.as<double>(*v, "threshold_fraction");
    }
    r.optional("ground_energy", spec.ground_energy);
    if (const Json *v = r.get("strategy")) {
        try {
            spec.strategy = parse_strategy(r.as<std::string>(*v, "strategy"));
        } catch (const std::invalid_argument &e) {
            throw SpecError(fmt::format("spec: {}", e.what()));
        }
    }
    if (const Json *v = r.get("output_dir")) {
        spec.output_dir = r.as<std::string>(*v, "output_dir");
    }
    if (const Json *v = r.get("threads")) {
        spec.threads = r.as<std::size_t>(*v, "threads");
    }
    if (const Json *v = r.get("sweep")) {
        ObjectReader sr(*v, "sweep");
        for (auto axis : {SweepAxis::learning_rate_multiplier, SweepAxis::common_ratio}) {
            const std::string key(to_string(axis));
            if (const Json *vals = sr.get(key)) {
                if (!vals->is_array()) {
                    throw SpecError(fmt::format("sweep: '{}' must be an array", key));
                }
                auto &out = spec.sweep_values[key];
                for (const auto &x : *vals) {
                    out.push_back(sr.as<double>(x, key));
                }
            }
        }
        sr.finish();
    }
    r.finish();
    spec.validate();
    return spec;
}

ExperimentSpec load_spec(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SpecError(fmt::format("cannot open spec file '{}'", path.string()));
    }
    std::ostringstream text;
    text << in.rdbuf();
    ExperimentSpec spec = parse_spec(text.str(), path.parent_path());
    if (const char *dir = std::getenv("GCANS_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
        spec.output_dir = dir;
    }
    return spec;
}

std::vector<const CellResult *> ExperimentResult::cells_for(std::string_view label) const {
    std::vector<const CellResult *> out;
    for (const auto &c : cells) {
        if (c.label == label) {
            out.push_back(&c);
        }
    }
    return out;
}

std::optional<std::size_t> first_record_within(const OptimizationTrace &trace,
                                               double ground_energy, double epsilon) {
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        if (trace.records[i].energy - ground_energy <= epsilon) {
            return i;
        }
    }
    return std::nullopt;
}

std::string trace_csv(const OptimizationTrace &trace) {
    std::string out = "k,cumulative_shots,exact_energy,estimated_grad_norm,shots_this_iteration,min_s,max_s\n";
    for (const auto &r : trace.records) {
        const auto [lo, hi] = std::minmax_element(r.shots.begin(), r.shots.end());
        out += fmt::format("{},{},{:.17g},{:.17g},{},{},{}\n", r.k, r.cumulative_shots, r.energy,
                           r.grad_norm, r.shots_this_iteration, r.shots.empty() ? 0 : *lo,
                           r.shots.empty() ? 0 : *hi);
    }
    return out;
}

namespace {

struct Prepared {
    Observable observable;
    VqeProblem problem;
    double ground_energy;
    double lipschitz;
};

Prepared prepare(const ExperimentSpec &spec) {
    spec.validate();
    Observable obs = spec.problem.observable();
    double e0 = 0.0;
    if (spec.ground_energy) {
        e0 = *spec.ground_energy;
    } else if (obs.num_qubits() <= dense_max_qubits) {
        e0 = ground_energy_dense(obs);
    } else {
        throw SpecError(fmt::format("{} qubits exceeds the dense oracle limit of {}; "
                                    "supply 'ground_energy' in the spec",
                                    obs.num_qubits(), dense_max_qubits));
    }
    VqeProblem problem{build_ansatz(obs.num_qubits(), spec.problem.depth), obs};
    const double l = problem.lipschitz();
    return {std::move(obs), std::move(problem), e0, l};
}

/// Runs `count` independent jobs on up to `threads` workers; rethrows the first failure.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)> &job) {
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

CellResult run_cell(const Prepared &prep, const VqeOracle &oracle, const ExperimentSpec &spec,
                    const OptimizerSpec &opt, const OptimizerConfig &config, std::uint64_t seed) {
    Rng start(seed, 0);
    const auto theta0 = random_initial_theta(prep.problem.dimension(), start);
    Rng rng(seed, 1);
    CellResult cell;
    cell.label = opt.label;
    cell.kind = opt.kind;
    cell.seed = seed;
    cell.trace = run_optimizer(opt.kind, oracle, config, theta0, rng);
    cell.threshold = spec.threshold.value_or(spec.threshold_fraction *
                                             (cell.trace.initial_energy - prep.ground_energy));
    if (auto idx = first_record_within(cell.trace, prep.ground_energy, cell.threshold)) {
        cell.shots_to_threshold = cell.trace.records[*idx].cumulative_shots;
        cell.iterations_to_threshold = *idx + 1;
    }
    return cell;
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    }
    out << content;
    if (!out) {
        throw std::runtime_error(fmt::format("write failed for '{}'", path.string()));
    }
}

void ensure_dir(const std::filesystem::path &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
    }
}

double median(std::vector<double> v) {
    if (v.empty()) {
        return std::nan("");
    }
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// Median with missing values as +infinity; nullopt if the median itself is missing.
std::optional<double> median_with_missing(const std::vector<std::optional<double>> &v) {
    std::vector<double> x;
    for (const auto &e : v) {
        x.push_back(e.value_or(std::numeric_limits<double>::infinity()));
    }
    const double m = median(std::move(x));
    if (!std::isfinite(m)) {
        return std::nullopt;
    }
    return m;
}

OrderedJson optional_json(const std::optional<double> &v) {
    return v ? OrderedJson(*v) : OrderedJson(nullptr);
}

} // namespace

std::string summary_json(const ExperimentSpec &spec, const ExperimentResult &result) {
    OrderedJson root;
    root["problem"] = spec.problem.describe();
    root["ground_energy"] = result.ground_energy;
    root["terms"] = result.terms;
    root["dimension"] = result.dimension;
    root["lipschitz"] = result.lipschitz;
    root["budget"] = spec.budget;
    root["strategy"] = std::string(to_string(spec.strategy));
    OrderedJson runs = OrderedJson::array();
    for (const auto &c : result.cells) {
        OrderedJson r;
        r["optimizer"] = c.label;
        r["seed"] = c.seed;
        r["K"] = c.iterations();
        r["S"] = c.shots();
        r["threshold"] = c.threshold;
        r["shots_to_threshold"] =
            c.shots_to_threshold ? OrderedJson(*c.shots_to_threshold) : OrderedJson(nullptr);
        r["iterations_to_threshold"] =
            c.iterations_to_threshold ? OrderedJson(*c.iterations_to_threshold) : OrderedJson(nullptr);
        r["cost_usd"] = cost_usd(c.iterations(), c.shots(), result.terms);
        r["time_seconds"] = time_seconds(c.iterations(), c.shots(), result.terms);
        r["initial_energy"] = c.trace.initial_energy;
        r["final_energy"] = c.trace.final_energy();
        r["best_energy"] = c.trace.best_energy;
        runs.push_back(std::move(r));
    }
    root["runs"] = std::move(runs);

    OrderedJson medians;
    for (const auto &opt : spec.optimizers) {
        std::vector<double> k;
        std::vector<double> final_energy;
        std::vector<std::optional<double>> to_shots;
        std::vector<std::optional<double>> to_iters;
        for (const auto *c : result.cells_for(opt.label)) {
            k.push_back(static_cast<double>(c->iterations()));
            final_energy.push_back(c->trace.final_energy());
            to_shots.push_back(c->shots_to_threshold
                                   ? std::optional<double>(static_cast<double>(*c->shots_to_threshold))
                                   : std::nullopt);
            to_iters.push_back(c->iterations_to_threshold
                                   ? std::optional<double>(static_cast<double>(*c->iterations_to_threshold))
                                   : std::nullopt);
        }
        OrderedJson m;
        m["K"] = median(k);
        m["final_energy"] = median(final_energy);
        m["shots_to_threshold"] = optional_json(median_with_missing(to_shots));
        m["iterations_to_threshold"] = optional_json(median_with_missing(to_iters));
        medians[opt.label] = std::move(m);
    }
    root["medians"] = std::move(medians);
    return root.dump(2) + "\n";
}

ExperimentResult run_experiment(const ExperimentSpec &spec, bool write_files) {
    const Prepared prep = prepare(spec);
    const VqeOracle oracle(prep.problem, spec.strategy);

    std::vector<OptimizerConfig> configs;
    for (const auto &opt : spec.optimizers) {
        OptimizerConfig c = opt.config(prep.lipschitz, spec.budget);
        try {
            c.validate(opt.kind, prep.problem.dimension());
        } catch (const std::invalid_argument &e) {
            throw SpecError(fmt::format("optimizer '{}': {}", opt.label, e.what()));
        }
        configs.push_back(c);
    }

    ExperimentResult result;
    result.ground_energy = prep.ground_energy;
    result.terms = prep.observable.size();
    result.dimension = prep.problem.dimension();
    result.lipschitz = prep.lipschitz;
    const std::size_t n_seeds = spec.seeds.size();
    result.cells.resize(spec.optimizers.size() * n_seeds);

    if (write_files) {
        ensure_dir(spec.output_dir);
    }
    parallel_for(result.cells.size(), spec.threads, [&](std::size_t i) {
        const std::size_t o = i / n_seeds;
        const std::uint64_t seed = spec.seeds[i % n_seeds];
        result.cells[i] = run_cell(prep, oracle, spec, spec.optimizers[o], configs[o], seed);
        if (write_files) {
            write_file(spec.output_dir / fmt::format("{}_seed{}.csv", spec.optimizers[o].label, seed),
                       trace_csv(result.cells[i].trace));
        }
    });
    if (write_files) {
        write_file(spec.output_dir / "summary.json", summary_json(spec, result));
    }
    return result;
}

SweepAxis parse_axis(std::string_view name) {
    if (name == "learning_rate_multiplier") {
        return SweepAxis::learning_rate_multiplier;
    }
    if (name == "common_ratio") {
        return SweepAxis::common_ratio;
    }
    throw SpecError(fmt::format(
        "invalid sweep axis '{}' (expected learning_rate_multiplier or common_ratio)", name));
}

std::string_view to_string(SweepAxis axis) {
    return axis == SweepAxis::learning_rate_multiplier ? "learning_rate_multiplier" : "common_ratio";
}

double SweepPoint::median_gap() const { return median(normalized_gaps); }

std::optional<double> SweepReport::range(std::string_view label) const {
    std::optional<double> lo;
    std::optional<double> hi;
    for (const auto &p : points) {
        if (p.label != label || !p.feasible) {
            continue;
        }
        const double m = p.median_gap();
        lo = lo ? std::min(*lo, m) : m;
        hi = hi ? std::max(*hi, m) : m;
    }
    if (!lo) {
        return std::nullopt;
    }
    return *hi - *lo;
}

bool SweepReport::complete(std::string_view label) const {
    return std::all_of(points.begin(), points.end(),
                       [&](const SweepPoint &p) { return p.label != label || p.feasible; });
}

std::string sweep_csv(const SweepReport &report) {
    std::string out = fmt::format("optimizer,{},seed,feasible,final_energy,normalized_gap\n",
                                  to_string(report.axis));
    for (const auto &p : report.points) {
        if (!p.feasible) {
            out += fmt::format("{},{:.17g},,0,,\n", p.label, p.value);
            continue;
        }
        for (std::size_t s = 0; s < p.seeds.size(); ++s) {
            out += fmt::format("{},{:.17g},{},1,{:.17g},{:.17g}\n", p.label, p.value, p.seeds[s],
                               p.final_energies[s], p.normalized_gaps[s]);
        }
    }
    return out;
}

SweepReport run_sweep(const ExperimentSpec &spec, SweepAxis axis, bool write_files) {
    const std::string axis_name(to_string(axis));
    auto values_it = spec.sweep_values.find(axis_name);
    if (values_it == spec.sweep_values.end()) {
        throw SpecError(fmt::format("spec has no sweep values for axis '{}'", axis_name));
    }
    const Prepared prep = prepare(spec);
    const VqeOracle oracle(prep.problem, spec.strategy);

    SweepReport report;
    report.axis = axis;
    report.ground_energy = prep.ground_energy;

    struct Job {
        std::size_t point;
        std::size_t seed_index;
        OptimizerSpec opt;
        OptimizerConfig config;
    };
    std::vector<Job> jobs;
    for (const auto &base : spec.optimizers) {
        if (axis == SweepAxis::common_ratio && base.kind != OptimizerKind::sgd_ds) {
            continue;
        }
        for (double value : values_it->second) {
            OptimizerSpec opt = base;
            if (axis == SweepAxis::learning_rate_multiplier) {
                opt.learning_rate_multiplier = value;
            } else {
                opt.sgd_common_ratio = value;
            }
            SweepPoint point;
            point.label = base.label;
            point.value = value;
            const OptimizerConfig config = opt.config(prep.lipschitz, spec.budget);
            try {
                config.validate(opt.kind, prep.problem.dimension());
            } catch (const std::invalid_argument &e) {
                point.feasible = false;
                point.error = e.what();
            }
            if (point.feasible) {
                point.seeds = spec.seeds;
                point.final_energies.resize(spec.seeds.size());
                point.normalized_gaps.resize(spec.seeds.size());
                for (std::size_t s = 0; s < spec.seeds.size(); ++s) {
                    jobs.push_back({report.points.size(), s, opt, config});
                }
            }
            report.points.push_back(std::move(point));
        }
    }
    if (report.points.empty()) {
        throw SpecError(fmt::format("no optimizer in the spec is affected by axis '{}'", axis_name));
    }

    parallel_for(jobs.size(), spec.threads, [&](std::size_t i) {
        const Job &job = jobs[i];
        const std::uint64_t seed = spec.seeds[job.seed_index];
        const CellResult cell = run_cell(prep, oracle, spec, job.opt, job.config, seed);
        auto &point = report.points[job.point];
        point.final_energies[job.seed_index] = cell.trace.final_energy();
        point.normalized_gaps[job.seed_index] =
            (cell.trace.final_energy() - prep.ground_energy) / cell.threshold;
    });

    if (write_files) {
        ensure_dir(spec.output_dir);
        write_file(spec.output_dir / fmt::format("sweep_{}.csv", axis_name), sweep_csv(report));
        OrderedJson root;
        root["axis"] = axis_name;
        root["ground_energy"] = report.ground_energy;
        OrderedJson points = OrderedJson::array();
        for (const auto &p : report.points) {
            OrderedJson j;
            j["optimizer"] = p.label;
            j["value"] = p.value;
            j["feasible"] = p.feasible;
            if (p.feasible) {
                j["median_normalized_gap"] = p.median_gap();
            } else {
                j["error"] = p.error;
            }
            points.push_back(std::move(j));
        }
        root["points"] = std::move(points);
        OrderedJson ranges;
        for (const auto &opt : spec.optimizers) {
            if (axis == SweepAxis::common_ratio && opt.kind != OptimizerKind::sgd_ds) {
                continue;
            }
            OrderedJson r;
            r["range_of_median_gaps"] = optional_json(report.range(opt.label));
            r["complete"] = report.complete(opt.label);
            ranges[opt.label] = std::move(r);
        }
        root["ranges"] = std::move(ranges);
        write_file(spec.output_dir / fmt::format("sweep_{}_summary.json", axis_name),
                   root.dump(2) + "\n");
    }
    return report;
}

double ground(const ProblemSpec &problem) { return ground_energy_dense(problem.observable()); }

} // namespace gcans::bench

#include "cli/commands.hpp"

#include "cli/json_writer.hpp"
#include "cli/run_record.hpp"
#include "cli/state_spec.hpp"

#include "spinlab/errors.hpp"
#include "spinlab/interferometer.hpp"
#include "spinlab/moments.hpp"
#include "spinlab/oracle.hpp"
#include "spinlab/qfi.hpp"
#include "spinlab/squeezing.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace spinlab::cli {

namespace {

struct StateArgs {
    std::string inline_spec;
    std::string file;

    void attach(CLI::App* app) {
        auto* s = app->add_option("--state", inline_spec, "state spec, e.g. fock:4:1");
        auto* f = app->add_option("--state-file", file, "JSON state file with \"v\": 1");
        s->excludes(f);
    }

    StateSpec spec() const {
        if (!file.empty()) return read_state_file(file);
        if (inline_spec.empty()) throw ParseError("one of --state or --state-file is required", 0, 0);
        return parse_state_spec(inline_spec);
    }
};

Json moments_json(const MomentReport& m) {
    return {{"mean", m.mean}, {"second_moment", m.second_moment}, {"variance", m.variance}};
}

std::string format_value(double v) {
    if (std::abs(v) < 1e15 && v == std::floor(v)) return std::to_string(static_cast<long long>(v));
    return format_double(v);
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// ------------------------------------------------------------------ moments

Json cmd_moments(const StateSpec& spec, const Direction& dir) {
    const State state = realize(spec);
    const int n = particle_count(state);
    const CollectiveSpinOp j = collective_spin(n, dir);
    const MomentReport oracle = std::visit([&](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, PureState>)
            return moment_report(s, j);
        else
            return moment_report(mixture_density(s), j);
    }, state);

    std::optional<MomentReport> closed;
    if (spec.kind == StateKind::fock) closed = number_state_moments(n, spec.k, dir);
    if (const auto* m = std::get_if<DiagonalMixture>(&state)) closed = mixture_spin_moments(*m, dir);

    Json out;
    out["oracle"] = moments_json(oracle);
    if (closed) {
        out["closed_form"] = moments_json(*closed);
        out["difference"] = moments_json({closed->mean - oracle.mean, closed->second_moment - oracle.second_moment,
                                          closed->variance - oracle.variance});
    } else {
        out["closed_form"] = "not applicable";
    }
    return out;
}

// ------------------------------------------------------------------ squeeze

Json cmd_squeeze(const StateSpec& spec, const OrthogonalTriplet& triplet) {
    const State state = realize(spec);
    const DensityOperator rho = as_density(state);
    const TothReport t = toth_check(rho, triplet);
    const SqueezingReport xi = xi_parameters(rho, triplet);

    Json violated = Json::array();
    for (std::size_t i = 0; i < 4; ++i)
        if (!t.satisfied[i]) violated.push_back(i + 1);

    Json out;
    out["toth"] = {{"lhs", t.lhs}, {"satisfied", t.satisfied}, {"violated", violated}};
    out["xi"] = {{"xi_w_squared", optional_number(xi.xi_w_squared)},
                 {"xi_s_squared", optional_number(xi.xi_s_squared)},
                 {"numerator", xi.numerator},
                 {"denominator_w", xi.denominator_w},
                 {"denominator_s", xi.denominator_s}};
    if (const auto* m = std::get_if<DiagonalMixture>(&state)) {
        const double z = triplet.n3().z();
        out["ineq3"] = {{"delta", ineq3_delta(*m, std::min(1.0, z * z))},
                        {"threshold_n3z_squared", optional_number(ineq3_threshold(*m))}};
    }
    return out;
}

// ---------------------------------------------------------------------- qfi

std::optional<QfiReport> qfi_closed_form(const StateSpec& spec, const State& state, const Direction& dir) {
    if (spec.kind == StateKind::fock) return qfi_number_state(spec.n, spec.k, dir);
    if (const auto* m = std::get_if<DiagonalMixture>(&state)) return qfi_diagonal_mixture(*m, dir);
    return std::nullopt;
}

Json qfi_json(const QfiReport& r) { return {{"value", r.value}, {"method", to_string(r.method)}}; }

Json cmd_qfi(const StateSpec& spec, const Direction& dir) {
    const State state = realize(spec);
    const QfiReport spectral = qfi_spectral(as_density(state), collective_spin(particle_count(state), dir));
    Json out;
    out["spectral"] = qfi_json(spectral);
    if (const auto closed = qfi_closed_form(spec, state, dir)) {
        out["closed_form"] = qfi_json(*closed);
        out["difference"] = closed->value - spectral.value;
    } else {
        out["closed_form"] = "not applicable";
    }
    return out;
}

// --------------------------------------------------------------------- scan

struct ScanArgs {
    std::string state_template;
    std::string param;
    std::optional<double> from, to, step;
    std::string values;
    std::string quantities;
    std::string dir = "y";
    std::string triplet = "auto-z";
    std::string rot_dir = "y";
    std::string output;
};

OrthogonalTriplet frame_with_n3z_squared(double z2) {
    if (!(z2 >= 0.0 && z2 <= 1.0)) throw DomainError("scan: n3z2 must lie in [0, 1]");
    const Direction n3 = Direction::normalized(std::sqrt(1.0 - z2), 0.0, std::sqrt(z2));
    const Direction n1 = Direction::y_axis();
    return {n1, n3.cross(n1), n3};
}

std::vector<double> scan_values(const ScanArgs& a) {
    std::vector<double> v;
    if (!a.values.empty()) {
        std::string item;
        std::istringstream in(a.values);
        while (std::getline(in, item, ',')) {
            try {
                std::size_t used = 0;
                v.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw ParseError("--values: bad number '" + item + "'", 1, 1);
            }
        }
        return v;
    }
    if (!a.from || !a.to || !a.step) throw ParseError("scan: give --values or all of --from, --to, --step", 0, 0);
    if (*a.step <= 0.0) return v;
    const double span = (*a.to - *a.from) / *a.step;
    if (span < -1e-9) return v;
    const long count = static_cast<long>(std::floor(span + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) v.push_back(*a.from + static_cast<double>(i) * *a.step);
    return v;
}

std::string scan_cell(const std::string& q, const StateSpec& spec, const State& state, const Direction& dir,
                      const OrthogonalTriplet& triplet) {
    auto num = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("undefined"); };
    const int n = particle_count(state);
    if (q == "qfi_closed") {
        const auto c = qfi_closed_form(spec, state, dir);
        return c ? format_double(c->value) : "undefined";
    }
    const DensityOperator rho = as_density(state);
    if (q == "mean" || q == "variance") {
        const MomentReport m = moment_report(rho, collective_spin(n, dir));
        return format_double(q == "mean" ? m.mean : m.variance);
    }
    if (q == "qfi") return format_double(qfi_spectral(rho, collective_spin(n, dir)).value);
    if (q.size() == 4 && q.rfind("lhs", 0) == 0 && q[3] >= '1' && q[3] <= '4')
        return format_double(toth_check(rho, triplet).lhs[static_cast<std::size_t>(q[3] - '1')]);
    if (q == "xi_w_squared") return num(xi_parameters(rho, triplet).xi_w_squared);
    if (q == "xi_s_squared") return num(xi_parameters(rho, triplet).xi_s_squared);
    throw ParseError("--quantity: unknown quantity '" + q +
                         "' (mean, variance, qfi, qfi_closed, lhs1..lhs4, xi_w_squared, xi_s_squared)",
                     1, 1);
}

Json cmd_scan(const ScanArgs& a, std::ostream& out, std::ostream& err) {
    static const std::vector<std::string> params = {"n3z2", "sigma", "p", "n", "theta"};
    if (std::find(params.begin(), params.end(), a.param) == params.end())
        throw ParseError("--param: expected one of n3z2, sigma, p, n, theta", 1, 1);
    const std::vector<double> values = scan_values(a);
    if (values.empty()) throw ParseError("scan: empty range", 0, 0);

    std::vector<std::string> qs;
    {
        std::string item;
        std::istringstream in(a.quantities);
        while (std::getline(in, item, ','))
            if (!item.empty()) qs.push_back(item);
    }
    if (qs.empty()) throw ParseError("--quantity: at least one quantity is required", 0, 0);

    const Direction dir = parse_direction(a.dir, "--dir", err);
    const OrthogonalTriplet base_triplet = parse_triplet(a.triplet, "--triplet", err);
    const Direction rot = parse_direction(a.rot_dir, "--rot-dir", err);

    std::ofstream file;
    if (!a.output.empty()) {
        file.open(a.output);
        if (!file) throw DomainError("--output: cannot open '" + a.output + "'");
    }
    std::ostream& csv = a.output.empty() ? out : file;

    csv << a.param;
    for (const auto& q : qs) csv << "," << q;
    csv << "\n";
    for (const double v : values) {
        const bool substitutes = a.param != "n3z2" && a.param != "theta";
        const StateSpec spec = parse_state_spec(substitutes ? substitute_template(a.state_template, v) : a.state_template);
        State state = realize(spec);
        if (a.param == "theta") {
            if (auto* p = std::get_if<PureState>(&state))
                state = rotate(*p, rot, v);
            else
                throw DomainError("scan: theta sweeps need a pure state");
        }
        const OrthogonalTriplet triplet = a.param == "n3z2" ? frame_with_n3z_squared(v) : base_triplet;
        csv << format_value(v);
        for (const auto& q : qs) {
            // a rotated state no longer matches its spec's closed forms
            if (a.param == "theta" && q == "qfi_closed")
                csv << ",undefined";
            else
                csv << "," << scan_cell(q, spec, state, dir, triplet);
        }
        csv << "\n";
    }
    return {{"rows", values.size()}, {"output", a.output.empty() ? Json("stdout") : Json(a.output)}};
}

// ----------------------------------------------------------------- estimate

Json estimation_json(const PhaseEstimationResult& r) {
    return {{"theta_true", r.theta_true},
            {"mean_estimate", r.mean_estimate},
            {"sample_variance", r.sample_variance},
            {"mean_squared_error", r.mean_squared_error},
            {"qfi", r.qfi},
            {"classical_fisher", r.classical_fisher},
            {"crb_quantum", r.crb_quantum},
            {"crb_classical", r.crb_classical},
            {"variance_over_crb_classical", r.sample_variance / r.crb_classical},
            {"shots", r.shots},
            {"repetitions", r.repetitions},
            {"estimates", r.estimates}};
}

// ------------------------------------------------------------------- oracle

Json suite_json(const oracle::SuiteSummary& s) {
    return {{"all_ok", s.all_ok()},
            {"max_n", s.max_n},
            {"trials", s.trials},
            {"product_variance",
             {{"ok", s.product_variance_ok},
              {"checks", s.product_variance_checks},
              {"max_excess_over_n_over_4", s.product_variance_max_excess},
              {"closed_form_max_error", s.product_closed_form_max_error}}},
            {"determinant_overlap",
             {{"ok", s.determinant_ok}, {"checks", s.determinant_checks}, {"max_error", s.determinant_max_error}}},
            {"dicke_embedding",
             {{"ok", s.dicke_ok}, {"checks", s.dicke_checks}, {"max_error", s.dicke_max_error}}},
            {"spin_squeezing_inequalities",
             {{"ok", s.toth_ok}, {"checks", s.toth_checks}, {"min_bound_slack", s.toth_min_slack}}}};
}

void print_help(const CLI::App& app, std::ostream& out) {
    for (const CLI::App* sub : app.get_subcommands()) {
        out << sub->help();
        return;
    }
    out << app.help();
}

} // namespace

std::string substitute_template(std::string_view tmpl, double value) {
    std::string out;
    std::size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl[i] != '{') {
            out += tmpl[i++];
            continue;
        }
        const std::size_t close = tmpl.find('}', i);
        if (close == std::string_view::npos) throw ParseError("template: unterminated '{'", 1, static_cast<int>(i) + 1);
        const std::string_view body = tmpl.substr(i + 1, close - i - 1);
        if (body.empty()) {
            out += format_value(value);
        } else if (body.front() == '/') {
            int d = 0;
            try {
                d = std::stoi(std::string(body.substr(1)));
            } catch (const std::exception&) {
                throw ParseError("template: bad divisor in '{" + std::string(body) + "}'", 1, static_cast<int>(i) + 1);
            }
            if (d == 0) throw ParseError("template: division by zero", 1, static_cast<int>(i) + 1);
            const double q = value / d;
            if (q != std::floor(q)) throw DomainError("template: " + format_value(value) + "/" + std::to_string(d) + " is not an integer");
            out += format_value(q);
        } else {
            throw ParseError("template: unknown placeholder '{" + std::string(body) + "}'", 1, static_cast<int>(i) + 1);
        }
        i = close + 1;
    }
    return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-mode bosonic spin toolkit: moments, squeezing, Fisher information, phase estimation"};
    app.name("spinlab");
    app.set_version_flag("--version", toolkit_version());
    app.require_subcommand(1);

    StateArgs state;
    std::string dir, triplet = "auto-z", rot_dir = "y";

    auto* moments = app.add_subcommand("moments", "mean, second moment and variance of J_dir");
    state.attach(moments);
    moments->add_option("--dir", dir, "direction: x, -y, or nx,ny,nz")->required();

    auto* squeeze = app.add_subcommand("squeeze", "spin-squeezing inequalities and xi parameters");
    state.attach(squeeze);
    squeeze->add_option("--triplet", triplet, "auto-z, axis names like z,y,x, or vectors separated by ';'");

    auto* qfi = app.add_subcommand("qfi", "quantum Fisher information for rotations about dir");
    state.attach(qfi);
    qfi->add_option("--dir", dir, "rotation axis")->required();

    ScanArgs scan;
    auto* scan_cmd = app.add_subcommand("scan", "sweep one parameter and write CSV");
    scan_cmd->add_option("--state", scan.state_template, "state template, '{}' is replaced by the value")->required();
    scan_cmd->add_option("--param", scan.param, "n3z2, sigma, p, n or theta")->required();
    scan_cmd->add_option("--from", scan.from);
    scan_cmd->add_option("--to", scan.to);
    scan_cmd->add_option("--step", scan.step);
    scan_cmd->add_option("--values", scan.values, "comma-separated values instead of a range");
    scan_cmd->add_option("--quantity", scan.quantities, "comma-separated output columns")->required();
    scan_cmd->add_option("--dir", scan.dir, "direction for mean, variance and qfi");
    scan_cmd->add_option("--triplet", scan.triplet, "frame for lhs1..lhs4 and xi");
    scan_cmd->add_option("--rot-dir", scan.rot_dir, "rotation axis for theta sweeps");
    scan_cmd->add_option("--output", scan.output, "CSV path (default stdout)");

    double theta = 0.0;
    int shots = 0, reps = 0;
    std::optional<std::uint64_t> seed;
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo maximum-likelihood phase estimation");
    state.attach(estimate);
    estimate->add_option("--rot-dir", rot_dir, "rotation axis");
    estimate->add_option("--theta", theta, "true phase")->required();
    estimate->add_option("--shots", shots, "measurements per repetition")->required();
    estimate->add_option("--reps", reps, "repetitions")->required();
    estimate->add_option("--seed", seed, "RNG seed (drawn from entropy when omitted)");

    int oracle_n = 6, trials = 1000;
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force distinguishable-qubit checks");
    oracle_cmd->add_option("--n", oracle_n, "largest qubit count (2..8)");
    oracle_cmd->add_option("--trials", trials, "trials per qubit count");
    oracle_cmd->add_option("--seed", seed, "RNG seed (drawn from entropy when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        print_help(app, out);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << toolkit_version() << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        RunRecord rec;
        if (moments->parsed()) {
            const StateSpec spec = state.spec();
            const Direction d = parse_direction(dir, "--dir", err);
            rec.command = "moments";
            rec.inputs = {{"state", spec.to_json()}, {"spec", spec.canonical()}, {"dir", direction_json(d)}};
            rec.outputs = cmd_moments(spec, d);
        } else if (squeeze->parsed()) {
            const StateSpec spec = state.spec();
            const OrthogonalTriplet t = parse_triplet(triplet, "--triplet", err);
            rec.command = "squeeze";
            rec.inputs = {{"state", spec.to_json()}, {"spec", spec.canonical()}, {"triplet", triplet_json(t)}};
            rec.outputs = cmd_squeeze(spec, t);
        } else if (qfi->parsed()) {
            const StateSpec spec = state.spec();
            const Direction d = parse_direction(dir, "--dir", err);
            rec.command = "qfi";
            rec.inputs = {{"state", spec.to_json()}, {"spec", spec.canonical()}, {"dir", direction_json(d)}};
            rec.outputs = cmd_qfi(spec, d);
        } else if (scan_cmd->parsed()) {
            const Json summary = cmd_scan(scan, out, err);
            // with an output file stdout carries the run record instead
            if (scan.output.empty()) return kExitOk;
            rec.command = "scan";
            rec.inputs = {{"template", scan.state_template}, {"param", scan.param}, {"quantity", scan.quantities}};
            rec.outputs = summary;
        } else if (estimate->parsed()) {
            if (shots < 1) throw DomainError("--shots must be >= 1");
            if (reps < 2) throw DomainError("--reps must be >= 2");
            const StateSpec spec = state.spec();
            const Direction d = parse_direction(rot_dir, "--rot-dir", err);
            if (!seed) {
                seed = entropy_seed();
                err << "seed: " << *seed << "\n";
            }
            const PhaseEstimationResult r = mle_estimate(as_density(realize(spec)), d, theta, shots, reps, *seed);
            rec.command = "estimate";
            rec.inputs = {{"state", spec.to_json()}, {"spec", spec.canonical()}, {"rot_dir", direction_json(d)},
                          {"theta", theta}, {"shots", shots}, {"reps", reps}};
            rec.outputs = estimation_json(r);
            rec.seed = *seed;
        } else if (oracle_cmd->parsed()) {
            if (!seed) {
                seed = entropy_seed();
                err << "seed: " << *seed << "\n";
            }
            rec.command = "oracle";
            rec.inputs = {{"n", oracle_n}, {"trials", trials}};
            rec.outputs = suite_json(oracle::run_suite(oracle_n, trials, *seed));
            rec.seed = *seed;
        }
        write_json(out, rec.to_json());
        return kExitOk;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << " (residual " << format_double(e.residual()) << ")\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

} // namespace spinlab::cli

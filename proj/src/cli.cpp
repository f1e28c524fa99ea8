#include "bellgamma/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>

#include "bellgamma/analysis.hpp"
#include "bellgamma/engine.hpp"
#include "bellgamma/hvmodels.hpp"
#include "bellgamma/quantum.hpp"

namespace bellgamma::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kDegreesPerRadian = 180.0 / std::numbers::pi;

std::string text_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

Json json_optional(const std::optional<double>& v) {
    return v ? Json(*v) : Json(nullptr);
}

std::string csv_optional(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string();
}

void write_json(std::ostream& out, const Json& doc) {
    out << doc.dump(2) << '\n';
}

// Options shared by every subcommand.
struct Common {
    std::string format = "text";
    std::uint64_t seed = 0;
    int threads = 0;
    bool degrees = false;

    [[nodiscard]] OutputFormat output() const {
        if (format == "json") {
            return OutputFormat::Json;
        }
        if (format == "csv") {
            return OutputFormat::Csv;
        }
        return OutputFormat::Text;
    }

    [[nodiscard]] Angle angle(double value) const {
        return degrees ? Angle::from_degrees(value) : Angle(value);
    }
};

void add_format(CLI::App* cmd, Common& common) {
    cmd->add_option("--format", common.format, "Output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
}

void add_seed(CLI::App* cmd, Common& common) {
    cmd->add_option("--seed", common.seed, "Master seed (default 0)");
    cmd->add_option("--threads", common.threads,
                    "Worker threads; 0 = runtime default. Results do not depend on it")
        ->check(CLI::NonNegativeNumber);
}

void add_degrees(CLI::App* cmd, Common& common) {
    cmd->add_flag("--degrees", common.degrees, "Interpret angle inputs as degrees");
}

void require_positive(std::uint64_t value, const char* flag) {
    if (value == 0) {
        throw UsageError(std::string("invalid value for ") + flag + ": must be >= 1");
    }
}

hv::ModelSpec parse_model(const std::string& text) {
    try {
        return hv::ModelSpec::parse(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--model: ") + e.what());
    }
}

// Angle list from either --theta-ab/--experiments or --angles-file.
struct AngleSource {
    std::optional<double> theta_ab;
    std::optional<std::uint64_t> experiments;
    std::string angles_file;

    void add_to(CLI::App* cmd) {
        auto* theta = cmd->add_option("--theta-ab", theta_ab, "Angle difference, replicated");
        auto* count = cmd->add_option("--experiments", experiments, "Number of experiments N");
        auto* file = cmd->add_option("--angles-file", angles_file,
                                     "File of per-experiment angle differences");
        file->excludes(theta)->excludes(count);
    }

    [[nodiscard]] std::vector<Angle> resolve(const Common& common) const {
        if (!angles_file.empty()) {
            std::ifstream in(angles_file);
            if (!in) {
                throw UsageError("--angles-file: cannot open '" + angles_file + "'");
            }
            auto angles = parse_angle_file(in, common.degrees);
            if (angles.empty()) {
                throw UsageError("--angles-file: no angles in '" + angles_file + "'");
            }
            return angles;
        }
        if (!theta_ab || !experiments) {
            throw UsageError("need either --angles-file or both --theta-ab and --experiments");
        }
        require_positive(*experiments, "--experiments");
        return std::vector<Angle>(*experiments, common.angle(*theta_ab));
    }
};

//---------------------------------------------------------------------------//

void emit_bound(std::uint64_t n, const Common& common, std::ostream& out) {
    require_positive(n, "--n");
    const double rad = analysis::angle_bound(n).radians();
    const double deg = rad * kDegreesPerRadian;
    switch (common.output()) {
    case OutputFormat::Text:
        out << "n        " << n << '\n'
            << "radians  " << format_number(rad) << '\n'
            << "degrees  " << format_number(deg) << '\n';
        break;
    case OutputFormat::Json:
        write_json(out, Json{{"n_runs", n}, {"radians", rad}, {"degrees", deg}});
        break;
    case OutputFormat::Csv:
        out << "n_runs,radians,degrees\n"
            << n << ',' << format_number(rad) << ',' << format_number(deg) << '\n';
        break;
    }
}

struct SimulateArgs {
    std::string model = "quantum";
    double theta_a = 0.0;
    double theta_b = 0.0;
    std::uint64_t runs = 0;
};

void emit_simulate(const SimulateArgs& args, const Common& common, std::ostream& out) {
    require_positive(args.runs, "--runs");
    const hv::ModelSpec model = parse_model(args.model);
    const ExperimentConfig config{model, common.angle(args.theta_a), common.angle(args.theta_b),
                                  args.runs};
    RandomStream stream = SeedSpec{common.seed}.stream(0);
    const ExperimentResult r = run_experiment(config, stream);
    const Angle theta_ab = canonical_difference(config.theta_a, config.theta_b);

    std::optional<double> c_exact;
    std::optional<double> s_exact;
    if (model.has_closed_form()) {
        c_exact = hv::exact_model_correlation(model, theta_ab);
        s_exact = hv::exact_model_s(model, theta_ab);
    }

    switch (common.output()) {
    case OutputFormat::Text:
        out << "model     " << model.name() << '\n'
            << "theta_ab  " << text_number(theta_ab.radians()) << " rad\n"
            << "seed      " << common.seed << '\n'
            << "m         " << r.m() << '\n'
            << "n         " << r.n() << '\n'
            << "C         " << text_number(r.correlation()) << '\n'
            << "S         " << text_number(r.s()) << '\n';
        if (c_exact) {
            out << "C exact   " << text_number(*c_exact) << '\n'
                << "S exact   " << text_number(*s_exact) << '\n';
        }
        break;
    case OutputFormat::Json:
        write_json(out, Json{{"model", model.name()},
                             {"theta_a", config.theta_a.radians()},
                             {"theta_b", config.theta_b.radians()},
                             {"theta_ab", theta_ab.radians()},
                             {"seed", common.seed},
                             {"m", r.m()},
                             {"n", r.n()},
                             {"c", r.correlation()},
                             {"s", r.s()},
                             {"c_exact", json_optional(c_exact)},
                             {"s_exact", json_optional(s_exact)}});
        break;
    case OutputFormat::Csv:
        out << "model,theta_a,theta_b,m,n,c,s,c_exact,s_exact\n"
            << model.name() << ',' << format_number(config.theta_a.radians()) << ','
            << format_number(config.theta_b.radians()) << ',' << r.m() << ',' << r.n() << ','
            << format_number(r.correlation()) << ',' << format_number(r.s()) << ','
            << csv_optional(c_exact) << ',' << csv_optional(s_exact) << '\n';
        break;
    }
}

struct GammaArgs {
    std::string model = "quantum";
    AngleSource angles;
    std::uint64_t runs = 0;
    bool allow_equal = false;
};

void emit_gamma(const GammaArgs& args, const Common& common, std::ostream& out) {
    require_positive(args.runs, "--runs");
    const hv::ModelSpec model = parse_model(args.model);
    const std::vector<Angle> thetas = args.angles.resolve(common);

    BatchConfig config{model, {}, args.runs, !args.allow_equal};
    config.angle_pairs.reserve(thetas.size());
    for (Angle t : thetas) {
        config.angle_pairs.push_back({t, Angle(0.0)});
    }
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(e.what()) + "; pass --allow-equal to include it");
    }
    const BatchResult batch = run_batch(config, SeedSpec{common.seed}, Execution{common.threads});
    const auto& rows = batch.experiments();

    switch (common.output()) {
    case OutputFormat::Text:
        out << "model        " << model.name() << '\n'
            << "seed         " << common.seed << '\n'
            << "experiments  " << batch.n_experiments() << '\n'
            << "runs         " << batch.n_runs() << '\n'
            << "\n  l  theta_ab  m  S\n";
        for (std::size_t l = 0; l < rows.size(); ++l) {
            out << "  " << l + 1 << "  " << text_number(thetas[l].radians()) << "  " << rows[l].m()
                << "  " << text_number(rows[l].s()) << '\n';
        }
        out << "\ngamma        " << text_number(batch.gamma()) << '\n'
            << "threshold    " << text_number(batch.threshold()) << '\n'
            << "margin       " << text_number(batch.margin()) << '\n'
            << "verdict      " << to_string(batch.verdict()) << '\n';
        break;
    case OutputFormat::Json: {
        Json experiments = Json::array();
        for (std::size_t l = 0; l < rows.size(); ++l) {
            experiments.push_back(Json{{"l", l + 1},
                                       {"theta_ab", thetas[l].radians()},
                                       {"m", rows[l].m()},
                                       {"s", rows[l].s()}});
        }
        write_json(out, Json{{"model", model.name()},
                             {"seed", common.seed},
                             {"n_runs", batch.n_runs()},
                             {"n_experiments", batch.n_experiments()},
                             {"experiments", std::move(experiments)},
                             {"summary",
                              Json{{"sum_m", batch.total_m()},
                                   {"gamma", batch.gamma()},
                                   {"threshold", batch.threshold()},
                                   {"margin", batch.margin()},
                                   {"verdict", to_string(batch.verdict())}}}});
        break;
    }
    case OutputFormat::Csv:
        out << "l,theta_ab,m,s\n";
        for (std::size_t l = 0; l < rows.size(); ++l) {
            out << l + 1 << ',' << format_number(thetas[l].radians()) << ',' << rows[l].m() << ','
                << format_number(rows[l].s()) << '\n';
        }
        break;
    }
}

struct ReportArgs {
    AngleSource angles;
    std::uint64_t runs = 0;
};

Json index_list(const std::vector<std::size_t>& indices) {
    Json arr = Json::array();
    for (std::size_t i : indices) {
        arr.push_back(i + 1);
    }
    return arr;
}

void emit_report(const ReportArgs& args, const Common& common, std::ostream& out) {
    require_positive(args.runs, "--runs");
    const std::vector<Angle> thetas = args.angles.resolve(common);
    analysis::ViolationReport r;
    try {
        r = analysis::quantum_violation_report(thetas, args.runs, Execution{common.threads});
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    switch (common.output()) {
    case OutputFormat::Text:
        out << "runs (n)                 " << r.n_runs << '\n'
            << "experiments (N)          " << r.n_experiments << '\n'
            << "angle window upper       " << text_number(r.angle_window_upper.radians())
            << " rad\n"
            << "exact gamma (quantum)    " << text_number(r.exact_gamma_qm) << '\n'
            << "threshold N/n            " << text_number(r.threshold) << '\n'
            << "expectation verdict      " << to_string(r.expectation_verdict) << '\n'
            << "P(empirical violation)   " << text_number(r.finite_sample_violation_probability)
            << '\n';
        if (!r.outside_window.empty()) {
            out << "flag: " << r.outside_window.size()
                << " angle(s) at or above the violation window\n";
        }
        if (!r.beyond_half_pi.empty()) {
            out << "flag: " << r.beyond_half_pi.size() << " angle(s) at or above pi/2\n";
        }
        break;
    case OutputFormat::Json:
        write_json(out, Json{{"n_runs", r.n_runs},
                             {"n_experiments", r.n_experiments},
                             {"angle_window_upper", r.angle_window_upper.radians()},
                             {"exact_gamma_qm", r.exact_gamma_qm},
                             {"threshold", r.threshold},
                             {"expectation_verdict", to_string(r.expectation_verdict)},
                             {"finite_sample_violation_probability",
                              r.finite_sample_violation_probability},
                             {"outside_window", index_list(r.outside_window)},
                             {"beyond_half_pi", index_list(r.beyond_half_pi)}});
        break;
    case OutputFormat::Csv:
        out << "n_runs,n_experiments,angle_window_upper,exact_gamma_qm,threshold,"
               "expectation_verdict,finite_sample_violation_probability,outside_window_count,"
               "beyond_half_pi_count\n"
            << r.n_runs << ',' << r.n_experiments << ','
            << format_number(r.angle_window_upper.radians()) << ','
            << format_number(r.exact_gamma_qm) << ',' << format_number(r.threshold) << ','
            << to_string(r.expectation_verdict) << ','
            << format_number(r.finite_sample_violation_probability) << ','
            << r.outside_window.size() << ',' << r.beyond_half_pi.size() << '\n';
        break;
    }
}

struct AuditArgs {
    std::string model = "quantum";
    double theta_a = 0.0;
    double theta_b = 0.0;
    std::uint64_t runs = 0;
    std::uint64_t trials = 0;
    bool exclude_equal = false;
};

void emit_audit(const AuditArgs& args, const Common& common, std::ostream& out) {
    require_positive(args.runs, "--runs");
    require_positive(args.trials, "--trials");
    const analysis::AuditConfig config{parse_model(args.model), common.angle(args.theta_a),
                                       common.angle(args.theta_b), args.runs, args.trials,
                                       args.exclude_equal};
    analysis::AssumptionAudit a = [&] {
        try {
            return analysis::audit_assumption(config, SeedSpec{common.seed},
                                              Execution{common.threads});
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();

    switch (common.output()) {
    case OutputFormat::Text:
        out << "model                  " << a.model.name() << '\n'
            << "theta_ab               " << text_number(a.theta_ab.radians()) << " rad\n"
            << "runs                   " << a.n_runs << '\n'
            << "trials                 " << a.trials << '\n'
            << "trials with m = 0      " << a.zero_m_count << '\n'
            << "zero_m_frequency       " << text_number(a.zero_m_frequency) << '\n'
            << "all_m_positive         " << (a.all_m_positive ? "true" : "false") << '\n';
        break;
    case OutputFormat::Json:
        write_json(out, Json{{"model", a.model.name()},
                             {"theta_ab", a.theta_ab.radians()},
                             {"n_runs", a.n_runs},
                             {"trials", a.trials},
                             {"seed", common.seed},
                             {"zero_m_count", a.zero_m_count},
                             {"zero_m_frequency", a.zero_m_frequency},
                             {"all_m_positive", a.all_m_positive}});
        break;
    case OutputFormat::Csv:
        out << "model,theta_ab,n_runs,trials,zero_m_count,zero_m_frequency,all_m_positive\n"
            << a.model.name() << ',' << format_number(a.theta_ab.radians()) << ',' << a.n_runs
            << ',' << a.trials << ',' << a.zero_m_count << ',' << format_number(a.zero_m_frequency)
            << ',' << (a.all_m_positive ? "true" : "false") << '\n';
        break;
    }
}

struct SweepArgs {
    std::string model = "quantum";
    double theta_min = 0.0;
    double theta_max = 0.0;
    std::uint64_t steps = 0;
    std::uint64_t runs = 0;
};

void emit_sweep(const SweepArgs& args, const Common& common, std::ostream& out) {
    require_positive(args.runs, "--runs");
    if (args.steps < 2) {
        throw UsageError("invalid value for --steps: must be >= 2");
    }
    const hv::ModelSpec model = parse_model(args.model);
    const Angle lo = common.angle(args.theta_min);
    const Angle hi = common.angle(args.theta_max);
    if (!(lo.radians() < hi.radians())) {
        throw UsageError("invalid range: --theta-min must be < --theta-max");
    }
    const auto rows =
        analysis::sweep(model, lo, hi, args.steps, args.runs, SeedSpec{common.seed},
                        Execution{common.threads});

    switch (common.output()) {
    case OutputFormat::Text:
        out << "theta_ab  c_exact  c_emp  s_exact  s_emp\n";
        for (const auto& r : rows) {
            out << text_number(r.theta_ab.radians()) << "  "
                << (r.c_exact ? text_number(*r.c_exact) : "-") << "  "
                << text_number(r.c_empirical) << "  "
                << (r.s_exact ? text_number(*r.s_exact) : "-") << "  "
                << text_number(r.s_empirical) << '\n';
        }
        break;
    case OutputFormat::Json: {
        Json arr = Json::array();
        for (const auto& r : rows) {
            arr.push_back(Json{{"theta_ab", r.theta_ab.radians()},
                               {"c_exact", json_optional(r.c_exact)},
                               {"c_emp", r.c_empirical},
                               {"s_exact", json_optional(r.s_exact)},
                               {"s_emp", r.s_empirical},
                               {"m", r.m}});
        }
        write_json(out, Json{{"model", model.name()},
                             {"n_runs", args.runs},
                             {"seed", common.seed},
                             {"rows", std::move(arr)}});
        break;
    }
    case OutputFormat::Csv:
        out << "theta_ab,c_exact,c_emp,s_exact,s_emp\n";
        for (const auto& r : rows) {
            out << format_number(r.theta_ab.radians()) << ',' << csv_optional(r.c_exact) << ','
                << format_number(r.c_empirical) << ',' << csv_optional(r.s_exact) << ','
                << format_number(r.s_empirical) << '\n';
        }
        break;
    }
}

} // namespace

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::vector<Angle> parse_angle_file(std::istream& in, bool degrees) {
    std::vector<Angle> angles;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        const auto last = line.find_last_not_of(" \t\r");
        const char* begin = line.data() + first;
        const char* end = line.data() + last + 1;
        if (*begin == '+') {
            ++begin;
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
            throw UsageError("angles file line " + std::to_string(line_no) + ": cannot parse '" +
                             line.substr(first, last - first + 1) + "' as a finite number");
        }
        angles.push_back(degrees ? Angle::from_degrees(value) : Angle(value));
    }
    return angles;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bell-type Gamma inequality simulator and analyzer", "bellgamma"};
    app.require_subcommand(1);

    Common common;

    std::uint64_t bound_n = 0;
    auto* bound = app.add_subcommand("bound", "Upper end of the quantum violation window");
    bound->add_option("--n", bound_n, "Runs per experiment")->required();
    add_format(bound, common);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run one experiment of n pairs");
    simulate->add_option("--model", sim.model, "quantum | bell-sign | noise:q=<real> | quantum-mimic");
    simulate->add_option("--theta-a", sim.theta_a, "Side A analyzer angle")->required();
    simulate->add_option("--theta-b", sim.theta_b, "Side B analyzer angle")->required();
    simulate->add_option("--runs", sim.runs, "Pairs per experiment (n)")->required();
    add_seed(simulate, common);
    add_degrees(simulate, common);
    add_format(simulate, common);

    GammaArgs gam;
    auto* gamma_cmd = app.add_subcommand("gamma", "Run N experiments and test Gamma >= N/n");
    gamma_cmd->add_option("--model", gam.model, "quantum | bell-sign | noise:q=<real> | quantum-mimic");
    gam.angles.add_to(gamma_cmd);
    gamma_cmd->add_option("--runs", gam.runs, "Pairs per experiment (n)")->required();
    gamma_cmd->add_flag("--allow-equal", gam.allow_equal, "Keep zero angle differences");
    add_seed(gamma_cmd, common);
    add_degrees(gamma_cmd, common);
    add_format(gamma_cmd, common);

    ReportArgs rep;
    auto* report = app.add_subcommand("report", "Exact quantum Gamma against N/n");
    rep.angles.add_to(report);
    report->add_option("--runs", rep.runs, "Pairs per experiment (n)")->required();
    report->add_option("--threads", common.threads, "Worker threads for the exact probability")
        ->check(CLI::NonNegativeNumber);
    add_degrees(report, common);
    add_format(report, common);

    AuditArgs aud;
    auto* audit = app.add_subcommand("audit", "Frequency of m = 0 over repeated experiments");
    audit->add_option("--model", aud.model, "quantum | bell-sign | noise:q=<real> | quantum-mimic");
    audit->add_option("--theta-a", aud.theta_a, "Side A analyzer angle")->required();
    audit->add_option("--theta-b", aud.theta_b, "Side B analyzer angle")->required();
    audit->add_option("--runs", aud.runs, "Pairs per experiment (n)")->required();
    audit->add_option("--trials", aud.trials, "Independent experiments")->required();
    audit->add_flag("--exclude-equal", aud.exclude_equal, "Reject theta_A = theta_B");
    add_seed(audit, common);
    add_degrees(audit, common);
    add_format(audit, common);

    SweepArgs swp;
    auto* sweep = app.add_subcommand("sweep", "Exact and empirical C, S over an angle grid");
    sweep->add_option("--model", swp.model, "quantum | bell-sign | noise:q=<real> | quantum-mimic");
    sweep->add_option("--theta-min", swp.theta_min, "First grid angle")->required();
    sweep->add_option("--theta-max", swp.theta_max, "Last grid angle")->required();
    sweep->add_option("--steps", swp.steps, "Grid points, >= 2")->required();
    sweep->add_option("--runs", swp.runs, "Pairs per grid point (n)")->required();
    add_seed(sweep, common);
    add_degrees(sweep, common);
    add_format(sweep, common);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (bound->parsed()) {
            emit_bound(bound_n, common, out);
        } else if (simulate->parsed()) {
            emit_simulate(sim, common, out);
        } else if (gamma_cmd->parsed()) {
            emit_gamma(gam, common, out);
        } else if (report->parsed()) {
            emit_report(rep, common, out);
        } else if (audit->parsed()) {
            emit_audit(aud, common, out);
        } else if (sweep->parsed()) {
            emit_sweep(swp, common, out);
        }
        out.flush();
        if (!out) {
            throw std::runtime_error("failed to write report to output stream");
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}

} // namespace bellgamma::cli

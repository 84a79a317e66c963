#include "quartic/cli.hpp"

#include "quartic/acceptance.hpp"
#include "quartic/classification.hpp"
#include "quartic/errors.hpp"
#include "quartic/moduli.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace quartic {

namespace {

double parse_plain_real(const std::string& text) {
    if (text.empty()) throw DomainError("empty number literal");
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) {
        throw DomainError("malformed number literal: '" + text + "'");
    }
    if (errno == ERANGE || !std::isfinite(value)) {
        throw DomainError("number out of range: '" + text + "'");
    }
    return value;
}

} // namespace

double parse_real_or_fraction(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return parse_plain_real(text);
    if (text.find('/', slash + 1) != std::string::npos) {
        throw DomainError("malformed fraction: '" + text + "'");
    }
    const double numerator = parse_plain_real(text.substr(0, slash));
    const double denominator = parse_plain_real(text.substr(slash + 1));
    if (denominator == 0.0) {
        throw DomainError("fraction with zero denominator: '" + text + "'");
    }
    const double value = numerator / denominator;
    if (!std::isfinite(value)) {
        throw DomainError("fraction out of range: '" + text + "'");
    }
    return value;
}

namespace {

struct ParsedInput {
    QuarticForm form;
    JsonValue echo;
};

double json_real(const nlohmann::json& v, const char* what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_real_or_fraction(v.get<std::string>());
    throw DomainError(std::string(what) +
                      " must be a number or a fraction string");
}

ParsedInput load_file_input(CliConfig& config) {
    std::ifstream in(config.input_path);
    if (!in) {
        throw DomainError("cannot read input file '" + config.input_path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("invalid JSON in '" + config.input_path +
                          "': " + e.what());
    }
    if (!j.is_object()) {
        throw DomainError("input file must hold a JSON object with either "
                          "\"coeffs\" or \"L\" and \"K\"");
    }
    ParsedInput input;
    JsonValue echo = JsonValue::object();
    echo.set("source", JsonValue::of("file"));
    echo.set("path", JsonValue::of(config.input_path));
    if (j.contains("coeffs")) {
        const auto& arr = j["coeffs"];
        if (!arr.is_array() || arr.size() != 5) {
            throw DomainError("\"coeffs\" must be an array of 5 entries "
                              "(x^4, x^3 y, x^2 y^2, x y^3, y^4)");
        }
        for (int i = 0; i < 5; ++i) {
            config.coefficients[static_cast<std::size_t>(i)] =
                json_real(arr[static_cast<std::size_t>(i)], "coefficient");
        }
        config.source = CliConfig::Source::File;
        input.form = QuarticForm::from_coefficients(config.coefficients);
        JsonValue list = JsonValue::array();
        for (double c : config.coefficients) list.push(JsonValue::of(c));
        echo.set("coeffs", std::move(list));
    } else if (j.contains("L") && j.contains("K")) {
        config.L = json_real(j["L"], "\"L\"");
        config.K = json_real(j["K"], "\"K\"");
        config.source = CliConfig::Source::File;
        input.form = QuarticForm::standard(config.L, config.K);
        echo.set("L", JsonValue::of(config.L));
        echo.set("K", JsonValue::of(config.K));
    } else {
        throw DomainError("input file must provide either \"coeffs\" or "
                          "\"L\" and \"K\"");
    }
    input.echo = std::move(echo);
    return input;
}

ParsedInput load_input(CliConfig& config, const std::vector<std::string>& lk,
                       const std::vector<std::string>& coeffs) {
    if (config.source == CliConfig::Source::File) return load_file_input(config);
    ParsedInput input;
    JsonValue echo = JsonValue::object();
    if (config.source == CliConfig::Source::LK) {
        config.L = parse_real_or_fraction(lk[0]);
        config.K = parse_real_or_fraction(lk[1]);
        input.form = QuarticForm::standard(config.L, config.K);
        echo.set("source", JsonValue::of("lk"));
        echo.set("L", JsonValue::of(config.L));
        echo.set("K", JsonValue::of(config.K));
    } else {
        for (std::size_t i = 0; i < 5; ++i) {
            config.coefficients[i] = parse_real_or_fraction(coeffs[i]);
        }
        input.form = QuarticForm::from_coefficients(config.coefficients);
        echo.set("source", JsonValue::of("coeffs"));
        JsonValue list = JsonValue::array();
        for (double c : config.coefficients) list.push(JsonValue::of(c));
        echo.set("coeffs", std::move(list));
    }
    input.echo = std::move(echo);
    return input;
}

/** Write to a file, or to stdout when path is empty or "-".
 *  Returns 0 on success, 1 on I/O failure. */
int write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "quartic: cannot open '" << path << "' for writing\n";
        return 1;
    }
    out << text;
    out.flush();
    if (!out) {
        std::cerr << "quartic: failed while writing '" << path << "'\n";
        return 1;
    }
    return 0;
}

const std::vector<std::string>& known_layers() {
    static const std::vector<std::string> layers =
        PortraitConfig::default_layers();
    return layers;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Classification of hyperbolic quartic curves in the plane, "
                 "up to linear equivalence",
                 "quartic"};
    app.require_subcommand(1);

    CliConfig config;
    std::vector<std::string> lk_raw, coeff_raw, hint_raw, trajectory_raw;
    std::string t_end_raw, stop_raw, reduce_k_raw, layers_raw;

    const auto add_input_options = [&](CLI::App* sub, bool with_hint) {
        sub->add_option("--lk", lk_raw,
                        "Standard-form parameters L K (decimals or fractions "
                        "like -25/72)")
            ->expected(2);
        sub->add_option("--coeffs", coeff_raw,
                        "Coefficients of x^4, x^3y, x^2y^2, xy^3, y^4")
            ->expected(5);
        sub->add_option("--file", config.input_path,
                        "JSON file with {\"coeffs\": [...]} or "
                        "{\"L\": ..., \"K\": ...}");
        if (with_hint) {
            sub->add_option("--hint", hint_raw,
                            "Point x y at which the curve is expected to be "
                            "hyperbolic")
                ->expected(2);
        }
        sub->add_option("--region-tol", config.region_tolerance,
                        "Region-resolution tolerance override (positive)");
        sub->add_option("--out", config.out_path,
                        "Report destination (default: stdout)");
    };

    CLI::App* classify_cmd =
        app.add_subcommand("classify", "Classify one quartic and print the "
                                       "JSON report");
    add_input_options(classify_cmd, true);
    classify_cmd->add_flag("--timing", config.timing,
                           "Include wall-clock timing in the report");

    CLI::App* analyze_cmd = app.add_subcommand(
        "analyze", "Classify and also write a slice profile CSV");
    add_input_options(analyze_cmd, true);
    analyze_cmd->add_flag("--timing", config.timing,
                          "Include wall-clock timing in the report");
    std::string analyze_csv = "slice.csv";
    analyze_cmd->add_option("--csv", analyze_csv,
                            "Slice CSV destination (default: slice.csv)");
    analyze_cmd->add_option("--samples", config.samples,
                            "Number of CSV sample rows (default: 200)")
        ->check(CLI::PositiveNumber);

    CLI::App* flow_cmd = app.add_subcommand(
        "flow", "Integrate the parameter-plane flow from a given (L, K)");
    flow_cmd->add_option("--lk", lk_raw, "Starting point L K")
        ->expected(2)
        ->required();
    flow_cmd->add_option("--t-end", t_end_raw, "Integration time (signed)")
        ->required();
    flow_cmd->add_option("--stop-at-L", stop_raw,
                         "Stop when the trajectory crosses this L value");
    std::string flow_csv = "trajectory.csv";
    flow_cmd->add_option("--csv", flow_csv,
                         "Trajectory CSV destination (default: "
                         "trajectory.csv)");
    flow_cmd->add_option("--out", config.out_path,
                         "Event summary destination (default: stdout)");
    flow_cmd->add_option("--region-tol", config.region_tolerance,
                         "Region-resolution tolerance override (positive)");

    CLI::App* portrait_cmd = app.add_subcommand(
        "portrait", "Render the parameter-plane portrait as SVG");
    std::string portrait_out = "portrait.svg";
    portrait_cmd->add_option("--out", portrait_out,
                             "SVG destination (default: portrait.svg)");
    portrait_cmd->add_option("--lmin", config.portrait.l_min, "Left extent");
    portrait_cmd->add_option("--lmax", config.portrait.l_max, "Right extent");
    portrait_cmd->add_option("--kmin", config.portrait.k_min, "Bottom extent");
    portrait_cmd->add_option("--kmax", config.portrait.k_max, "Top extent");
    portrait_cmd->add_option("--width", config.portrait.width, "Canvas width")
        ->check(CLI::PositiveNumber);
    portrait_cmd
        ->add_option("--height", config.portrait.height, "Canvas height")
        ->check(CLI::PositiveNumber);
    CLI::Option* layers_opt = portrait_cmd->add_option(
        "--layers", layers_raw,
        "Comma-separated layers to draw: closed-region,u,v,w,m,fixed-points "
        "(empty string: axes only)");
    portrait_cmd
        ->add_option("--trajectory", trajectory_raw,
                     "Overlay one flow trajectory: L K t_end")
        ->expected(3);

    CLI::App* reduce_cmd = app.add_subcommand(
        "reduce", "Factor-form reduction of h_{1,K} for K in [-25/72, U)");
    reduce_cmd->add_option("--k", reduce_k_raw, "Parameter K on the line L=1")
        ->required();
    reduce_cmd->add_option("--out", config.out_path,
                           "Report destination (default: stdout)");

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "Run the acceptance battery and print a pass/fail table");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("quartic");
    for (const auto& arg : args) argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "quartic: " << e.what() << '\n';
        return cli_exit::usage_error;
    }

    // ---- Phase 1: turn raw strings into values (bad values exit 65). ----
    const bool wants_quartic_input =
        classify_cmd->parsed() || analyze_cmd->parsed();
    if (wants_quartic_input) {
        int sources = 0;
        if (!lk_raw.empty()) {
            config.source = CliConfig::Source::LK;
            ++sources;
        }
        if (!coeff_raw.empty()) {
            config.source = CliConfig::Source::Coefficients;
            ++sources;
        }
        if (!config.input_path.empty()) {
            config.source = CliConfig::Source::File;
            ++sources;
        }
        if (sources != 1) {
            std::cerr << "quartic: exactly one of --lk, --coeffs, --file is "
                         "required\n";
            return cli_exit::usage_error;
        }
    }
    if (config.region_tolerance &&
        !(std::isfinite(*config.region_tolerance) &&
          *config.region_tolerance > 0.0)) {
        std::cerr << "quartic: --region-tol must be positive\n";
        return cli_exit::usage_error;
    }

    std::optional<ParsedInput> input;
    std::optional<ModuliPoint> flow_start;
    double t_end = 0.0;
    std::optional<double> stop_at_l;
    double reduce_k = 0.0;
    try {
        if (wants_quartic_input) {
            input = load_input(config, lk_raw, coeff_raw);
            if (!hint_raw.empty()) {
                config.hint = Point2(parse_real_or_fraction(hint_raw[0]),
                                     parse_real_or_fraction(hint_raw[1]));
            }
        }
        if (flow_cmd->parsed()) {
            flow_start = ModuliPoint{parse_real_or_fraction(lk_raw[0]),
                                     parse_real_or_fraction(lk_raw[1])};
            t_end = parse_real_or_fraction(t_end_raw);
            if (!stop_raw.empty()) {
                stop_at_l = parse_real_or_fraction(stop_raw);
            }
        }
        if (reduce_cmd->parsed()) {
            reduce_k = parse_real_or_fraction(reduce_k_raw);
        }
        if (portrait_cmd->parsed() && !trajectory_raw.empty()) {
            // Values are validated here; the integration itself runs later.
            for (const auto& raw : trajectory_raw) parse_real_or_fraction(raw);
        }
    } catch (const Error& e) {
        std::cerr << "quartic: " << e.what() << '\n';
        return cli_exit::parse_error;
    }

    if (portrait_cmd->parsed() && layers_opt->count() > 0) {
        config.portrait.layers.clear();
        std::stringstream stream(layers_raw);
        std::string token;
        while (std::getline(stream, token, ',')) {
            while (!token.empty() && token.front() == ' ') token.erase(0, 1);
            while (!token.empty() && token.back() == ' ') token.pop_back();
            if (token.empty()) continue;
            const auto& known = known_layers();
            if (std::find(known.begin(), known.end(), token) == known.end()) {
                std::cerr << "quartic: unknown layer '" << token << "'\n";
                return cli_exit::usage_error;
            }
            config.portrait.layers.push_back(token);
        }
    }

    if (config.region_tolerance) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", *config.region_tolerance);
        setenv("QUARTIC_MODULI_TOL", buf, 1);
    }

    // ---- Phase 2: execute (numerical failures exit 3). ----
    try {
        if (classify_cmd->parsed() || analyze_cmd->parsed()) {
            config.subcommand = classify_cmd->parsed() ? "classify" : "analyze";
            ReportDocument doc = build_report(input->form, input->echo,
                                              config.hint, config.timing);
            if (const int rc = write_text(config.out_path, render_report(doc))) {
                return rc;
            }
            if (analyze_cmd->parsed() && doc.classification.standard_form) {
                config.csv_path = analyze_csv;
                const auto& sf = *doc.classification.standard_form;
                const std::string csv =
                    slice_csv(sf.L, sf.K, config.samples);
                if (const int rc = write_text(config.csv_path, csv)) return rc;
            }
            return doc.classification.class_tag == ClassTag::NonHyperbolic
                       ? cli_exit::non_hyperbolic
                       : cli_exit::ok;
        }
        if (flow_cmd->parsed()) {
            config.subcommand = "flow";
            config.t_end = t_end;
            config.stop_at_l = stop_at_l;
            config.csv_path = flow_csv;
            const FlowTrajectory trajectory =
                integrate_flow(*flow_start, t_end, stop_at_l);
            if (const int rc =
                    write_text(config.csv_path, trajectory_csv(trajectory))) {
                return rc;
            }
            JsonValue summary = JsonValue::object();
            JsonValue start = JsonValue::object();
            start.set("L", JsonValue::of(flow_start->L));
            start.set("K", JsonValue::of(flow_start->K));
            summary.set("start", std::move(start));
            summary.set("t_end", JsonValue::of(t_end));
            summary.set("samples",
                        JsonValue::of(static_cast<int>(
                            trajectory.points.size())));
            summary.set("event_hit", JsonValue::of(trajectory.event_hit));
            if (trajectory.event_hit) {
                summary.set("event_time", JsonValue::of(trajectory.event_time));
                JsonValue point = JsonValue::object();
                point.set("L", JsonValue::of(trajectory.event_point.L));
                point.set("K", JsonValue::of(trajectory.event_point.K));
                summary.set("event_point", std::move(point));
            } else {
                summary.set("event_time", JsonValue::null());
                summary.set("event_point", JsonValue::null());
            }
            return write_text(config.out_path, to_json(summary) + "\n");
        }
        if (portrait_cmd->parsed()) {
            config.subcommand = "portrait";
            config.out_path = portrait_out;
            if (!trajectory_raw.empty()) {
                const ModuliPoint start{parse_real_or_fraction(trajectory_raw[0]),
                                        parse_real_or_fraction(trajectory_raw[1])};
                const double horizon = parse_real_or_fraction(trajectory_raw[2]);
                config.portrait.trajectories.push_back(
                    integrate_flow(start, horizon, std::nullopt));
            }
            return write_text(config.out_path, emit_portrait(config.portrait));
        }
        if (reduce_cmd->parsed()) {
            config.subcommand = "reduce";
            config.reduce_k = reduce_k;
            const ReductionData data = reduce_factor_form(reduce_k);
            return write_text(config.out_path,
                              to_json(reduction_to_json(reduce_k, data)) + "\n");
        }
        if (verify_cmd->parsed()) {
            config.subcommand = "verify";
            return run_acceptance(std::cout) == 0 ? cli_exit::ok : 1;
        }
    } catch (const Error& e) {
        std::cerr << "quartic: " << e.what() << '\n';
        return cli_exit::numerical_failure;
    }
    return cli_exit::usage_error;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc : 0));
    for (int i = 0; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

} // namespace quartic

#include <catch2/catch_amalgamated.hpp>

#include "quartic/cli.hpp"
#include "quartic/errors.hpp"
#include "quartic/form.hpp"
#include "quartic/moduli.hpp"
#include "quartic/report.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace quartic;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path temp_path(const std::string& name) {
    return fs::temp_directory_path() / ("quartic_test_" + name);
}

int count_occurrences(const std::string& text, const std::string& needle) {
    int n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size())) {
        ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("json values serialize deterministically") {
    CHECK(to_json(JsonValue::null()) == "null");
    CHECK(to_json(JsonValue::of(true)) == "true");
    CHECK(to_json(JsonValue::of(0.25)) == "0.25");
    CHECK(to_json(JsonValue::of(0.1)) == "0.10000000000000001");
    CHECK(to_json(JsonValue::of(std::nan(""))) == "null");  // JSON has no NaN
    CHECK(to_json(JsonValue::array()) == "[]");
    CHECK(to_json(JsonValue::object()) == "{}");

    // Insertion order is preserved; set() replaces in place.
    JsonValue obj = JsonValue::object();
    obj.set("b", JsonValue::of(1.0)).set("a", JsonValue::of(2.0));
    obj.set("b", JsonValue::of(3.0));
    CHECK(to_json(obj) == "{\n  \"b\": 3,\n  \"a\": 2\n}");

    JsonValue nested = JsonValue::object();
    JsonValue arr = JsonValue::array();
    arr.push(JsonValue::of(1.0)).push(JsonValue::of(2.0));
    nested.set("a", std::move(arr));
    CHECK(to_json(nested) == "{\n  \"a\": [\n    1,\n    2\n  ]\n}");

    CHECK(to_json(JsonValue::of("a\"b\\c\n\t\x01")) ==
          "\"a\\\"b\\\\c\\n\\t\\u0001\"");

    CHECK(format_svg_number(0.1234567891234) == "0.123456789");
}

TEST_CASE("classification report document layout") {
    JsonValue echo = JsonValue::object();
    echo.set("source", JsonValue::of("lk"));
    echo.set("L", JsonValue::of(0.0));
    echo.set("K", JsonValue::of(0.25));
    const ReportDocument doc = build_report(QuarticForm::standard(0.0, 0.25), echo);
    const std::string text = render_report(doc);
    CHECK(text.back() == '\n');

    const nlohmann::json j = nlohmann::json::parse(text);
    CHECK(j.at("version").get<std::string>() == "1.0.0");
    CHECK(j.at("input").at("source") == "lk");
    CHECK(j.at("standard_form").at("L").get<double>() == 0.0);
    CHECK(j.at("region").at("tag") == "FixedPoint_A");
    CHECK(j.at("classification").at("class") == "Closed_A");
    CHECK(j.at("classification").at("closed") == true);
    CHECK(j.at("classification").at("homogeneous") == true);
    CHECK(j.at("classification").at("singular_at_infinity") == true);
    CHECK(j.at("classification").at("components") == 4);
    CHECK(j.at("classification").at("automorphism").at("descriptor").is_string());
    CHECK(j.at("classification").at("limit_geometries").size() == 2);
    CHECK(j.at("slice").is_object());
    CHECK_FALSE(j.contains("timing_seconds"));

    // Byte determinism: building twice gives identical output.
    const ReportDocument doc2 = build_report(QuarticForm::standard(0.0, 0.25), echo);
    CHECK(render_report(doc2) == text);

    // Timing is present only on request (and breaks no other field).
    const ReportDocument timed =
        build_report(QuarticForm::standard(0.0, 0.25), echo, std::nullopt, true);
    const nlohmann::json jt = nlohmann::json::parse(render_report(timed));
    CHECK(jt.contains("timing_seconds"));
}

TEST_CASE("reports for forms without hyperbolic points") {
    JsonValue echo = JsonValue::object();
    echo.set("source", JsonValue::of("coeffs"));
    const ReportDocument doc =
        build_report(QuarticForm::from_coefficients({1, 0, 1, 0, 1}), echo);
    const nlohmann::json j = nlohmann::json::parse(render_report(doc));
    CHECK(j.at("standard_form").is_null());
    CHECK(j.at("region").is_null());
    CHECK(j.at("slice").is_null());
    CHECK(j.at("classification").at("class") == "NonHyperbolic");
    CHECK(j.at("classification").at("automorphism").is_null());
    CHECK(j.at("classification").at("class_point").is_null());
    CHECK_FALSE(j.at("classification").at("diagnostics").empty());
}

TEST_CASE("slice csv") {
    const std::string csv = slice_csv(0.0, -1.0 / 6.0, 25);
    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "t,f,df,g_num,g");
    int rows = 0;
    double prev_t = -1e300;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream fields(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(fields, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 5);
        const double t = std::stod(cells[0]);
        CHECK(t > prev_t);
        prev_t = t;
        CHECK(std::stod(cells[1]) > 0.0);  // f > 0 inside the domain
    }
    CHECK(rows == 25);
}

TEST_CASE("trajectory csv") {
    const FlowTrajectory traj = integrate_flow({0.3, 0.0}, 200.0, 0.0);
    const std::string csv = trajectory_csv(traj);
    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "t,L,K");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == static_cast<int>(traj.points.size()));
}

TEST_CASE("portrait svg structure") {
    PortraitConfig config;
    const std::string svg = emit_portrait(config);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count_occurrences(svg, "data-role=\"fixed-point\"") == 3);
    CHECK(svg.find("data-role=\"u-curve\"") != std::string::npos);
    CHECK(svg.find("data-role=\"v-curve\"") != std::string::npos);
    CHECK(svg.find("data-role=\"w-curve\"") != std::string::npos);
    CHECK(svg.find("data-role=\"m-curve\"") != std::string::npos);
    CHECK(svg.find("data-role=\"closed-region\"") != std::string::npos);
    CHECK(svg.find("clipPath id=\"plot-area\"") != std::string::npos);
    CHECK(emit_portrait(config) == svg);  // byte determinism

    PortraitConfig bare;
    bare.layers.clear();
    const std::string axes_only = emit_portrait(bare);
    CHECK(axes_only.find("data-role=\"u-curve\"") == std::string::npos);
    CHECK(axes_only.find("data-role=\"closed-region\"") == std::string::npos);
    CHECK(axes_only.find("</svg>") != std::string::npos);

    PortraitConfig with_traj;
    with_traj.trajectories.push_back(integrate_flow({0.3, 0.0}, 40.0, 0.0));
    CHECK(emit_portrait(with_traj).find("data-role=\"trajectory\"") != std::string::npos);

    PortraitConfig bad;
    bad.l_min = 1.0;
    bad.l_max = -1.0;
    CHECK_THROWS_AS(emit_portrait(bad), DomainError);
}

TEST_CASE("fraction parser") {
    CHECK(parse_real_or_fraction("0.25") == 0.25);
    CHECK(parse_real_or_fraction("1/4") == 0.25);
    CHECK(parse_real_or_fraction("-25/72") == -25.0 / 72.0);
    CHECK(parse_real_or_fraction("1e3") == 1000.0);
    CHECK_THROWS_AS(parse_real_or_fraction(""), DomainError);
    CHECK_THROWS_AS(parse_real_or_fraction("abc"), DomainError);
    CHECK_THROWS_AS(parse_real_or_fraction("1/0"), DomainError);
    CHECK_THROWS_AS(parse_real_or_fraction("1/2/3"), DomainError);
}

TEST_CASE("cli exit codes") {
    const fs::path out = temp_path("exitcodes.json");

    CHECK(run({}) == cli_exit::usage_error);
    CHECK(run({"bogus"}) == cli_exit::usage_error);
    CHECK(run({"classify"}) == cli_exit::usage_error);  // no input source
    CHECK(run({"classify", "--lk", "0", "0", "--coeffs", "1", "0", "-1", "0", "0",
               "--out", out.string()}) == cli_exit::usage_error);
    CHECK(run({"classify", "--lk", "x", "1", "--out", out.string()}) ==
          cli_exit::parse_error);
    CHECK(run({"classify", "--lk", "1/0", "0", "--out", out.string()}) ==
          cli_exit::parse_error);
    CHECK(run({"classify", "--lk", "0", "0", "--region-tol", "-1", "--out",
               out.string()}) == cli_exit::usage_error);
    CHECK(run({"reduce", "--k", "2", "--out", out.string()}) ==
          cli_exit::numerical_failure);
    CHECK(run({"portrait", "--layers", "bogus", "--out", out.string()}) ==
          cli_exit::usage_error);

    CHECK(run({"classify", "--coeffs", "1", "0", "1", "0", "1", "--out",
               out.string()}) == cli_exit::non_hyperbolic);
    CHECK(read_file(out).find("\"NonHyperbolic\"") != std::string::npos);

    fs::remove(out);
}

TEST_CASE("cli classify and analyze") {
    const fs::path out = temp_path("classify.json");
    REQUIRE(run({"classify", "--lk", "0", "1/4", "--out", out.string()}) == cli_exit::ok);
    const nlohmann::json j = nlohmann::json::parse(read_file(out));
    CHECK(j.at("classification").at("class") == "Closed_A");
    CHECK(j.at("input").at("L").get<double>() == 0.0);
    CHECK(j.at("input").at("K").get<double>() == 0.25);

    const fs::path csv = temp_path("analyze.csv");
    const fs::path aout = temp_path("analyze.json");
    REQUIRE(run({"analyze", "--lk", "0", "-1/6", "--out", aout.string(), "--csv",
                 csv.string(), "--samples", "50"}) == cli_exit::ok);
    const std::string csv_text = read_file(csv);
    CHECK(csv_text.rfind("t,f,df,g_num,g", 0) == 0);
    CHECK(count_occurrences(csv_text, "\n") == 51);  // header + 50 rows
    const nlohmann::json ja = nlohmann::json::parse(read_file(aout));
    CHECK(ja.at("classification").at("class") == "Closed_D");
    CHECK(ja.at("slice").is_object());

    // File input.
    const fs::path in = temp_path("input.json");
    {
        std::ofstream f(in);
        f << "{\"coeffs\": [1, 0, -1, \"1/2\", 0.1]}\n";
    }
    const fs::path fout = temp_path("fileinput.json");
    REQUIRE(run({"classify", "--file", in.string(), "--out", fout.string()}) ==
            cli_exit::ok);
    const nlohmann::json jf = nlohmann::json::parse(read_file(fout));
    CHECK(jf.at("input").at("source") == "file");
    CHECK(jf.at("classification").at("class").get<std::string>() != "NonHyperbolic");

    fs::remove(out);
    fs::remove(csv);
    fs::remove(aout);
    fs::remove(in);
    fs::remove(fout);
}

TEST_CASE("cli flow, portrait and reduce") {
    const fs::path csv = temp_path("flow.csv");
    const fs::path out = temp_path("flow.json");
    REQUIRE(run({"flow", "--lk", "0.3", "0", "--t-end", "200", "--stop-at-L", "0",
                 "--csv", csv.string(), "--out", out.string()}) == cli_exit::ok);
    CHECK(read_file(csv).rfind("t,L,K", 0) == 0);
    const nlohmann::json j = nlohmann::json::parse(read_file(out));
    CHECK(j.at("event_hit") == true);
    CHECK(j.at("start").at("L").get<double>() == 0.3);

    const fs::path svg = temp_path("portrait.svg");
    REQUIRE(run({"portrait", "--out", svg.string()}) == cli_exit::ok);
    const std::string svg_text = read_file(svg);
    CHECK(svg_text.rfind("<svg", 0) == 0);

    const fs::path svg2 = temp_path("portrait2.svg");
    REQUIRE(run({"portrait", "--out", svg2.string(), "--layers", "u,w",
                 "--trajectory", "0.3", "0", "40"}) == cli_exit::ok);
    const std::string svg2_text = read_file(svg2);
    CHECK(svg2_text.find("data-role=\"u-curve\"") != std::string::npos);
    CHECK(svg2_text.find("data-role=\"v-curve\"") == std::string::npos);
    CHECK(svg2_text.find("data-role=\"trajectory\"") != std::string::npos);

    const fs::path red = temp_path("reduce.json");
    REQUIRE(run({"reduce", "--k", "0.5", "--out", red.string()}) == cli_exit::ok);
    const nlohmann::json jr = nlohmann::json::parse(read_file(red));
    CHECK_THAT(jr.at("c").get<double>(),
               Catch::Matchers::WithinAbs(-1.9611913536, 1e-8));
    CHECK(jr.at("residual").get<double>() <= 1e-8);

    fs::remove(csv);
    fs::remove(out);
    fs::remove(svg);
    fs::remove(svg2);
    fs::remove(red);
}

TEST_CASE("golden reports stay byte-identical") {
    struct Golden {
        const char* name;
        std::vector<std::string> args;
    };
    const Golden cases[] = {
        {"closed_a.json", {"classify", "--lk", "0", "1/4"}},
        {"closed_b.json", {"classify", "--lk", "0.54433105395181736", "-1/12"}},
        {"closed_c.json", {"classify", "--lk", "0.38490017945975052", "0"}},
        {"closed_d.json", {"classify", "--lk", "0", "-1/6"}},
        {"incomplete_a.json", {"classify", "--lk", "0", "0.5"}},
        {"incomplete_b.json", {"classify", "--lk", "1", "0"}},
        {"incomplete_c.json", {"classify", "--lk", "1", "-25/72"}},
        {"incomplete_d.json", {"classify", "--lk", "1", "1.0547840621853966"}},
    };
    const fs::path golden_dir = QUARTIC_GOLDEN_DIR;
    for (const Golden& g : cases) {
        INFO("golden case " << g.name);
        const fs::path expected_path = golden_dir / g.name;
        REQUIRE(fs::exists(expected_path));
        const fs::path actual_path = temp_path(g.name);
        std::vector<std::string> args = g.args;
        args.push_back("--out");
        args.push_back(actual_path.string());
        REQUIRE(run(args) == cli_exit::ok);
        CHECK(read_file(actual_path) == read_file(expected_path));
        fs::remove(actual_path);
    }
}

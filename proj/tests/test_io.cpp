#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "evdfit/io.hpp"
#include "evdfit/simulate.hpp"
#include "reference_data.hpp"

using namespace evdfit;
using Catch::Approx;
using nlohmann::json;

namespace {

std::string data_path(const std::string& name) {
    return std::string(EVDFIT_DATA_DIR) + "/" + name;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        path = std::string("evdfit_io_test_") + std::to_string(counter++) + ".tmp";
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
    static int counter;
};
int TempFile::counter = 0;

}  // namespace

TEST_CASE("bundled datasets parse to the published tables") {
    const auto t1 = read_plain_dataset(data_path("table1.dat"));
    CHECK(t1 == table1_values);

    const auto t2 = read_progressive_dataset(data_path("table2.dat"));
    REQUIRE(t2.size() == table2_values.size());
    for (std::size_t i = 0; i < t2.size(); ++i) {
        CHECK(t2[i].value == table2_values[i]);
        CHECK(t2[i].removals == table2_removals[i]);
    }
}

TEST_CASE("plain parsing handles comments and whitespace") {
    const TempFile f("# header\n 1.5 2.5\t3.5 # trailing\n\n-4e-1\n");
    CHECK(read_plain_dataset(f.path) == std::vector<double>{1.5, 2.5, 3.5, -0.4});
}

TEST_CASE("plain parsing rejects malformed content") {
    const TempFile bad_token("1.0 abc 2.0\n");
    CHECK_THROWS_AS(read_plain_dataset(bad_token.path), std::domain_error);

    const TempFile single("42.0\n");
    CHECK_THROWS_AS(read_plain_dataset(single.path), std::domain_error);

    const TempFile nonfinite("1.0 inf\n");
    CHECK_THROWS_AS(read_plain_dataset(nonfinite.path), std::domain_error);

    CHECK_THROWS_AS(read_plain_dataset("no_such_file.dat"), file_error);
}

TEST_CASE("progressive parsing enforces two columns") {
    const TempFile three("1.0 2 3\n2.0 0\n");
    CHECK_THROWS_AS(read_progressive_dataset(three.path), std::domain_error);

    const TempFile negative("1.0 -1\n2.0 0\n");
    CHECK_THROWS_AS(read_progressive_dataset(negative.path), std::domain_error);

    const TempFile good("# c\n1.0 2\n2.5 0\n");
    const auto rows = read_progressive_dataset(good.path);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].value == 2.5);
    CHECK(rows[0].removals == 2);
}

TEST_CASE("numbers round-trip through 17 significant digits") {
    Rng rng(321);
    for (int i = 0; i < 200; ++i) {
        const double x = (rng.uniform01() - 0.5) * std::pow(10.0, 300.0 * (rng.uniform01() - 0.5));
        CHECK(std::stod(format_number(x)) == x);
    }
    for (double x : {0.1, 1.0 / 3.0, 152.7, 1.0263807683192183, -1.6608})
        CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("written datasets re-ingest exactly") {
    const Sample s = draw_sample(GumbelParams(60.3, 8.3), 38, 7);
    std::ostringstream body;
    write_plain_dataset(body, s.values());
    const TempFile f(body.str());
    CHECK(read_plain_dataset(f.path) == s.values());

    std::ostringstream pbody;
    write_progressive_dataset(pbody, table2_values, table2_removals);
    const TempFile pf(pbody.str());
    const auto rows = read_progressive_dataset(pf.path);
    REQUIRE(rows.size() == table2_values.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].value == table2_values[i]);
        CHECK(rows[i].removals == table2_removals[i]);
    }
}

TEST_CASE("fit reports carry the documented schema and round-trip losslessly") {
    ReportInput input;
    input.source = "data/table2.dat";
    input.family = Family::lev;
    input.regime = Regime::progressive;
    input.n = 19;
    input.r = 8;
    input.removals = table2_removals;

    ReportConfig cfg;
    cfg.tolerance = 5e-5;
    cfg.max_iterations = 500;
    cfg.initial = 0.7912;
    cfg.aitken = false;

    const double sigma = 1.0263869570118507;
    const double mu = 2.22196376705466;
    const double ll = -20.862562807970409;
    const std::string text = render_fit_report(input, "fixed-point", cfg, sigma, mu, 11,
                                               "converged", 3.1e-5, ll);

    const json doc = json::parse(text);
    std::set<std::string> keys;
    for (const auto& [k, v] : doc.items()) keys.insert(k);
    CHECK(keys == std::set<std::string>{"tool", "version", "command", "input", "method",
                                        "config", "estimates", "solver", "log_likelihood"});

    CHECK(doc["tool"] == "evdfit");
    CHECK(doc["version"] == tool_version);
    CHECK(doc["command"] == "fit");
    CHECK(doc["input"]["family"] == "lev");
    CHECK(doc["input"]["censoring"] == "progressive");
    CHECK(doc["input"]["n"] == 19);
    CHECK(doc["input"]["r"] == 8);
    CHECK(doc["input"]["removals"].size() == 8);
    CHECK_FALSE(doc["input"].contains("time"));

    // exact round trip of every floating-point field
    CHECK(doc["estimates"]["sigma"].get<double>() == sigma);
    CHECK(doc["estimates"]["mu"].get<double>() == mu);
    CHECK(doc["log_likelihood"].get<double>() == ll);
    CHECK(doc["config"]["tolerance"].get<double>() == 5e-5);
    CHECK(doc["solver"]["iterations"] == 11);
    CHECK(doc["solver"]["termination"] == "converged");
}

TEST_CASE("weibull reports use the weibull parameter names and optional fields appear") {
    ReportInput input;
    input.source = "t.dat";
    input.family = Family::weibull;
    input.regime = Regime::type1;
    input.n = 20;
    input.r = 12;
    input.censor_time = 152.7;

    const std::string text = render_fit_report(input, "newton", ReportConfig{5e-5, 500, 1.0, true},
                                               1.5, 160.0, 6, "converged", 1e-6, -70.0, 99);
    const json doc = json::parse(text);
    CHECK(doc["estimates"].contains("beta"));
    CHECK(doc["estimates"].contains("theta"));
    CHECK_FALSE(doc["estimates"].contains("sigma"));
    CHECK(doc["input"]["time"].get<double>() == 152.7);
    CHECK(doc["input"]["censoring"] == "type1");
    CHECK(doc["config"]["acceleration"] == "aitken");
    CHECK(doc["seed"].get<std::uint64_t>() == 99);
}

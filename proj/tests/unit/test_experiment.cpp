#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "kronmom/errors.hpp"
#include "kronmom/experiment.hpp"
#include "kronmom/report.hpp"

using namespace kronmom;
namespace fs = std::filesystem;

namespace {

std::size_t error_line(std::string_view text) {
    try {
        parse_experiment_config(text, ".");
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const char* kSmallStudy = R"(
seed = 5
objective = dsq-f2
methods = direct, leading
starts = 8
regenerate = true

[synthetic small]
params = 0.25, 0.5, 0.95   # given with a < c on purpose
r = 8
replications = 3
)";

}  // namespace

TEST_CASE("config parsing") {
    const auto cfg = parse_experiment_config(R"(
# comment
seed = 7
output_dir = out
features = edges, hairpins, triangles
methods = grid,best
grid_points = 20

[synthetic set-a]
params = 0.99, 0.48, 0.25
r = 10
replications = 20

[graph ca-GrQc]
counts = grqc.json
r = 13
)", "/data");
    CHECK(cfg.seed == 7);
    CHECK(cfg.fit.direct.seed == 7);
    CHECK(cfg.output_dir == fs::path("/data/out"));
    CHECK(cfg.objective.features.size() == 3);
    CHECK(cfg.methods == std::vector<FitMethod>{FitMethod::grid, FitMethod::best});
    CHECK(cfg.fit.grid.points_per_dim == 20);
    REQUIRE(cfg.synthetic.size() == 1);
    CHECK(cfg.synthetic[0].name == "set-a");
    CHECK(cfg.synthetic[0].b == 0.48);
    CHECK(cfg.synthetic[0].replications == 20);
    REQUIRE(cfg.graphs.size() == 1);
    CHECK(cfg.graphs[0].counts_json);
    CHECK(cfg.graphs[0].path == fs::path("/data/grqc.json"));
    CHECK(cfg.graphs[0].r == 13u);

    CHECK(parse_experiment_config("methods = all\n[synthetic x]\nparams=1,1,1\nr=2\n", ".").methods.size() == 4);
}

TEST_CASE("config errors carry line numbers") {
    CHECK(error_line("seed = 1\nbogus = 2\n") == 2);
    CHECK(error_line("seed = x\n") == 1);
    CHECK(error_line("[synthetic a]\nparams = 0.5, 0.5\n") == 2);
    CHECK(error_line("[cluster a]\n") == 1);
    CHECK(error_line("seed 4\n") == 1);
    CHECK(error_line("methods = newton\n") == 1);
    CHECK(error_line("[synthetic a]\nr = 4\n") > 0);
    CHECK(error_line("[graph g]\nr = 4\n") > 0);
    CHECK(error_line("objective = dabs-f2\n[synthetic a]\nparams=1,1,1\n") > 0);
    CHECK(error_line("features = edges,triangles\n[synthetic a]\nparams=1,1,1\n") > 0);
}

TEST_CASE("config validation") {
    auto cfg = parse_experiment_config("[synthetic a]\nparams = 0.9, 0.5, 0.2\nr = 4\nreplications = 0\n", ".");
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = parse_experiment_config("[graph g]\npath = /nonexistent/file.txt\n", ".");
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = parse_experiment_config("seed = 1\n", ".");
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

TEST_CASE("median") {
    CHECK(median({3, 1, 2}) == 2);
    CHECK(median({4, 1, 3, 2}) == 2.5);
    CHECK(std::isnan(median({})));
}

TEST_CASE("small synthetic study") {
    const auto cfg = parse_experiment_config(kSmallStudy, ".");
    const auto out = run_experiment(cfg, 1);
    REQUIRE(out.observed.size() == 3);
    REQUIRE(out.fits.size() == 6);
    CHECK(out.fits[0].method == FitMethod::direct);
    CHECK(out.fits[0].replication == 0);
    CHECK(out.fits[2].replication == 2);
    CHECK(out.fits[3].method == FitMethod::leading);
    CHECK(out.features.size() == 4 * 6 - 4 * static_cast<std::size_t>(std::count_if(
                                              out.fits.begin(), out.fits.end(), [](auto& f) { return !f.result; })));
    REQUIRE(out.summary.size() == 2);
    REQUIRE(out.summary[0].truth.has_value());
    CHECK((*out.summary[0].truth)[0] == 0.95);
    CHECK(out.observed[0].counts != out.observed[1].counts);

    const auto again = run_experiment(cfg, 3);
    REQUIRE(again.fits.size() == out.fits.size());
    for (std::size_t k = 0; k < out.fits.size(); ++k) {
        CHECK(again.fits[k].source == out.fits[k].source);
        CHECK(again.fits[k].result.has_value() == out.fits[k].result.has_value());
        if (out.fits[k].result) CHECK(again.fits[k].result->params == out.fits[k].result->params);
    }
    for (std::size_t k = 0; k < out.features.size(); ++k) {
        CHECK(again.features[k].regenerated == out.features[k].regenerated);
    }

    const fs::path dir = fs::temp_directory_path() / "kronmom_experiment_test";
    fs::remove_all(dir);
    write_experiment_csv(out, dir);
    for (const char* name : {"observed.csv", "fits.csv", "differences.csv", "features.csv", "summary.csv"}) {
        CHECK(fs::exists(dir / name));
    }
    const std::string summary = slurp(dir / "summary.csv");
    CHECK(summary.rfind("source,method,fits,median_a", 0) == 0);
    CHECK(summary.find("small,direct,3,") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("counts JSON round trip") {
    const FeatureCounts c{5242, 14484, 229867, 2482738, 48260};
    CHECK(counts_from_json(to_json(c)) == c);
    CHECK(counts_from_json(nlohmann::json::parse(to_json(c).dump())) == c);
    CHECK(counts_from_json(nlohmann::json::parse(R"({"vertices":1,"edges":0,"hairpins":0,"tripins":6.75e8,"triangles":0})"))
              .tripins == 675000000);
    CHECK_THROWS_AS(counts_from_json(nlohmann::json::parse(R"({"vertices":1})")), std::invalid_argument);
    CHECK_THROWS_AS(
        counts_from_json(nlohmann::json::parse(R"({"vertices":1,"edges":-1,"hairpins":0,"tripins":0,"triangles":0})")),
        std::invalid_argument);
}

TEST_CASE("expected JSON") {
    const auto j = expected_to_json({1, 1, 1, 2});
    CHECK(j["E"] == 6.0);
    CHECK(j["H"] == 12.0);
    CHECK(j["T"] == 4.0);
    CHECK(j["Tri"] == 4.0);
    CHECK(expected_to_json({0, 0.5, 0, 3})["alpha"].is_null());
}

TEST_CASE("CSV rows") {
    const auto fit = fit_grid({5242, 14484, 229867, 2482738, 48260}, 13, ObjectiveSpec::parse("dsq-f2"), {10, 1});
    const std::string row = fit_csv_row("grid", fit);
    CHECK(row.rfind("grid,1,", 0) == 0);
    const std::string header = fit_csv_header();
    CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
    CHECK(source_csv_row({3, 3, 3, 0, 1}, 0.5) == "source,,,,3,3,3,0,1,,0.5");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
}

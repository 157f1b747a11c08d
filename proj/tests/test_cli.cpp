#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "zetalaw/cli/commands.hpp"
#include "zetalaw/cli/csv.hpp"
#include "zetalaw/errors.hpp"
#include "zetalaw/zeta_core.hpp"

using namespace zetalaw;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("zetalaw_cli_" + std::to_string(::getpid())) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

int run(const std::string& args, const fs::path& out = {}, const fs::path& err = {}) {
    std::string cmd = std::string(ZETALAW_BINARY) + " " + args;
    cmd += " > " + (out.empty() ? std::string("/dev/null") : out.string());
    cmd += " 2> " + (err.empty() ? std::string("/dev/null") : err.string());
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_CASE("predict") {
    cli::PredictOptions o;
    o.n = {10000, 100000};
    const auto r = cli::cmd_predict(o);
    const auto& rows = r.results["rows"];
    CHECK(rows[0]["modes"] == 10);
    CHECK(rows[1]["modes"] == 18);
    CHECK(std::abs(rows[0]["delta_sq"].get<double>() - 2.93) <= 0.005);
    CHECK(std::abs(rows[1]["delta_sq"].get<double>() - 3.50) <= 0.005);
    CHECK(std::abs(rows[0]["auc"].get<double>() - 0.887) <= 0.0005);
    CHECK(std::abs(rows[1]["auc"].get<double>() - 0.907) <= 0.0005);
    CHECK(r.results["regime"] == "distributed");
    CHECK(r.results["asymptote"]["kind"] == "divergent_to_one");

    cli::PredictOptions beta2;
    beta2.params.beta = 2.0;
    beta2.target_auc = 0.9;
    const auto u = cli::cmd_predict(beta2);
    CHECK(u.results["required_sample_size"]["reachable"] == false);
    CHECK(u.results["required_sample_size"]["reason"] == "above_asymptote");
    CHECK(std::abs(u.results["required_sample_size"]["limit_auc"].get<double>() - 0.8178) <= 0.0005);
    CHECK(u.results["regime"] == "concentrated");

    cli::PredictOptions beta1;
    beta1.target_auc = 0.9;
    const auto n = cli::cmd_predict(beta1).results["required_sample_size"]["n"].get<std::int64_t>();
    CHECK(n == *oracle::min_sample_size_scan({1.0, 1.0, 1.0, 1.0}, 0.9, 1000000));

    cli::PredictOptions bad;
    bad.params.beta = -1.0;
    CHECK_THROWS_AS(cli::cmd_predict(bad), DomainError);
}

TEST_CASE("simulate then analyze") {
    const fs::path dir = scratch("roundtrip");
    cli::SimulateOptions s;
    s.seed = 4;
    s.out_dir = (dir / "sim").string();
    const auto sim = cli::cmd_simulate(s);
    CHECK(sim.results["delta_sq_pop"].get<double>() == doctest::Approx(harmonic_partial_sum(1.0, 100)).epsilon(1e-12));

    const auto table = cli::read_labeled_csv((dir / "sim" / "data.csv").string(), "label");
    CHECK(table.data.size() == 10000);
    CHECK(table.data.features.cols() == 100);
    CHECK(table.data.count(1) == 5000);
    CHECK(table.label_values[0] == "0");

    cli::AnalyzeOptions a;
    a.data = (dir / "sim" / "data.csv").string();
    a.out_dir = (dir / "an").string();
    const auto r = cli::cmd_analyze(a);
    CHECK(std::abs(r.results["beta_hat"]["slope"].get<double>() - 1.0) <= 0.15);
    CHECK(std::abs(r.results["gamma_hat"]["slope"].get<double>() - 1.0) <= 0.15);
    CHECK(r.results["identifiable_modes"].get<int>() >= 3);
    CHECK(r.results["eigenvalues"].size() == 100);
    CHECK(fs::exists(dir / "an" / "spectrum.csv"));
    CHECK(fs::exists(dir / "an" / "energy.csv"));
    CHECK(r.inputs_digest.rfind("sha256:", 0) == 0);

    // Same seed, same bytes.
    cli::SimulateOptions again = s;
    again.out_dir = (dir / "sim2").string();
    cli::cmd_simulate(again);
    CHECK(slurp(dir / "sim" / "data.csv") == slurp(dir / "sim2" / "data.csv"));
    CHECK(slurp(dir / "sim" / "truth.json") == slurp(dir / "sim2" / "truth.json"));
    CHECK(cli::cmd_analyze(a).to_json(false) == r.to_json(false));
}

TEST_CASE("analyze edge cases") {
    const fs::path dir = scratch("edges");
    SUBCASE("constant features are named") {
        std::ostringstream csv;
        csv << "a,flat,b,label\n";
        for (int i = 0; i < 20; ++i) csv << i << ",7," << (i * i) % 5 << ',' << (i % 2) << '\n';
        spit(dir / "flat.csv", csv.str());
        cli::AnalyzeOptions a;
        a.data = (dir / "flat.csv").string();
        try {
            cli::cmd_analyze(a);
            FAIL("expected a data error");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find("flat") != std::string::npos);
        }
    }
    SUBCASE("identity covariance has no gaps") {
        cli::SimulateOptions s;
        s.params.gamma = 0.0;
        s.p = 20;
        s.n = 2000;
        s.out_dir = (dir / "iso").string();
        cli::cmd_simulate(s);
        cli::AnalyzeOptions a;
        a.data = (dir / "iso" / "data.csv").string();
        const auto r = cli::cmd_analyze(a);
        CHECK(r.results["identifiable_modes"] == 0);
        CHECK(r.results["effective_rank"].get<double>() > 0.8 * 20);
        CHECK(r.results["beta_hat"].is_null());
        CHECK_FALSE(r.warnings.empty());
    }
    SUBCASE("three label values") {
        spit(dir / "three.csv", "a,label\n1,x\n2,y\n3,z\n4,x\n");
        cli::AnalyzeOptions a;
        a.data = (dir / "three.csv").string();
        CHECK_THROWS_AS(cli::cmd_analyze(a), DataError);
    }
}

TEST_CASE("csv ingestion") {
    const fs::path dir = scratch("csv");
    spit(dir / "ok.csv", "x, y ,label\n1,2.5,case\n-3e2, 4 ,control\n");
    const auto t = cli::read_labeled_csv((dir / "ok.csv").string(), "label");
    CHECK(t.feature_names == std::vector<std::string>{"x", "y"});
    CHECK(t.label_values[0] == "case");
    CHECK(t.data.features(1, 0) == -300.0);
    CHECK(t.data.labels == std::vector<int>{0, 1});

    spit(dir / "missing.csv", "x,y\n1,\n");
    CHECK_THROWS_AS(cli::read_csv((dir / "missing.csv").string()), DataError);
    spit(dir / "ragged.csv", "x,y\n1,2,3\n");
    CHECK_THROWS_AS(cli::read_csv((dir / "ragged.csv").string()), DataError);
    spit(dir / "text.csv", "x,y\n1,abc\n");
    CHECK_THROWS_AS(cli::read_matrix_csv((dir / "text.csv").string()), DataError);
    spit(dir / "inf.csv", "x\ninf\n");
    CHECK_THROWS_AS(cli::read_matrix_csv((dir / "inf.csv").string()), DataError);
    spit(dir / "numeric_labels.csv", "x,label\n1,10\n2,9\n");
    CHECK(cli::read_labeled_csv((dir / "numeric_labels.csv").string(), "label").label_values[0] == "9");
    CHECK_THROWS_AS(cli::read_labeled_csv((dir / "ok.csv").string(), "group"), DataError);

    CHECK(cli::format_number(0.1) == "0.1");
    CHECK(cli::format_number(-2.5e-7) == "-2.5e-07");
}

TEST_CASE("curve") {
    const fs::path dir = scratch("curve");
    cli::SimulateOptions s;
    s.params = {0.8, 0.5, 1.0, 1.0};
    s.p = 200;
    s.n = 4000;
    s.seed = 21;
    s.out_dir = (dir / "sim").string();
    cli::cmd_simulate(s);

    cli::CurveOptions c;
    c.data = (dir / "sim" / "data.csv").string();
    c.models = {"diagonal_lda", "ridge_lda"};
    c.grid = {50, 200, 1000, 5000};
    c.repeats = 3;
    c.seed = 8;
    c.threads = 4;
    c.out_dir = (dir / "out").string();
    const auto r = cli::cmd_curve(c);
    REQUIRE(r.results["crossovers"].size() == 1);
    CHECK(r.results["crossovers"][0]["n_star"].is_number());
    CHECK(r.results["models"].size() == 2);
    CHECK(fs::exists(dir / "out" / "curve.csv"));

    c.threads = 1;
    CHECK(cli::cmd_curve(c).results == r.results);

    cli::CurveOptions single = c;
    single.models = {"ridge_lda"};
    CHECK_FALSE(cli::cmd_curve(single).results.contains("crossovers"));

    cli::CurveOptions too_big = c;
    too_big.grid = {50, 7000};
    try {
        cli::cmd_curve(too_big);
        FAIL("expected a sizing error");
    } catch (const SizingError& e) {
        CHECK(e.max_feasible_n() == 6000);
    }
}

TEST_CASE("crossmodal") {
    const fs::path dir = scratch("crossmodal");
    cli::SimulateOptions s;
    s.kind = "multimodal";
    s.rank = 3;
    s.p_x = 8;
    s.p_y = 6;
    s.noise_x = 0.2;
    s.noise_y = 0.2;
    s.n = 600;
    s.out_dir = (dir / "mm").string();
    const auto truth = cli::cmd_simulate(s);
    CHECK(truth.results["population_canonical_correlations"][0].get<double>() ==
          doctest::Approx(1.0 / 1.04));

    cli::CrossmodalOptions o;
    o.x = (dir / "mm" / "x.csv").string();
    o.y = (dir / "mm" / "y.csv").string();
    o.n_perm = 99;
    o.out_dir = (dir / "out").string();
    const auto r = cli::cmd_crossmodal(o);
    int strong = 0;
    for (const auto& v : r.results["singular_values"]) strong += v.get<double>() > 0.8;
    CHECK(strong == 3);
    CHECK(r.results["canonical_correlations"].size() == 3);
    CHECK(r.results["hsic"]["p_value"].get<double>() == doctest::Approx(0.01));
    CHECK(fs::exists(dir / "out" / "singulars.csv"));

    cli::CrossmodalOptions self = o;
    self.y = o.x;
    self.out_dir.clear();
    const auto same = cli::cmd_crossmodal(self);
    for (const auto& v : same.results["singular_values"]) CHECK(v.get<double>() == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(same.results["hsic"]["p_value"].get<double>() == doctest::Approx(1.0 / 100.0));
}

TEST_CASE("dkw") {
    cli::DkwOptions o;
    o.n = 1000;
    CHECK(cli::cmd_dkw(o).results["epsilon"].get<double>() == doctest::Approx(0.04295).epsilon(1e-4));
    cli::DkwOptions e;
    e.epsilon = 0.01;
    CHECK(cli::cmd_dkw(e).results["required_n"] == 18445);
    e.epsilon = 0.04295;
    CHECK(std::abs(cli::cmd_dkw(e).results["required_n"].get<std::int64_t>() - 1000) <= 1);

    const fs::path dir = scratch("dkw");
    spit(dir / "five.csv", "v\n1\n2\n3\n4\n5\n");
    cli::DkwOptions d;
    d.data = (dir / "five.csv").string();
    d.quantile = 0.05;
    const auto band = cli::cmd_dkw(d).results["band"];
    CHECK(band["lo"] == 1.0);
    CHECK(band["hi"] == 4.0);
    d.quantile = 0.5;
    CHECK(cli::cmd_dkw(d).results["band"]["hi"].is_null());
    CHECK(cli::cmd_dkw(d).results["band"]["hi_unbounded"] == true);
    CHECK_THROWS_AS(cli::cmd_dkw({}), DomainError);
}

TEST_CASE("binary") {
    const fs::path dir = scratch("binary");
    SUBCASE("exit codes") {
        CHECK(run("predict --n 100") == 0);
        CHECK(run("predict --beta 2 --target-auc 0.9") == 0);
        CHECK(run("") == 2);
        CHECK(run("predict --beta abc") == 2);
        CHECK(run("predict --beta -1") == 2);
        CHECK(run("analyze --data " + (dir / "missing.csv").string()) == 3);
        // Rank-deficient modality with an unregularized whitening.
        spit(dir / "x.csv", "a,b,c\n1,2,3\n2,1,3\n0,4,4\n5,1,6\n3,3,6\n");
        spit(dir / "y.csv", "u\n1\n3\n2\n5\n4\n");
        CHECK(run("crossmodal --x " + (dir / "x.csv").string() + " --y " + (dir / "y.csv").string() +
                  " --reg 0 --n-perm 99 --out-dir ''") == 4);
        spit(dir / "y4.csv", "u\n1\n3\n2\n5\n");
        CHECK(run("crossmodal --x " + (dir / "x.csv").string() + " --y " + (dir / "y4.csv").string() +
                  " --n-perm 99 --out-dir ''") == 3);
    }
    SUBCASE("reports are stable except for the timestamp") {
        const std::string args = "simulate --p 5 --n 50 --seed 3 --out-dir " + (dir / "s").string();
        REQUIRE(run(args, dir / "a.json") == 0);
        const std::string first = slurp(dir / "s" / "data.csv");
        REQUIRE(run(args, dir / "b.json") == 0);
        CHECK(slurp(dir / "s" / "data.csv") == first);
        auto a = read_json(dir / "a.json");
        auto b = read_json(dir / "b.json");
        CHECK(a.contains("generated_at"));
        a.erase("generated_at");
        b.erase("generated_at");
        CHECK(a == b);
        CHECK(a["params"]["seed"] == 3);
    }
    SUBCASE("environment seed") {
        REQUIRE(run("simulate --p 5 --n 50 --seed 9 --out-dir " + (dir / "flag").string()) == 0);
        REQUIRE(std::system(("ZETALAW_SEED=9 " + std::string(ZETALAW_BINARY) + " simulate --p 5 --n 50 --out-dir " +
                             (dir / "env").string() + " > /dev/null")
                                .c_str()) == 0);
        CHECK(slurp(dir / "flag" / "data.csv") == slurp(dir / "env" / "data.csv"));
        REQUIRE(run("simulate --p 5 --n 50 --seed 10 --out-dir " + (dir / "other").string()) == 0);
        CHECK(slurp(dir / "flag" / "data.csv") != slurp(dir / "other" / "data.csv"));
    }
    SUBCASE("config file with command-line override") {
        spit(dir / "run.cfg", "# prediction settings\nbeta = 2\ngamma = 1\ncd = 1\nn = 10000\n");
        REQUIRE(run("--config " + (dir / "run.cfg").string() + " predict", dir / "cfg.json") == 0);
        auto cfg = read_json(dir / "cfg.json");
        CHECK(cfg["params"]["beta"] == 2.0);
        CHECK(std::abs(cfg["results"]["rows"][0]["auc"].get<double>() - 0.811) <= 0.0005);
        REQUIRE(run("--config " + (dir / "run.cfg").string() + " predict --beta 0.5", dir / "over.json") == 0);
        auto over = read_json(dir / "over.json");
        CHECK(over["params"]["beta"] == 0.5);
        CHECK(std::abs(over["results"]["rows"][0]["auc"].get<double>() - 0.943) <= 0.0005);
    }
    SUBCASE("report file and plots") {
        REQUIRE(run("simulate --p 30 --n 400 --seed 1 --out-dir " + (dir / "p").string()) == 0);
        REQUIRE(run("analyze --data " + (dir / "p" / "data.csv").string() + " --svg --out-dir " +
                    (dir / "plots").string() + " --out " + (dir / "report.json").string()) == 0);
        const auto report = read_json(dir / "report.json");
        CHECK(report["command"] == "analyze");
        CHECK(report["params"]["safety"] == 1.0);
        CHECK(slurp(dir / "plots" / "spectrum.svg").rfind("<svg", 0) == 0);
    }
}

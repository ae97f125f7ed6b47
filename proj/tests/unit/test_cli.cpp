#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "dpa/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "dpa");
    std::ostringstream out, err;
    Result r;
    r.code = dpa::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "dpa_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("eval reports observables and criteria") {
        const Result r = run({"eval", "--nbar", "0.2", "--r", "0.1", "--alpha", "0.3", "--u", "0"});
        REQUIRE(r.code == 0);
        const json j = json::parse(r.out);
        CHECK(j["mandel_q"].get<double>() == doctest::Approx(0.2593).epsilon(1e-4));
        CHECK(j["p_factor"].get<double>() == doctest::Approx(1.1462).epsilon(1e-4));
        CHECK(j["criteria"]["field_nonclassical"] == false);
        CHECK(j["snr"].get<double>() == doctest::Approx(j["snr_max"].get<double>()));
    }

    TEST_CASE("eval of the vacuum marks the Mandel parameter undefined") {
        const Result r = run({"eval", "--nbar", "0", "--r", "0", "--alpha", "0"});
        REQUIRE(r.code == 0);
        CHECK(json::parse(r.out)["mandel_q"] == "undefined (vacuum)");
    }

    TEST_CASE("sweep CSV carries a provenance header and round-trip precision") {
        const Result r = run({"sweep", "--nbar", "0.2", "--r", "0.1", "--alpha", "0.4", "--u-steps", "5"});
        REQUIRE(r.code == 0);
        const auto rows = lines(r.out);
        REQUIRE(rows.size() == 7);
        CHECK(rows[0].rfind("# dpa ", 0) == 0);
        CHECK(rows[0].find("nbar=0.20000000000000001") != std::string::npos);
        CHECK(rows[0].find("u_steps=5") != std::string::npos);
        CHECK(rows[1].rfind("u,mandel_q", 0) == 0);
        CHECK(rows[2].rfind("0,0.23813714989826523,", 0) == 0);
    }

    TEST_CASE("output is identical for any worker count") {
        const std::vector<std::string> base{"sweep", "--nbar", "0.3", "--r", "0.2", "--alpha", "0.7", "--u-steps", "40"};
        auto with = [&](const std::string& workers) {
            auto args = base;
            args.insert(args.end(), {"--workers", workers});
            return run(args);
        };
        const Result one = with("1");
        const Result four = with("4");
        CHECK(one.code == 0);
        CHECK(one.out == four.out);
        CHECK(one.out == with("1").out);
    }

    TEST_CASE("config file supplies defaults and flags override it") {
        const fs::path cfg = scratch("sweep.json");
        write_file(cfg, R"({"nbar": 0.2, "r": 0.1, "alpha": 0.9, "u_steps": 3, "format": "json"})");
        const Result from_file = run({"sweep", "--config", cfg.string()});
        REQUIRE(from_file.code == 0);
        const json j = json::parse(from_file.out);
        CHECK(j["params"]["alpha_mag"].get<double>() == doctest::Approx(0.9));
        CHECK(j["rows"].size() == 3);

        const Result overridden = run({"sweep", "--config", cfg.string(), "--alpha", "0.4"});
        REQUIRE(overridden.code == 0);
        CHECK(json::parse(overridden.out)["params"]["alpha_mag"].get<double>() == doctest::Approx(0.4));

        write_file(cfg, R"({"nbar": 0.2, "colour": "blue"})");
        CHECK(run({"sweep", "--config", cfg.string()}).code == 1);
        write_file(cfg, R"({"nbar": "lots"})");
        CHECK(run({"sweep", "--config", cfg.string()}).code == 1);
        CHECK(run({"sweep", "--config", scratch("missing.json").string()}).code == 1);
    }

    TEST_CASE("out flag writes the file") {
        const fs::path path = scratch("critical.json");
        fs::remove(path);
        const Result r = run({"critical", "--nbar", "0.1", "--r", "0.2", "--out", path.string()});
        REQUIRE(r.code == 0);
        std::ifstream in(path);
        const json j = json::parse(in);
        CHECK(j["alpha_c"].get<double>() == doctest::Approx(0.49613).epsilon(1e-5));
        CHECK(j["mechanism"] == "InteriorTangency");
    }

    TEST_CASE("usage errors exit with 1") {
        CHECK(run({}).code == 1);
        CHECK(run({"eval", "--bogus", "1"}).code == 1);
        CHECK(run({"eval", "--nbar", "-1"}).code == 1);
        CHECK(run({"eval", "--format", "xml"}).code == 1);
        CHECK(run({"sweep", "--r", "0"}).code == 1);
        CHECK(run({"sweep", "--r", "0.1", "--u-start", "1", "--u-stop", "1"}).code == 1);
        CHECK(run({"sweep", "--r", "0.1", "--workers", "0"}).code == 1);
    }

    TEST_CASE("numerical gate failures exit with 2") {
        const Result r = run({"critical", "--nbar", "5", "--r", "0.01"});
        CHECK(r.code == 2);
        CHECK(json::parse(r.out)["error"] == "Monotonicity");
    }

    TEST_CASE("wigner grid covers the requested window") {
        const Result r = run({"wigner-grid", "--nbar", "0.1", "--r", "0.2", "--alpha", "0.5", "--grid-steps", "4"});
        REQUIRE(r.code == 0);
        const auto rows = lines(r.out);
        CHECK(rows[0].rfind("# dpa ", 0) == 0);
        CHECK(rows.size() == 2 + 16);
    }

    TEST_CASE("verify on a small grid") {
        const fs::path cfg = scratch("verify.json");
        write_file(cfg, R"({"grid": {"nbar": [0.2], "r": [0.2], "alpha": [0.5], "u": [0.5], "lambda": [0.0],
                             "hamiltonian": false}})");
        const Result r = run({"verify", "--config", cfg.string(), "--workers", "1"});
        CHECK(r.code == 0);
        CHECK(r.err.find("0 failures") != std::string::npos);
    }

    TEST_CASE("version flag") {
        const Result r = run({"--version"});
        CHECK(r.code == 0);
        CHECK(r.out.find('.') != std::string::npos);
    }
}

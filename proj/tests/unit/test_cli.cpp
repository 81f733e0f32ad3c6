// Command-line front end, driven in-process.

#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"
#include "qsync/export.hpp"
#include "qsync/version.hpp"

using namespace qsync;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "qsync");
    std::ostringstream out, err;
    auto* old_out = std::cout.rdbuf(out.rdbuf());
    auto* old_err = std::cerr.rdbuf(err.rdbuf());
    int code = -1;
    try {
        code = cli::parse_and_dispatch(args);
    } catch (...) {
        std::cout.rdbuf(old_out);
        std::cerr.rdbuf(old_err);
        throw;
    }
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path(QSYNC_TEST_TMP) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::size_t line_count(const std::string& text) {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("help and version") {
    const auto help = run({"--help"});
    CHECK(help.code == cli::kOk);
    for (const char* sub : {"evolve", "qfunc", "sphase", "sweep", "figure", "verify"}) CHECK(help.out.find(sub) != std::string::npos);
    CHECK(help.out.find("--lambda") != std::string::npos);

    const auto version = run({"--version"});
    CHECK(version.code == cli::kOk);
    CHECK(version.out.find(std::string("qsync ") + kVersion) != std::string::npos);
    CHECK(version.out.find(kGridHashAlgorithm) != std::string::npos);

    CHECK(run({"figure", "--help"}).code == cli::kOk);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run({}).code == cli::kValidationError);
    CHECK(run({"bogus"}).code == cli::kValidationError);
    CHECK(run({"evolve", "--lambda", "1", "--tmax", "1", "--frobnicate"}).code == cli::kValidationError);
    CHECK(run({"evolve", "--tmax", "1"}).code == cli::kValidationError);
    CHECK(run({"evolve", "--lambda", "abc", "--tmax", "1"}).code == cli::kValidationError);
    CHECK(run({"figure", "--id", "fig9z", "--out", "x"}).code == cli::kValidationError);
    CHECK(run({"sweep", "--axis", "delta:-1:1:3", "--observable", "nope", "--fixed", "gamma=1"}).code ==
          cli::kValidationError);
}

TEST_CASE("invalid bath parameters name the field") {
    const auto neg = run({"evolve", "--lambda", "-1", "--tmax", "10"});
    CHECK(neg.code == cli::kValidationError);
    CHECK(neg.err.find("lambda") != std::string::npos);
    CHECK(neg.out.empty());

    const auto gamma = run({"evolve", "--lambda", "1", "--gamma", "-0.5", "--tmax", "10"});
    CHECK(gamma.code == cli::kValidationError);
    CHECK(gamma.err.find("gamma") != std::string::npos);

    const auto state = run({"evolve", "--lambda", "1", "--tmax", "1", "--initial", "0.5,0.9,0"});
    CHECK(state.code == cli::kValidationError);
    CHECK(run({"evolve", "--lambda", "1", "--tmax", "1", "--dt", "2"}).code == cli::kValidationError);
}

TEST_CASE("evolve output") {
    const auto r = run({"evolve", "--lambda", "5", "--tmax", "1", "--dt", "0.25"});
    REQUIRE(r.code == cli::kOk);
    CHECK(first_line(r.out) == "t,re_h,im_h,abs_h,rho11,re_rho10,im_rho10,abs_rho10");
    CHECK(line_count(r.out) == 6);
    CHECK(r.out.find("\n0,1,0,1,0.5,0.5,0,0.5\n") != std::string::npos);
    CHECK(r.out == run({"evolve", "--lambda", "5", "--tmax", "1", "--dt", "0.25"}).out);
}

TEST_CASE("qfunc and sphase output") {
    const auto q = run({"qfunc", "--lambda", "0.01", "--delta", "1", "--t", "500", "--ntheta", "5", "--nphi", "8"});
    REQUIRE(q.code == cli::kOk);
    CHECK(first_line(q.out) == "theta,phi,q");
    CHECK(line_count(q.out) == 41);

    const auto s = run({"sphase", "--lambda", "5", "--t", "0", "--nphi", "4"});
    REQUIRE(s.code == cli::kOk);
    CHECK(first_line(s.out) == "phi,s");
    CHECK(line_count(s.out) == 5);
    CHECK(s.out.find("\n0,0.125\n") != std::string::npos);
}

TEST_CASE("sweep output formats") {
    const std::vector<std::string> base{"sweep", "--axis", "gamma:0.5:1:2", "--axis", "delta:-1:1:3",
                                        "--fixed", "lambda=0.1", "--fixed", "t=50", "--observable", "s_max"};
    const auto lf = run(base);
    REQUIRE(lf.code == cli::kOk);
    CHECK(first_line(lf.out) == "gamma,delta,s_max");
    CHECK(line_count(lf.out) == 7);

    auto matrix_args = base;
    matrix_args.insert(matrix_args.end(), {"--format", "matrix"});
    const auto mx = run(matrix_args);
    REQUIRE(mx.code == cli::kOk);
    CHECK(first_line(mx.out) == ",-1,0,1");
    CHECK(line_count(mx.out) == 3);

    auto jobs_args = base;
    jobs_args.insert(jobs_args.end(), {"--jobs", "4"});
    CHECK(run(jobs_args).out == lf.out);

    CHECK(run({"sweep", "--axis", "delta:-1:1:3", "--fixed", "gamma=1", "--fixed", "lambda=1", "--observable",
               "s_max"}).code == cli::kValidationError);
    CHECK(run({"sweep", "--axis", "delta:-1:1:3", "--fixed", "gamma=1", "--fixed", "lambda=1", "--fixed", "t=1",
               "--observable", "s_max", "--format", "wide"}).code == cli::kValidationError);
}

TEST_CASE("figure writes csv and metadata") {
    const auto dir = scratch("cli_figure");
    const auto r = run({"figure", "--id", "fig1d", "--out", dir.string()});
    REQUIRE(r.code == cli::kOk);
    const auto csv = dir / "fig1d.csv";
    const auto meta = dir / "fig1d.meta.json";
    REQUIRE(fs::exists(csv));
    REQUIRE(fs::exists(meta));
    const std::string text = slurp(csv);
    CHECK(first_line(text) == "theta,phi,q");
    CHECK(line_count(text) == 91 * 181 + 1);
    const auto j = nlohmann::json::parse(slurp(meta));
    CHECK(j["preset"] == "fig1d");
    CHECK(j["grid_hash"] == hash_hex(fnv1a64(text.substr(text.find('\n') + 1))));
    CHECK(r.out.find(j["grid_hash"].get<std::string>()) != std::string::npos);
}

TEST_CASE("config file merges with flags") {
    const auto dir = scratch("cli_config");
    const auto cfg = dir / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "# bath\nlambda = 5\n\ntmax = 1\ndt = 0.5   # coarse\n";
    }
    const auto from_file = run({"evolve", "--config", cfg.string()});
    REQUIRE(from_file.code == cli::kOk);
    CHECK(from_file.out == run({"evolve", "--lambda", "5", "--tmax", "1", "--dt", "0.5"}).out);

    const auto overridden = run({"evolve", "--config", cfg.string(), "--dt", "0.25"});
    REQUIRE(overridden.code == cli::kOk);
    CHECK(overridden.out == run({"evolve", "--lambda", "5", "--tmax", "1", "--dt", "0.25"}).out);

    CHECK(run({"evolve", "--config", (dir / "absent.cfg").string()}).code == cli::kIoError);
    {
        std::ofstream f(dir / "broken.cfg");
        f << "lambda 5\n";
    }
    CHECK(run({"evolve", "--config", (dir / "broken.cfg").string()}).code == cli::kValidationError);

    const auto parsed = cli::read_config(cfg.string());
    CHECK(parsed.size() == 3);
    CHECK(parsed.at("dt") == "0.5");
}

TEST_CASE("unwritable destinations exit 3") {
    const auto dir = scratch("cli_io");
    CHECK(run({"evolve", "--lambda", "1", "--tmax", "1", "--out", (dir / "no" / "such" / "x.csv").string()}).code ==
          cli::kIoError);
    CHECK(run({"evolve", "--lambda", "1", "--tmax", "1", "--out", dir.string()}).code == cli::kIoError);
    {
        std::ofstream f(dir / "plain_file");
        f << "x";
    }
    CHECK(run({"figure", "--id", "fig2a", "--out", (dir / "plain_file").string()}).code == cli::kIoError);
}

TEST_CASE("verify passes on the reference set") {
    const auto r = run({"verify"});
    CHECK(r.code == cli::kOk);
    CHECK(first_line(r.out) == "lambda,delta,gamma,max_err_dt,max_err_half_dt,ratio,status");
    CHECK(line_count(r.out) == 6);
    CHECK(r.out.find("FAIL") == std::string::npos);

    // A coarse step cannot meet the tolerance.
    CHECK(run({"verify", "--dt", "0.5"}).code == cli::kVerificationFailure);
}

}

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "semolab/cli.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int status = -1;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "semolab");
    std::vector<const char*> argv;
    for (const std::string& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    Outcome o;
    o.status = semolab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("run writes the documented files deterministically") {
    const fs::path a = oracle::scratch_dir("run-a");
    const fs::path b = oracle::scratch_dir("run-b");
    const std::vector<std::string> base{"run", "--benchmark", "cocz", "--n", "32", "--alg", "gsemo", "--trials", "5", "--seed", "7"};
    auto args = base;
    args.insert(args.end(), {"--out", a.string()});
    const Outcome first = invoke(args);
    REQUIRE(first.status == 0);
    CHECK(lines(slurp(a / "trials.csv")) == 6);
    CHECK(fs::exists(a / "trajectories.csv"));
    CHECK(fs::exists(a / "resolved-config.txt"));

    args = base;
    args.insert(args.end(), {"--out", b.string(), "--jobs", "1"});
    REQUIRE(invoke(args).status == 0);
    for (const char* f : {"trials.csv", "trajectories.csv", "resolved-config.txt"})
        CHECK(slurp(a / f) == slurp(b / f));
}

TEST_CASE("the resolved snapshot reproduces a run") {
    const fs::path a = oracle::scratch_dir("snap-a");
    const fs::path b = oracle::scratch_dir("snap-b");
    REQUIRE(invoke({"run", "--benchmark", "omm,cocz", "--n", "8", "--n", "10", "--trials", "3", "--seed", "4",
                    "--variant", "modified", "--out", a.string()})
                .status == 0);
    REQUIRE(invoke({"run", "--config", (a / "resolved-config.txt").string(), "--out", b.string()}).status == 0);
    CHECK(slurp(a / "trials.csv") == slurp(b / "trials.csv"));
    CHECK(slurp(a / "trajectories.csv") == slurp(b / "trajectories.csv"));
    CHECK(lines(slurp(a / "trials.csv")) == 1 + 2 * 2 * 3);
}

TEST_CASE("config file values are overridden by flags") {
    const fs::path dir = oracle::scratch_dir("override");
    write(dir / "run.conf", "benchmark = omm\nn = 6\ntrials = 2\nseed = 3\n");
    REQUIRE(invoke({"run", "--config", (dir / "run.conf").string(), "--trials", "4", "--out", (dir / "o").string()})
                .status == 0);
    const std::string snapshot = slurp(dir / "o" / "resolved-config.txt");
    CHECK(snapshot.find("trials=4\n") != std::string::npos);
    CHECK(snapshot.find("benchmark=omm\n") != std::string::npos);
}

TEST_CASE("run usage errors exit with 2") {
    const fs::path dir = oracle::scratch_dir("run-errors");
    Outcome o = invoke({"run", "--benchmark", "cocz", "--n", "31", "--out", dir.string()});
    CHECK(o.status == 2);
    CHECK(o.err.find("COCZ requires even n") != std::string::npos);

    write(dir / "bad.conf", "benchmark = cocz\nn = 8\nspeed = 3\n");
    o = invoke({"run", "--config", (dir / "bad.conf").string(), "--out", dir.string()});
    CHECK(o.status == 2);
    CHECK(o.err.find("bad.conf:3") != std::string::npos);

    write(dir / "bad2.conf", "n = eight\n");
    o = invoke({"run", "--config", (dir / "bad2.conf").string()});
    CHECK(o.status == 2);
    CHECK(o.err.find("bad2.conf:1") != std::string::npos);

    o = invoke({"run", "--benchmark", "lotz", "--n", "8"});
    CHECK(o.status == 2);
    o = invoke({"run", "--benchmark", "ojzj", "--n", "8"});
    CHECK(o.status == 2);
    o = invoke({"run", "--n", "8", "--interior-init", "maybe"});
    CHECK(o.status == 2);
    o = invoke({"run", "--n", "16,8"});
    CHECK(o.status == 2);

    write(dir / "plain-file", "x");
    o = invoke({"run", "--n", "8", "--out", (dir / "plain-file" / "sub").string()});
    CHECK(o.status == 2);
    CHECK(o.err.find("output directory") != std::string::npos);

    CHECK(invoke({}).status == 2);
    CHECK(invoke({"run", "--no-such-flag"}).status == 2);
    CHECK(invoke({"--help"}).status == 0);
}

TEST_CASE("report on a passing grid") {
    const fs::path dir = oracle::scratch_dir("report-pass");
    REQUIRE(invoke({"run", "--benchmark", "omm", "--n", "16,32,64", "--trials", "15", "--seed", "2", "--out", dir.string()})
                .status == 0);
    const Outcome o = invoke({"report", "--in", dir.string()});
    CHECK(o.status == 0);
    CHECK(o.out.find("PASS lower_bound_runtime") != std::string::npos);
    CHECK(o.out.find("PASS scaling_exponent") != std::string::npos);
    const std::string csv = slurp(dir / "report.csv");
    CHECK(csv.rfind("suite,cell,passed,total,frequency,threshold,cell_verdict,suite_verdict,detail,master_seed,config_hash\n", 0) == 0);
    CHECK(csv.find(",2,") != std::string::npos);
    const std::string summary = slurp(dir / "summary.txt");
    CHECK(summary.find("master seed: 2") != std::string::npos);
    CHECK(summary.find("scaling fits") != std::string::npos);
}

TEST_CASE("report exit status follows the verdicts") {
    const fs::path dir = oracle::scratch_dir("report-verdict");
    REQUIRE(invoke({"run", "--benchmark", "cocz", "--n", "16", "--trials", "5", "--max-iters", "20", "--out", dir.string()})
                .status == 0);
    const Outcome o = invoke({"report", "--in", dir.string()});
    CHECK(o.status == 1);
    CHECK(o.out.find("FAIL coverage") != std::string::npos);
}

TEST_CASE("report: equivalence suite and its negative control") {
    const fs::path dir = oracle::scratch_dir("report-eq");
    REQUIRE(invoke({"run", "--benchmark", "cocz", "--n", "8", "--trials", "3", "--variant", "modified", "--out", dir.string()})
                .status == 0);
    Outcome o = invoke({"report", "--in", dir.string(), "--equivalence-trials", "3000"});
    CHECK(o.out.find("PASS equivalence_modified_original") != std::string::npos);

    const fs::path broken = oracle::scratch_dir("report-eq-broken");
    write(broken / "report.conf", "slot-range-offset = -1\nequivalence = on\n");
    o = invoke({"report", "--in", dir.string(), "--out", broken.string(), "--config", (broken / "report.conf").string()});
    CHECK(o.status == 1);
    CHECK(o.out.find("FAIL equivalence_modified_original") != std::string::npos);

    o = invoke({"report", "--in", dir.string(), "--out", broken.string(), "--equivalence-trials", "50"});
    CHECK(o.status == 2);
    CHECK(o.err.find("refused") != std::string::npos);
}

TEST_CASE("report input errors") {
    const fs::path dir = oracle::scratch_dir("report-missing");
    Outcome o = invoke({"report", "--in", dir.string()});
    CHECK(o.status == 2);
    CHECK(o.err.find("trials.csv") != std::string::npos);
    CHECK(o.err.find("trajectories.csv") != std::string::npos);

    write(dir / "trials.csv", "");
    write(dir / "trajectories.csv", "");
    write(dir / "resolved-config.txt", "benchmark=cocz\nn=8\n");
    o = invoke({"report", "--in", dir.string()});
    CHECK(o.status == 2);
    CHECK(o.err.find("no data") != std::string::npos);

    write(dir / "trials.csv", "benchmark,n,k,algorithm,variant,seed,runtime_evals,runtime_iters,censored\ncocz,8,0,gsemo,original,1,x,1,0\n");
    o = invoke({"report", "--in", dir.string()});
    CHECK(o.status == 2);
    CHECK(o.err.find("trials.csv:2") != std::string::npos);
}

TEST_CASE("oracle subcommand") {
    Outcome o = invoke({"oracle", "--benchmark", "cocz", "--n", "8"});
    CHECK(o.status == 0);
    CHECK(o.out.find("MATCH, 5 front points") != std::string::npos);
    o = invoke({"oracle", "--benchmark", "ojzj", "--n", "10", "--k", "2"});
    CHECK(o.status == 0);
    CHECK(o.out.find("MATCH") != std::string::npos);
    o = invoke({"oracle", "--benchmark", "omm", "--n", "12"});
    CHECK(o.out.find("MATCH, 13 front points") != std::string::npos);
    o = invoke({"oracle", "--benchmark", "omm", "--n", "21"});
    CHECK(o.status == 2);
    CHECK(o.err.find("capped") != std::string::npos);
}

TEST_CASE("bounds subcommand") {
    auto value = [](const std::string& text, const std::string& label) {
        const auto pos = text.find(label);
        REQUIRE(pos != std::string::npos);
        return std::stod(text.substr(pos + label.size()));
    };
    Outcome o = invoke({"bounds", "witt-upper", "--p", "0.5,0.5", "--lambda", "4"});
    CHECK(o.status == 0);
    CHECK(value(o.out, "witt-upper bound: ") == doctest::Approx(0.6065306597));
    o = invoke({"bounds", "chernoff", "--mean", "50", "--delta", "0.5"});
    CHECK(value(o.out, "chernoff bound: ") == doctest::Approx(std::exp(-6.25)));
    o = invoke({"bounds", "witt-upper", "--p", "0.5,0.5", "--lambda", "0"});
    CHECK(value(o.out, "witt-upper bound: ") == 1.0);
    o = invoke({"bounds", "sandwich", "--g", "inverse", "--alpha", "2", "--beta", "10"});
    CHECK(o.status == 0);
    CHECK(value(o.out, "lower: ") <= value(o.out, "sum: "));
    CHECK(value(o.out, "sum: ") <= value(o.out, "upper: "));

    const fs::path dir = oracle::scratch_dir("bounds");
    write(dir / "params.txt", "p = 1\nlambda = 1\n");
    o = invoke({"bounds", "witt-lower", "--params", (dir / "params.txt").string()});
    CHECK(value(o.out, "witt-lower bound: ") == doctest::Approx(std::exp(-0.5)));

    CHECK(invoke({"bounds", "witt-upper", "--p", "0.5,1.5", "--lambda", "1"}).status == 2);
    CHECK(invoke({"bounds", "chernoff", "--mean", "5", "--delta", "2"}).status == 2);
    CHECK(invoke({"bounds", "witt-upper", "--lambda", "abc"}).status == 2);
    CHECK(invoke({"bounds", "gamma"}).status == 2);
    write(dir / "bad.txt", "p = 0.5\nmu = 3\n");
    o = invoke({"bounds", "witt-upper", "--params", (dir / "bad.txt").string()});
    CHECK(o.status == 2);
    CHECK(o.err.find("bad.txt:2") != std::string::npos);
}

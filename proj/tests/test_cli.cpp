// Contract tests for the apointlab binary: exit codes, file formats,
// manifests, determinism. Each case shells out to the real executable.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

const std::string kCli = APOINTLAB_CLI_PATH;

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp(const std::string& name) { return "/tmp/apl_cli_" + name; }

}  // namespace

TEST_CASE("validation failures exit with code 2") {
    CHECK(run("expsum --x 1 --T 1e4 --out " + tmp("x1.csv")) == 2);
    CHECK(run("gram --T 50 --T2 60 --out " + tmp("low.csv")) == 2);
    CHECK(run("dist --T 1e4 --sample-cap 10 --out " + tmp("cap.csv")) == 2);
    CHECK(run("apoints --T 500 --a-re 0 --a-im 0 --out " + tmp("a0.json")) == 2);
    CHECK(run("nonsense --T 1") != 0);
}

TEST_CASE("expsum rejects x = 1 citing the requirement") {
    const std::string cmd =
        kCli + " expsum --x 1 --T 1e4 --out " + tmp("x1b.csv") + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[512];
    std::string msg;
    while (fgets(buf, sizeof(buf), p)) msg += buf;
    pclose(p);
    CHECK(msg.find("not equal to one") != std::string::npos);
}

TEST_CASE("gram: csv header contract and manifest") {
    const auto out = tmp("g.csv");
    REQUIRE(run("gram --T 1e4 --T2 1.002e4 --out " + out) == 0);
    const auto body = slurp(out);
    CHECK(body.rfind("n,t,residual,seed_gap\n", 0) == 0);
    CHECK(body.find("\r") == std::string::npos);  // LF endings

    const auto man = nlohmann::json::parse(slurp(out + ".manifest.json"));
    CHECK(man["command"] == "gram");
    CHECK(man["row_count"].get<int>() > 20);
    CHECK(man.contains("wall_ms"));
    CHECK(man["parameters"]["T"] == 10000.0);
}

TEST_CASE("dist: byte-identical reruns with the same seed") {
    const auto o1 = tmp("d1.csv"), o2 = tmp("d2.csv");
    REQUIRE(run("dist --T 1e4 --a-re 2 --a-im 0 --sample-cap 1500 --seed 7 "
                "--format csv --out " + o1) == 0);
    REQUIRE(run("dist --T 1e4 --a-re 2 --a-im 0 --sample-cap 1500 --seed 7 "
                "--format csv --out " + o2) == 0);
    const auto b1 = slurp(o1), b2 = slurp(o2);
    REQUIRE(!b1.empty());
    CHECK(b1 == b2);
    CHECK(b1.rfind("index,g,log_abs_zeta,normalized\n", 0) == 0);
    // a different seed gives a different sample
    const auto o3 = tmp("d3.csv");
    REQUIRE(run("dist --T 1e4 --a-re 2 --a-im 0 --sample-cap 1500 --seed 8 "
                "--format csv --out " + o3) == 0);
    CHECK(slurp(o3) != b1);
    const auto man = nlohmann::json::parse(slurp(o1 + ".manifest.json"));
    CHECK(man["summary"].contains("ks_distance"));
    CHECK(man["summary"].contains("dropped_fraction"));
}

TEST_CASE("apoints: json document with manifest and data keys") {
    const auto out = tmp("ap.json");
    REQUIRE(run("apoints --T 150 --a-re 1 --a-im 0 --out " + out) == 0);
    const auto doc = nlohmann::json::parse(slurp(out));
    REQUIRE(doc.contains("manifest"));
    REQUIRE(doc.contains("data"));
    CHECK(doc["data"].contains("count"));
    CHECK(doc["data"].contains("main_term"));
    CHECK(doc["data"]["located"].is_array());
    // embedded manifest has no wall time, so the file stays reproducible
    CHECK(!doc["manifest"].contains("wall_ms"));
    const auto out2 = tmp("ap2.json");
    REQUIRE(run("apoints --T 150 --a-re 1 --a-im 0 --out " + out2) == 0);
    CHECK(slurp(out) == slurp(out2));
}

TEST_CASE("plot export: labeled columns, 12 significant digits") {
    const auto out = tmp("dp.csv"), plot = tmp("dp.plot");
    REQUIRE(run("dist --T 1e4 --sample-cap 1200 --seed 3 --out " + out +
                " --plot " + plot) == 0);
    std::ifstream in(plot);
    std::string header, line;
    REQUIRE(std::getline(in, header));
    CHECK(header == "# v ecdf normal_cdf");
    REQUIRE(std::getline(in, line));
    double v = 0.0, e = 0.0, c = 0.0;
    CHECK(std::sscanf(line.c_str(), "%lf %lf %lf", &v, &e, &c) == 3);
    CHECK(e > 0.0);
    CHECK(c >= 0.0);
}

TEST_CASE("moments and charfn manifests record the free-parameter notes") {
    const auto m = tmp("m.csv");
    REQUIRE(run("moments --m 3 --Y 50 --T 1e4 --out " + m) == 0);
    const auto man = nlohmann::json::parse(slurp(m + ".manifest.json"));
    REQUIRE(man.contains("parameter_deviations"));
    CHECK(man["parameter_deviations"].contains("Y"));
}

TEST_CASE("online: density column wiring") {
    const auto out = tmp("ol.csv");
    REQUIRE(run("online --T 1e4 --a-re 2 --a-im 0 --tol 0.1 --out " + out) == 0);
    const auto body = slurp(out);
    CHECK(body.rfind("T,tol,points,hits,density\n", 0) == 0);
}

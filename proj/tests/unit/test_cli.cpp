#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(WEYLPATH_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("weylpath_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string write_config(const fs::path& dir, const std::string& text) {
    const fs::path p = dir / "run.cfg";
    std::ofstream(p) << text;
    return p.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("weyl-check") {
    CHECK(run("weyl-check --M 16 --L 4") == 0);
    CHECK(run("weyl-check --M 2") == 0);
    CHECK(run("weyl-check --M 601") == 0);
    CHECK(run("weyl-check --M 1") == 2);
    CHECK(run("weyl-check --M 12 --L 3") == 2);
    CHECK(run("weyl-check") == 2);
    CHECK(run("no-such-command") == 2);
}

TEST_CASE("scatter exit codes and output") {
    const fs::path d = scratch("scatter");
    CHECK(run("scatter --config " + write_config(d, "K=100\nN=20\ntau=60\n") + " --out " + d.string()) == 3);
    CHECK(run("scatter --config " + write_config(d, "K=100\nbogus=1\n") + " --out " + d.string()) == 2);
    CHECK(run("scatter --config " + write_config(d, "K=abc\n") + " --out " + d.string()) == 2);
    CHECK(run("scatter --config " + (d / "missing.cfg").string()) == 2);

    CHECK(run("scatter --config " + write_config(d, "K=120\nN=30\ntau=3\nlambda=0\ndelta_p=0.5\n") + " --out " +
              d.string()) == 0);
    std::ifstream in(d / "half_shell.csv");
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'p') continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
        REQUIRE(v.size() == 5);
        CHECK(std::abs(v[1]) < 1e-12);
        CHECK(std::abs(v[2]) < 1e-12);
        ++rows;
    }
    CHECK(rows == 241);
    CHECK(slurp(d / "scatter_stats.csv").find("# config") != std::string::npos);
}

TEST_CASE("wavelet table") {
    const fs::path d = scratch("wavelet");
    REQUIRE(run("wavelet --out " + d.string()) == 0);
    const std::string g = slurp(d / "wavelet_gamma.csv");
    const auto pos = g.find("\n0,0,1,1,");
    REQUIRE(pos != std::string::npos);
    const double v = std::stod(g.substr(pos + 9));
    CHECK(std::abs(v - 0.0890895) < 1e-5);
}

TEST_CASE("fields with zero steps reproduce the input") {
    const fs::path d = scratch("fields");
    REQUIRE(run("fields --config " + write_config(d, "K=8\nN=0\n") + " --out " + d.string()) == 0);
    auto body = [](const std::string& s) { return s.substr(s.find("\nphi0")); };
    CHECK(body(slurp(d / "fields_initial.csv")) == body(slurp(d / "fields_evolved.csv")));
}

TEST_CASE("bruteforce") {
    const fs::path d = scratch("brute");
    CHECK(run("bruteforce --config " + write_config(d, "M=3\nN=2\nsamples=3\n") + " --out " + d.string() + " --seed 4") ==
          0);
    CHECK(run("bruteforce --config " + write_config(d, "M=11\nN=4\n") + " --out " + d.string()) == 3);
}

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "weylpath/config.hpp"
#include "weylpath/csv.hpp"
#include "weylpath/error.hpp"

using namespace weylpath;

TEST_CASE("config parsing") {
    const RunConfig c = RunConfig::parse("# comment\nK = 300\n\nlambda=0.5  # strength\nname = demo\n");
    CHECK(c.get_int("K", 0) == 300);
    CHECK(c.get_double("lambda", 0) == 0.5);
    CHECK(c.get_double("alpha", 2.0) == 2.0);
    CHECK(c.get_string("name", "") == "demo");
    CHECK_NOTHROW(c.require_known({"K", "lambda", "name"}));
    CHECK_THROWS_AS(c.require_known({"K"}), ConfigError);
    CHECK_THROWS_AS(c.get_int("lambda", 0), ConfigError);
    CHECK_THROWS_AS(c.get_double("name", 0), ConfigError);

    CHECK_THROWS_AS(RunConfig::parse("K 300\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::parse("K=1\nK=2\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::parse("=3\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_file("/nonexistent/run.cfg"), ConfigError);
}

TEST_CASE("csv output") {
    CHECK(format_number(2.5) == "2.5");
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.23456789012e-20) == "1.23456789e-20");

    const auto path = std::filesystem::temp_directory_path() / "weylpath_io_test.csv";
    {
        CsvWriter w(path.string());
        w.comment("provenance");
        w.header({"a", "b"});
        w.row({1.0, 2.0});
        w.row("x", {3.0});
    }
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == "# provenance\na,b\n1,2\nx,3\n");
    std::filesystem::remove(path);
    CHECK_THROWS_AS(CsvWriter("/nonexistent/dir/out.csv"), ConfigError);
}

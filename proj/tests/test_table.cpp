#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "nhsense/svg.hpp"
#include "nhsense/table.hpp"

using namespace nhsense;

namespace {

ResultTable sample_table() {
    // values chosen to survive the 12-significant-digit rendering exactly
    ResultTable t;
    t.columns = {"x", "y", "z"};
    t.rows = {{0.0, 1.0, -2.5},
              {0.1, 0.25, 1e-12},
              {0.2, std::nan(""), 123456.789012}};
    t.metadata = {{"tool", "nh-sense test"}, {"seed", "42"}};
    return t;
}

}  // namespace

TEST_CASE("csv round trip") {
    const ResultTable t = sample_table();
    const ResultTable back = parse_csv(to_csv(t));
    CHECK(back.equals(t));
}

TEST_CASE("csv round trip holds to the 12-digit rendering precision") {
    ResultTable t;
    t.columns = {"v"};
    t.rows = {{1.0 / 3.0}, {M_PI * 1e6}, {-7.0 / 11.0}};
    const ResultTable back = parse_csv(to_csv(t));
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        CHECK(std::abs(back.rows[r][0] / t.rows[r][0] - 1.0) < 1e-11);
}

TEST_CASE("csv formatting details") {
    const std::string csv = to_csv(sample_table());
    CHECK(csv.find("# tool = nh-sense test\n") == 0);
    CHECK(csv.find("x,y,z\n") != std::string::npos);
    CHECK(csv.find("nan") != std::string::npos);
    CHECK(csv.find("123456.789012") != std::string::npos);  // 12 significant digits
    CHECK(csv.find('\r') == std::string::npos);             // LF endings only
}

TEST_CASE("empty-row table emits metadata and header only") {
    ResultTable t;
    t.columns = {"a", "b"};
    t.metadata = {{"k", "v"}};
    const std::string csv = to_csv(t);
    CHECK(csv == "# k = v\na,b\n");
    const ResultTable back = parse_csv(csv);
    CHECK(back.rows.empty());
    CHECK(back.columns == t.columns);
}

TEST_CASE("csv parse rejects malformed input") {
    CHECK_THROWS_AS(parse_csv(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv("a,b\n1,oops\n"), std::invalid_argument);
}

TEST_CASE("ragged table fails validation") {
    ResultTable t = sample_table();
    t.rows[1].pop_back();
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

TEST_CASE("atomic write leaves no temp file behind") {
    const std::string path = "test_table_atomic.csv";
    emit_csv(sample_table(), path);
    std::ifstream in(path);
    CHECK(in.good());
    std::ifstream tmp(path + ".tmp");
    CHECK_FALSE(tmp.good());
    in.close();
    CHECK(parse_csv_file(path).equals(sample_table()));
    std::remove(path.c_str());
}

TEST_CASE("svg plot renders polylines and a legend") {
    const ResultTable t = sample_table();
    const std::string svg = render_svg_plot(t, "x", {"y"});
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find(">y</text>") != std::string::npos);

    // two-point table: a single straight segment
    ResultTable two;
    two.columns = {"x", "y"};
    two.rows = {{1.0, 2.0}, {3.0, 4.0}};
    const std::string seg = render_svg_plot(two, "x", {"y"});
    CHECK(seg.find("<polyline") != std::string::npos);

    CHECK_THROWS_AS(render_svg_plot(two, "missing", {"y"}), std::invalid_argument);
    ResultTable one = two;
    one.rows.pop_back();
    CHECK_THROWS_AS(render_svg_plot(one, "x", {"y"}), std::invalid_argument);
}

TEST_CASE("svg log-x mode") {
    ResultTable t;
    t.columns = {"n", "f"};
    t.rows = {{1e3, 0.5}, {1e5, 0.8}, {1e7, 0.81}};
    PlotOptions opt;
    opt.log_x = true;
    const std::string svg = render_svg_plot(t, "n", {"f"}, opt);
    CHECK(svg.find("log scale") != std::string::npos);
    t.rows.push_back({-1.0, 0.2});
    CHECK_THROWS_AS(render_svg_plot(t, "n", {"f"}, opt), std::invalid_argument);
}

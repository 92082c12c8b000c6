#include "doctest.h"
#include "qarctic/shell.hpp"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace qarctic;
namespace fs = std::filesystem;

static fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("qarctic_test_" + name);
    fs::remove_all(p);
    return p;
}

static std::vector<std::vector<std::string>> load(const fs::path& p) {
    std::ifstream in(p);
    return read_csv(in);
}

static std::vector<std::string> errors_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.errors;
    }
    return {};
}

TEST_CASE("minimal configs") {
    ModelConfig c = parse_config(R"({"scaled": {"segments": [{"gamma": 1, "p": 2}], "qq": 3}})");
    REQUIRE(c.scaled);
    CHECK_FALSE(c.finite);
    CHECK(c.scaled->qq == 3);
    CHECK(c.scaled->density().alpha1() == 2);

    ModelConfig f = parse_config(R"({"finite": {"a": [0, 2, 3], "q": "4/6"}, "task": {"seed": 7}})");
    REQUIRE(f.finite);
    CHECK(*f.finite->q_exact == Rational(2, 3));
    CHECK(f.task.seed == 7);

    ModelConfig g = parse_config(R"({"finite": {"a": [0, 2, 3], "q": {"qq": 3, "n": 30}}})");
    CHECK_FALSE(g.finite->q_exact);
    CHECK(g.finite->q == doctest::Approx(std::pow(3.0, 1.0 / 30)));
}

TEST_CASE("config errors are all reported") {
    auto e = errors_of(R"({"scaled": {"segments": [{"gamma": 0.5, "p": 2}, {"gamma": 0.4, "p": 1}], "qq": 3}})");
    REQUIRE(e.size() == 1);
    CHECK(e[0].find("segment widths must sum to 1") != std::string::npos);

    e = errors_of(R"({"finite": {"a": [0, 3, 2, 2], "q": "1/2"}})");
    CHECK(e.size() == 2);
    for (const auto& m : e) CHECK(m.find("finite.a") == 0);

    e = errors_of(R"({"finite": {"a": [1, 2], "q": "1"}, "task": {"sweeps": 0, "init": "x", "colour": 1}})");
    CHECK(e.size() == 5);

    e = errors_of(R"({"finite": {"a": [0, 1], "q": "1/2"}, "scaled": {"segments": [], "qq": -1}})");
    CHECK(e.size() == 3);

    e = errors_of("{\n  \"finite\": {\n    \"a\": [0, 1,]\n  }\n}");
    REQUIRE(e.size() == 1);
    CHECK(e[0].find("line 3") != std::string::npos);
}

TEST_CASE("csv round trip is bit exact") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1e3, 1e3);
    std::vector<double> vals = {0.1, 1.0 / 3, 1e-300, -2.5e300, 5e-324, std::nextafter(1.0, 2.0)};
    for (int i = 0; i < 500; ++i) vals.push_back(U(rng) * std::exp(U(rng) / 20));
    std::vector<std::vector<std::string>> rows;
    for (double v : vals) rows.push_back({format_double(v), format_double(-v)});
    std::stringstream ss;
    write_csv(ss, {"a", "b"}, rows);
    CHECK(ss.str().find('\r') == std::string::npos);
    auto back = read_csv(ss);
    REQUIRE(back.size() == vals.size() + 1);
    CHECK(back[0] == std::vector<std::string>{"a", "b"});
    for (size_t i = 0; i < vals.size(); ++i) {
        double a = std::strtod(back[i + 1][0].c_str(), nullptr);
        CHECK(std::memcmp(&a, &vals[i], sizeof a) == 0);
    }
}

TEST_CASE("exact command") {
    auto dir = scratch("exact");
    Report r = cmd_exact(parse_config(R"({"finite": {"a": [0, 2, 3], "q": "2"}})"), {dir.string(), false});
    CHECK(r.ok);
    auto summary = load(dir / "summary.csv");
    bool found = false;
    for (const auto& row : summary)
        if (row[0] == "Z") {
            CHECK(row[1] == "448");
            found = true;
        }
    CHECK(found);
    auto h = load(dir / "one_point.csv");
    CHECK(h.size() == 5);
    CHECK(h[1][1] == "1");
    auto coeffs = load(dir / "partition.csv");
    CHECK(coeffs[0] == std::vector<std::string>{"power", "coefficient"});

    auto dir2 = scratch("exact2");
    Report r2 = cmd_exact(parse_config(R"({"finite": {"a": [0, 1, 3, 4], "q": "1/3"}})"), {dir2.string(), false});
    for (const auto& row : load(dir2 / "summary.csv"))
        if (row[0] == "Z") CHECK(row[1] == "130/1162261467");
    CHECK(r2.ok);

    auto dir3 = scratch("exact3");
    Report r3 = cmd_exact(parse_config(R"({"finite": {"a": [0, 2, 4], "q": {"qq": 3, "n": 2}}})"), {dir3.string(), false});
    CHECK(r3.ok);
    CHECK(load(dir3 / "one_point.csv").size() == 6);
    CHECK_THROWS_AS(cmd_exact(parse_config(R"({"scaled": {"segments": [{"gamma": 1, "p": 2}], "qq": 3}})"), {}),
                    ConfigError);
}

TEST_CASE("sample command is deterministic per seed") {
    const char* text = R"({"finite": {"a": [0, 1, 3], "q": "7/10"}, "task": {"sweeps": 2000, "burn_in": 100, "seed": 5}})";
    auto d1 = scratch("sample1"), d2 = scratch("sample2");
    cmd_sample(parse_config(text), {d1.string(), false});
    cmd_sample(parse_config(text), {d2.string(), false});
    auto a = load(d1 / "density.csv"), b = load(d2 / "density.csv");
    CHECK(a == b);
    CHECK(a[0] == std::vector<std::string>{"x", "y", "count"});
    CHECK(load(d1 / "area_series.csv").size() == 1901);
    CHECK(load(d1 / "area_series.csv") == load(d2 / "area_series.csv"));
}

TEST_CASE("arctic command") {
    auto dir = scratch("arctic");
    ModelConfig cfg = parse_config(
        R"({"scaled": {"segments": [{"gamma": 1, "p": 2}], "qq": 3},
            "task": {"samples": 100, "tangent_t": [18], "geodesic_t": [18]}})");
    Report r = cmd_arctic(cfg, {dir.string(), true});
    auto right = load(dir / "arctic_right.csv");
    CHECK(right[0] == std::vector<std::string>{"branch", "t", "X", "Y"});
    CHECK(right.size() > 100);
    CHECK(right[1][0] == "right");
    CHECK(fs::exists(dir / "arctic_left.csv"));
    CHECK(fs::exists(dir / "tangent_0.csv"));
    CHECK(fs::exists(dir / "geodesic_0.csv"));
    std::ifstream svg(dir / "arctic.svg");
    std::string text((std::istreambuf_iterator<char>(svg)), {});
    CHECK(text.find("<svg") == 0);
    CHECK(text.find("polyline") != std::string::npos);

    ModelConfig bad = parse_config(
        R"({"scaled": {"segments": [{"gamma": 1, "p": 2}], "qq": 3}, "task": {"geodesic_t": [0.5]}})");
    CHECK_THROWS_AS(cmd_arctic(bad, {scratch("arctic_bad").string(), false}), DomainError);
}

TEST_CASE("limits command") {
    auto dir = scratch("limits");
    cmd_limits(parse_config(R"({"scaled": {"segments": [{"gamma": 0.3333333333333333, "p": 2},
        {"gamma": 0.3333333333333333, "p": 4}, {"gamma": 0.3333333333333334, "p": 2}], "qq": 5}})"),
               {dir.string(), false});
    auto v = load(dir / "vertices.csv");
    REQUIRE(v.size() == 9);
    CHECK(v[2][0] == "M");
    CHECK(std::stod(v[2][2]) == doctest::Approx(4.0 / 3));
    CHECK(std::stod(v[2][3]) == doctest::Approx(2.0 / 3));
    CHECK(load(dir / "limits.csv")[0] == std::vector<std::string>{"limit", "polyline", "index", "X", "Y"});
}

TEST_CASE("verify command") {
    Report f = cmd_verify(parse_config(R"({"finite": {"a": [0, 2, 3, 5], "q": "2/5"}})"), {scratch("vf").string(), false});
    CHECK(f.ok);
    Report s = cmd_verify(parse_config(R"({"scaled": {"segments": [{"gamma": 0.5, "p": 2}, {"gamma": 0.5, "p": 2}],
        "jumps": [{"u": 0.5, "delta": 1}], "qq": 3}, "task": {"samples": 100}})"), {scratch("vs").string(), false});
    for (const auto& [k, v] : s.summary) MESSAGE(k, " ", v);
    CHECK(s.ok);
}

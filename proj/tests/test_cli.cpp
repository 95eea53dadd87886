#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "fixtures.hpp"

using namespace ztower;
using fixtures::data_path;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

template <class F>
Run capture(F &&f) {
    std::ostringstream out, err;
    int code = f(cli::Streams{out, err});
    return {code, out.str(), err.str()};
}

bool has(const std::string &text, const std::string &needle) {
    return text.find(needle) != std::string::npos;
}

std::filesystem::path scratch(const std::string &name, const std::string &content) {
    auto dir = std::filesystem::temp_directory_path() / "ztower_cli_test";
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::ofstream(path) << content;
    return path;
}

} // namespace

TEST_CASE("validate") {
    auto ok = capture([](auto io) { return cli::validate(data_path("example1.json"), io); });
    CHECK(ok.code == cli::kSuccess);
    auto j = io::json::parse(ok.out);
    CHECK(j["valid"] == true);
    CHECK(j["criterion"] == true);

    auto digits = scratch("digits.json", R"({"p": 3, "vertices": ["a"], "edges": [
        {"from": "a", "to": "a", "voltage": {"digits": [5], "precision": 1}}]})");
    auto bad = capture([&](auto io) { return cli::validate(digits, io); });
    CHECK(bad.code == cli::kValidationFailure);
    CHECK(has(bad.err, "/edges/0/voltage/digits/0"));

    auto split = scratch("split.json", R"({"p": 3, "vertices": ["a", "b"], "edges": []})");
    CHECK(capture([&](auto io) { return cli::validate(split, io); }).code == cli::kValidationFailure);

    auto div = capture([](auto io) { return cli::validate(data_path("divisible_voltages.json"), io); });
    CHECK(div.code == cli::kSuccess);
    CHECK(io::json::parse(div.out)["criterion"] == false);
}

TEST_CASE("tower") {
    auto r = capture([](auto io) {
        return cli::tower(data_path("example1.json"), cli::TowerOptions{3, {}, "."}, io);
    });
    CHECK(r.code == cli::kSuccess);
    CHECK(has(r.out, "level 0: vertices 1,"));
    CHECK(has(r.out, "level 1: vertices 2,"));
    CHECK(has(r.out, "level 2: vertices 4,"));
    CHECK(has(r.out, "level 3: vertices 4,"));

    auto dir = std::filesystem::temp_directory_path() / "ztower_cli_emit";
    std::filesystem::remove_all(dir);
    auto b = capture([&](auto io) {
        return cli::tower(data_path("example2_branched.json"), cli::TowerOptions{2, "json", dir}, io);
    });
    CHECK(b.code == cli::kSuccess);
    CHECK(has(b.out, "level 0: vertices 2, edges 3, connected yes"));
    CHECK(has(b.out, "level 1: vertices 6,"));
    CHECK(has(b.out, "level 2: vertices 12, edges 27, connected yes"));
    for (int n = 0; n <= 2; ++n)
        CHECK(std::filesystem::exists(dir / ("level_" + std::to_string(n) + ".json")));

    auto coarse = scratch("coarse.json", R"({"p": 3, "vertices": ["a"], "edges": [
        {"from": "a", "to": "a", "voltage": {"digits": [1], "precision": 1}}]})");
    auto c = capture([&](auto io) { return cli::tower(coarse, cli::TowerOptions{2, {}, "."}, io); });
    CHECK(c.code == cli::kComputationFailure);
    CHECK(has(c.err, "precision"));
}

TEST_CASE("kappa") {
    auto b = capture([](auto io) { return cli::kappa(data_path("example2_branched.json"), 2, true, io); });
    CHECK(b.code == cli::kSuccess);
    CHECK(has(b.out, "kappa = 243675\n"));
    CHECK(has(b.out, "ord_3 = 3\n"));
    CHECK(has(b.out, "invariant factors:"));

    auto e3 = capture([](auto io) { return cli::kappa(data_path("example3.json"), 1, false, io); });
    CHECK(has(e3.out, "kappa = 3969\n"));

    auto tree = scratch("tree.json", R"({"p": 2, "vertices": ["a", "b", "c"], "edges": [
        {"from": "a", "to": "b", "voltage": 0}, {"from": "b", "to": "c", "voltage": 1}]})");
    CHECK(has(capture([&](auto io) { return cli::kappa(tree, 0, false, io); }).out, "kappa = 1\n"));

    auto div = capture([](auto io) { return cli::kappa(data_path("divisible_voltages.json"), 1, false, io); });
    CHECK(div.code == cli::kComputationFailure);
}

TEST_CASE("invariants") {
    auto e1 = capture([](auto io) { return cli::invariants(data_path("example1.json"), {}, io); });
    CHECK(e1.code == cli::kSuccess);
    CHECK(has(e1.out, "f = 4T + 6T^2 + 4T^3 + T^4\n"));
    CHECK(has(e1.out, "mu = 0\n"));
    CHECK(has(e1.out, "lambda_pic = 3\n"));

    auto e2 = capture([](auto io) { return cli::invariants(data_path("example2_unramified.json"), {}, io); });
    CHECK(has(e2.out, "series = -122T^2 + 122T^3 - 1211T^4"));
    CHECK(has(e2.out, "lambda_pic = 1\n"));

    auto e3 = capture([](auto io) { return cli::invariants(data_path("example3.json"), {}, io); });
    CHECK(has(e3.out, "mu = 1\n"));
    CHECK(has(e3.out, "lambda_pic = 2\n"));
    CHECK(has(e3.out, "certified = yes"));
}

TEST_CASE("verify") {
    struct Case {
        const char *file;
        unsigned levels;
    };
    for (auto [file, levels] : {Case{"example1.json", 4}, Case{"example2_branched.json", 4},
                                Case{"example3.json", 4}}) {
        auto r = capture([&](auto io) { return cli::verify(data_path(file), levels, false, {}, io); });
        CHECK(r.code == cli::kSuccess);
        auto j = io::json::parse(r.out);
        CHECK(j["growth_ok"] == true);
        CHECK(j["nu"] == -1);
        CHECK(j["passed"] == true);
        if (std::string(file) == "example3.json")
            CHECK(j["levels"][4]["ordp"] == 88);
    }

    auto div = capture([](auto io) { return cli::verify(data_path("divisible_voltages.json"), 3, false, {}, io); });
    CHECK(div.code == cli::kValidationFailure);
    CHECK(has(div.err, "connectivity"));

    // criterion fails but every level is connected: proceeds with a warning
    auto branched = scratch("branched_div.json", R"({"p": 3, "vertices": ["a", "b"], "edges": [
        {"from": "a", "to": "b", "voltage": 0}, {"from": "a", "to": "b", "voltage": 3}],
        "ramification": {"b": 0}})");
    auto w = capture([&](auto io) { return cli::verify(branched, 3, false, {}, io); });
    CHECK(w.code == cli::kSuccess);
    CHECK(has(w.err, "warning"));

    auto trunc = scratch("trunc3.json", R"({"p": 3, "vertices": ["v1", "v2"], "edges": [
        {"from": "v1", "to": "v1", "voltage": {"digits": [1], "precision": 200}},
        {"from": "v1", "to": "v1", "voltage": {"digits": [1], "precision": 200}},
        {"from": "v1", "to": "v1", "voltage": {"digits": [1], "precision": 200}},
        {"from": "v1", "to": "v2", "voltage": {"digits": [0], "precision": 200}},
        {"from": "v1", "to": "v2", "voltage": {"digits": [0], "precision": 200}},
        {"from": "v1", "to": "v2", "voltage": {"digits": [0], "precision": 200}},
        {"from": "v2", "to": "v2", "voltage": {"digits": [2, 0, 1], "precision": 200}}],
        "ramification": {"v2": 1}})");
    auto strict = capture([&](auto io) { return cli::verify(trunc, 3, true, SeriesPrecision{6, 16}, io); });
    CHECK(strict.code == cli::kUncertified);
    auto lax = capture([&](auto io) { return cli::verify(trunc, 3, false, SeriesPrecision{6, 16}, io); });
    CHECK(lax.code == cli::kSuccess);
}

TEST_CASE("oracle") {
    auto r = capture([](auto io) { return cli::oracle(data_path("example2_unramified.json"), 1, io); });
    CHECK(r.code == cli::kSuccess);
    CHECK(has(r.out, "brute force = 75\n"));
    CHECK(has(r.out, "match"));
    auto big = capture([](auto io) { return cli::oracle(data_path("example3.json"), 3, io); });
    CHECK(big.code == cli::kComputationFailure);
    CHECK(has(big.err, "cap exceeded"));
}

TEST_CASE("missing file") {
    auto r = capture([](auto io) { return cli::validate("/nonexistent/x.json", io); });
    CHECK(r.code == cli::kValidationFailure);
}

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "troupes/cli.hpp"

using namespace troupes;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::vector<const char*> argv{"troupes"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli sort") {
    CliResult r = run_cli({"sort", "4,1,6,2"});
    CHECK(r.code == 0);
    CHECK(r.out == "1,4,2,6\n");
    CHECK(run_cli({"sort", "4,1,6,2", "--engine", "recursive"}).out == "1,4,2,6\n");
}

TEST_CASE("cli vhc count") {
    CliResult r = run_cli({"vhc", "count", "--upto", "8"});
    CHECK(r.code == 0);
    CHECK(r.out == "1,1,1,2,6,22,99,520\n");
}

TEST_CASE("cli transform") {
    CliResult r = run_cli({"tree", "transform", "--omega", "0,1,1,1,1,1", "--n", "5"});
    CHECK(r.code == 0);
    CHECK(r.out == "0,1,1,2,4,9\n");
}

TEST_CASE("cli error channels") {
    CliResult usage = run_cli({"sort"});
    CHECK(usage.code == 2);
    CHECK(usage.err.find("\"usage\"") != std::string::npos);

    CliResult badperm = run_cli({"sort", "1,1"});
    CHECK(badperm.code == 2);
    CHECK(badperm.err.find("invalid-argument") != std::string::npos);

    CliResult limit = run_cli({"preimages", "11,10,9,8,7,6,5,4,3,2,1"});
    CHECK(limit.code == 3);
    CHECK(limit.err.find("resource-limit") != std::string::npos);
    CHECK(limit.err.find("brute_perm_n") != std::string::npos);

    CliResult unsup =
        run_cli({"cumulant", "check-r-transform", "--kappa", "0,-1", "--moments", "0,-1",
                 "--order", "2"});
    CHECK(unsup.code == 2);
    CHECK(unsup.err.find("unsupported") != std::string::npos);
}

TEST_CASE("cli json output is parseable") {
    CliResult r = run_cli({"vhc", "enumerate", "2,1,3", "--format", "json"});
    REQUIRE(r.code == 0);
    Json doc = Json::parse(r.out);
    CHECK(doc["schema"] == kSchemaVersion);
    REQUIRE(doc["configurations"].size() == 1);
    CHECK(doc["configurations"][0]["vertical"] == "{1,3|2,4}");
    CHECK(doc["configurations"][0]["horizontal"] == "{1,4|2,3}");
    // the emitted configuration literal parses back
    std::string base = doc["configurations"][0]["base"].get<std::string>();
    CHECK(Permutation::parse(base).to_string() == base);
}

TEST_CASE("cli round trips through literals") {
    CliResult k = run_cli({"partition", "kreweras", "{1,4,5|2,3|6|7,8}"});
    CHECK(k.out == "{1,3|2|4|5,6,8|7}\n");
    SetPartition parsed = SetPartition::parse(k.out.substr(0, k.out.size() - 1));
    CHECK(parsed.num_blocks() == 5);

    CliResult t = run_cli({"tree", "insert", "--t1", "(b () ())", "--t2", "(w () ())"});
    CHECK(t.out == "(b (b () ()) (w () ()))\n");
    CliResult d = run_cli({"tree", "decompose", t.out.substr(0, t.out.size() - 1), "--at", ""});
    CHECK(d.out == "(b () ())\n(w () ())\n");
}

TEST_CASE("cli cumulant convert") {
    CliResult r = run_cli({"cumulant", "convert", "--from", "free", "--to", "classical",
                           "--method", "nc_linext", "--len", "4", "--seq", "-1;-1;-2;-5",
                           "--format", "json"});
    REQUIRE(r.code == 0);
    Json doc = Json::parse(r.out);
    CHECK(doc["kind"] == "classical");
    CHECK(doc["values"][3] == "-6");
}

TEST_CASE("cli verify single suite") {
    CliResult r = run_cli({"verify", "sort-ground-truth"});
    CHECK(r.code == 0);
    CHECK(r.out.find("[PASS]") != std::string::npos);
    CliResult l = run_cli({"verify", "--list"});
    CHECK(l.out.find("troupe-transform") != std::string::npos);
    CHECK(run_cli({"verify", "no-such-suite"}).code == 2);
}

TEST_CASE("cli sequence and stats") {
    CHECK(run_cli({"sequence", "catalan", "--n", "5"}).out == "1,1,2,5,14,42\n");
    CHECK(run_cli({"stat", "expected", "--n", "4"}).out == "7/6\n");
    CHECK(run_cli({"stat", "expected", "--n", "4", "--decimal", "3"}).out == "7/6 (~1.166)\n");
    CHECK(run_cli({"stat", "sorted-count", "--m", "3"}).out == "2\n");
    CHECK(run_cli({"stat", "uniquely-sorted", "--n", "5"}).out == "5\n");
    CHECK(run_cli({"stat", "uniquely-sorted", "1,4,2,5,3"}).code == 0);
}

TEST_CASE("cli troupe descent series emits parseable series JSON") {
    CliResult r = run_cli({"stat", "troupe-descents", "--troupe", "SCH", "--n", "4", "--format",
                           "json"});
    REQUIRE(r.code == 0);
    Json doc = Json::parse(r.out);
    CHECK(doc["var"] == "z");
    CHECK(doc["order"] == 4);
    TruncatedSeries s = series_from_json(doc);
    CHECK(s == troupe_descent_series(TroupeSpec::sch(), 4));
    // direct series JSON round trip
    CHECK(series_from_json(series_to_json(s)) == s);
}

TEST_CASE("cli fertility report") {
    CliResult r = run_cli({"fertility", "1,2,3", "--report", "--format", "json"});
    REQUIRE(r.code == 0);
    Json doc = Json::parse(r.out);
    CHECK(doc["fertility"] == "5");
    CHECK(doc["per_class"]["MOT"] == "2");
    CHECK(doc["per_class"]["alternating"] == "1");
}

TEST_CASE("cli config file") {
    std::string path = "/tmp/troupes_test_config.json";
    {
        std::ofstream f(path);
        f << R"({"caps": {"brute_perm_n": 4}, "format": "text"})";
    }
    CliResult r = run_cli({"--config", path, "preimages", "1,2,3,4,5"});
    CHECK(r.code == 3);  // the lowered cap trips
    CliResult ok = run_cli({"--config", path, "preimages", "1,2,3"});
    CHECK(ok.code == 0);
}

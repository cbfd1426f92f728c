#include <doctest.h>

#include <exlab/errors.hpp>
#include <exlab/expcli.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace exlab;
using namespace exlab::expcli;
using nlohmann::json;

namespace {

ExperimentSpec make(std::string module, std::string op, json params, std::uint64_t seed = 1, int trials = 3)
{
    ExperimentSpec s;
    s.module = std::move(module);
    s.op = std::move(op);
    s.params = std::move(params);
    s.seed = seed;
    s.trials = trials;
    return s;
}

json trials_json(const ExperimentRecord & r)
{
    json a = json::array();
    for (const auto & t : r.trials)
        a.push_back(t.to_json());
    return a;
}

} // namespace

TEST_CASE("fnv1a64 reference vectors")
{
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
    CHECK(digest(json::array({1, 2, 3})).size() == 16);
}

TEST_CASE("every registered operation validates with its defaults")
{
    for (const auto & op : registry()) {
        CAPTURE(op.module);
        CAPTURE(op.op);
        CHECK(op.run);
        bool needs = false;
        for (const auto & p : op.params)
            needs = needs || p.fallback.is_null();
        if (!needs)
            CHECK_NOTHROW(validate(make(op.module, op.op, json::object())));
    }
}

TEST_CASE("validation rejects bad parameters")
{
    CHECK_THROWS_AS(validate(make("nope", "x", json::object())), ValidationError);
    CHECK_THROWS_AS(validate(make("setmap", "nope", json::object())), ValidationError);
    CHECK_THROWS_AS(validate(make("setmap", "violate", {{"k", 0}})), ValidationError);
    CHECK_THROWS_AS(validate(make("setmap", "violate", {{"k", "two"}})), ValidationError);
    CHECK_THROWS_AS(validate(make("setmap", "violate", {{"bogus", 1}})), ValidationError);
    CHECK_THROWS_AS(validate(make("setmap", "violate", {{"family", "other"}})), ValidationError);
    CHECK_THROWS_AS(validate(make("bipfree", "extract", {{"r", 0}})), ValidationError);
    CHECK_THROWS_AS(validate(make("removal", "grid", {{"r", 0}})), ValidationError);
    CHECK_THROWS_AS(validate(make("embed", "pipeline", {{"d", 7}})), ValidationError);
    auto bad_trials = make("setmap", "violate", json::object());
    bad_trials.trials = 0;
    CHECK_THROWS_AS(validate(bad_trials), ValidationError);
    auto bad_preset = make("setmap", "violate", json::object());
    bad_preset.preset = "nope";
    CHECK_THROWS(validate(bad_preset));
}

TEST_CASE("string parameters are converted to declared types")
{
    auto v = validate(make("setmap", "violate", {{"k", "3"}, {"n", "4"}}));
    CHECK(v.params["k"] == 3);
    CHECK(v.params["n"] == 4);
    CHECK(v.params["size"] == 3 * 3 * 4 + 1);
}

TEST_CASE("setmap violate: 100 trials all succeed")
{
    auto rec = run(make("setmap", "violate", {{"k", 2}, {"n", 6}}, 7, 100));
    REQUIRE(rec.trials.size() == 100);
    CHECK(rec.all_ok());
    CHECK(rec.aggregate["success_rate"] == 1.0);
    for (const auto & t : rec.trials)
        CHECK(t.success);
}

TEST_CASE("runs are reproducible across thread counts")
{
    auto spec = make("bipfree", "extract", {{"vertices", 30}, {"p", 0.4}}, 99, 6);
    setenv("EXLAB_THREADS", "1", 1);
    auto a = run(spec);
    setenv("EXLAB_THREADS", "3", 1);
    auto b = run(spec);
    unsetenv("EXLAB_THREADS");
    CHECK(trials_json(a).dump() == trials_json(b).dump());
    auto c = run(make("bipfree", "extract", {{"vertices", 30}, {"p", 0.4}}, 100, 6));
    CHECK(trials_json(a).dump() != trials_json(c).dump());
}

TEST_CASE("bipfree extract meets the size floor")
{
    auto rec = run(make("bipfree", "extract", {{"vertices", 40}, {"p", 0.5}}, 3, 5));
    CHECK(rec.all_ok());
    for (const auto & t : rec.trials)
        CHECK(t.stats["size_floor_ratio"].get<double>() >= 1.0);
}

TEST_CASE("trial failures are recorded, not thrown")
{
    // N = 2 with a 6-cycle cannot host the copy
    auto rec = run(make("embed", "pipeline", {{"N", 2}, {"d", 6}}, 1, 2));
    CHECK_FALSE(rec.all_ok());
    for (const auto & t : rec.trials)
        CHECK((!t.success || !t.error.empty()));
}

TEST_CASE("record round trip and report")
{
    auto dir = std::filesystem::temp_directory_path() / "exlab_test_expcli";
    std::filesystem::create_directories(dir);
    auto s1 = make("setmap", "violate", {{"k", 2}, {"n", 6}}, 5, 4);
    s1.out = (dir / "a.json").string();
    auto r1 = run(s1);
    auto s2 = make("bipfree", "count", {{"vertices", 12}, {"p", 0.5}}, 5, 2);
    s2.out = (dir / "b.json").string();
    run(s2);

    auto j1 = read_record_json(s1.out);
    CHECK(j1["schema_version"] == schema_version);
    CHECK(j1["rng"]["seed"] == 5);
    auto back = ExperimentRecord::from_json(j1);
    CHECK(back.trials.size() == 4);
    CHECK(trials_json(back).dump() == trials_json(r1).dump());

    json old = j1;
    old["schema_version"] = 0;
    auto rep = json::parse(report({j1, read_record_json(s2.out), old}, ReportFormat::json));
    REQUIRE(rep.size() == 3);
    CHECK(rep[0]["module"] == "bipfree");
    CHECK(rep[1]["module"] == "setmap");
    CHECK(rep[1]["success_rate"] == 1.0);
    int flagged = 0;
    for (const auto & row : rep)
        flagged += !row["flag"].get<std::string>().empty();
    CHECK(flagged == 1);

    auto md = report({j1}, ReportFormat::md);
    CHECK(md.find("| module") != std::string::npos);
    auto csv = report({j1}, ReportFormat::csv);
    CHECK(csv.rfind("module,op", 0) == 0);
    CHECK(record_csv(r1).rfind("trial,success,digest", 0) == 0);
    CHECK_THROWS_AS(ExperimentRecord::from_json(old), ValidationError);
    CHECK_THROWS_AS(parse_format("xml"), ValidationError);
    std::filesystem::remove_all(dir);
}

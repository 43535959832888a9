#include "doctest.h"

#include "dmass/cli.hpp"
#include "dmass/mass.hpp"
#include "dmass/random.hpp"

using namespace dmass;
using nlohmann::json;

namespace {

json mass_payload(unsigned q) {
    return json::parse(R"({
      "curve": {"kind": "projective_line", "q": )" + std::to_string(q) + R"(},
      "inf": {"id": "inf", "degree": 1},
      "o": {"id": "o", "degree": 1},
      "d": 2,
      "invariants": [
        {"place": {"id": "o", "degree": 1}, "value": "1/2"},
        {"place": {"id": "x1", "degree": 1}, "value": {"num": "1", "den": "2"}}
      ],
      "f": [1, 1]
    })");
}

cli::RunResult run(const std::string& command, const json& payload,
                   std::optional<std::uint64_t> seed = std::nullopt) {
    return cli::run({command, payload, seed});
}

bool has_error_at(const json& report, const std::string& path) {
    for (const auto& e : report.at("errors")) {
        if (e.at("path") == path) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("zeta command") {
    const auto r = run("zeta", json::parse(R"({"curve": {"kind": "projective_line", "q": 2}})"));
    REQUIRE(r.exit_code == 0);
    const json& res = r.report.at("result");
    CHECK(res.at("numerator") == json::array({"1"}));
    CHECK(res.at("class_number") == "1");
    CHECK(cli::rational_from_json(res.at("special_values")[0].at("value")) == Rational(1, 3));

    const auto e = run("zeta", json::parse(R"({"curve": {"kind": "elliptic", "q": 2, "a": [0,0,1,0,0]}})"));
    REQUIRE(e.exit_code == 0);
    CHECK(e.report["result"]["numerator"] == json::array({"1", "0", "2"}));
    CHECK(e.report["result"]["point_counts"] == json::array({"3", "9"}));
    CHECK(e.report["result"]["class_number"] == "3");
}

TEST_CASE("centralizer and order commands") {
    const auto c = run("centralizer", json::parse(R"({"d": 3, "f": [2, 0, 1], "q": 2, "N": 2})"));
    REQUIRE(c.exit_code == 0);
    CHECK(c.report["result"]["dimension"] == 16);
    CHECK(c.report["result"]["certificate"]["valid"] == true);

    const auto o = run("order", json::parse(R"({"d": 2, "f": [1, 1], "q": 2, "N": 3})"));
    REQUIRE(o.exit_code == 0);
    CHECK(o.report["result"]["block_order_dimension"] == 11);
    CHECK(o.report["result"]["chain"]["stabilizer_equals_block_order"] == true);
    CHECK(o.report["result"]["conjugation"]["verified"] == true);
}

TEST_CASE("mass and singular commands") {
    for (unsigned q : {2U, 3U, 4U}) {
        const auto r = run("mass", mass_payload(q));
        REQUIRE(r.exit_code == 0);
        CHECK(cli::rational_from_json(r.report["result"]["mass"]) == Rational(1, q - 1));
    }
    json p = mass_payload(2);
    p["level"] = json::parse(R"([{"place": {"id": "y", "degree": 2}, "e": 1}])");
    const auto s = run("singular", p);
    REQUIRE(s.exit_code == 0);
    CHECK(cli::rational_from_json(s.report["result"]["singular_count"]) == Rational(180));
    CHECK(s.report["result"]["identity_holds"] == true);
}

TEST_CASE("invalid input exits with code 2 and located errors") {
    auto r = run("centralizer", json::parse(R"({"d": 2, "f": [1, 0], "q": 6, "N": 2, "x": 1})"));
    CHECK(r.exit_code == 2);
    CHECK(r.report["status"] == "invalid");
    CHECK(has_error_at(r.report, "f"));
    CHECK(has_error_at(r.report, "q"));
    CHECK(has_error_at(r.report, "x"));

    json p = mass_payload(2);
    p["invariants"][1]["value"] = "1/x";
    p.erase("o");
    r = run("mass", p);
    CHECK(r.exit_code == 2);
    CHECK(has_error_at(r.report, "o"));
    CHECK(has_error_at(r.report, "invariants[1].value"));

    // Semantic failures found after the schema check.
    json ram_inf = mass_payload(2);
    ram_inf["invariants"][1]["place"]["id"] = "inf";
    r = run("mass", ram_inf);
    CHECK(r.exit_code == 2);
    CHECK(has_error_at(r.report, "algebra"));

    json crowded = mass_payload(2);
    crowded["level"] = json::parse(R"([{"place": {"id": "y", "degree": 1}, "e": 2}])");
    r = run("singular", crowded);
    CHECK(r.exit_code == 2);
    CHECK(has_error_at(r.report, "places"));

    r = run("zeta", json::parse(R"({"curve": {"kind": "elliptic", "q": 2, "a": [0,0,0,0,0]}})"));
    CHECK(r.exit_code == 2);
    CHECK(has_error_at(r.report, "curve"));

    r = run("bogus", json::object());
    CHECK(r.exit_code == 2);
    r = run("zeta", json::array());
    CHECK(r.exit_code == 2);
}

TEST_CASE("reports round-trip and are deterministic") {
    std::vector<std::pair<std::string, json>> cases{
        {"zeta", json::parse(R"({"curve": {"kind": "hyperelliptic", "q": 3, "f": [1, 0, 0, 0, 0, 1], "genus": 2}})")},
        {"order", json::parse(R"({"d": 2, "f": [2, 0], "q": 3, "N": 2})")},
        {"centralizer", json::parse(R"({"d": 2, "f": [1, 1], "q": 3, "N": 2})")},
        {"mass", mass_payload(5)},
    };
    for (const auto& [cmd, payload] : cases) {
        CAPTURE(cmd);
        const auto a = run(cmd, payload, 7);
        const auto b = run(cmd, payload, 7);
        REQUIRE(a.exit_code == 0);
        CHECK(cli::render_json(a.report) == cli::render_json(b.report));
        CHECK(a.report["seed"] == 7);
        const json back = json::parse(cli::render_json(a.report));
        CHECK(back == a.report);
        CHECK(cli::validate_report(back).empty());
        CHECK(run(cmd, back.at("config"), 7).report == a.report);
        CHECK_FALSE(cli::render_table(a.report).empty());
    }
    const auto bad = run("order", json::parse(R"({"d": 0})"));
    CHECK(cli::validate_report(json::parse(cli::render_json(bad.report))).empty());
    CHECK_FALSE(cli::validate_report(json::parse(R"({"tool": 1})")).empty());
}

TEST_CASE("rationals round-trip exactly") {
    std::mt19937_64 rng(kDefaultSeed);
    for (int i = 0; i < 200; ++i) {
        BigInt num = BigInt(rng()) * BigInt(rng()) - BigInt(rng());
        BigInt den = BigInt(rng() | 1U) * BigInt(rng() % 1000 + 1);
        const Rational r(num, den);
        CHECK(cli::rational_from_json(json::parse(cli::rational_to_json(r).dump())) == r);
        CHECK(cli::rational_from_json(r.to_string()) == r);
    }
    CHECK(cli::rational_from_json(json(-3)) == Rational(-3));
    CHECK_THROWS(cli::rational_from_json(json(0.5)));
    CHECK_THROWS(cli::rational_from_json(json("1/0")));
}

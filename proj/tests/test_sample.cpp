#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "elci/errors.hpp"
#include "elci/sample.hpp"
#include "elci/step_function.hpp"
#include "helpers.hpp"

using namespace elci;

namespace {

std::string write_temp(const std::string& content) {
    static int counter = 0;
    std::string path = "elci_test_" + std::to_string(counter++) + ".csv";
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("ingest sorts rows by time") {
    auto path = write_temp("time,event\n1,1\n3,1\n2,0\n");
    auto s = ingest_csv(path);
    REQUIRE(s.n() == 3);
    CHECK(s[0].time == 1.0);
    CHECK(s[1].time == 2.0);
    CHECK(s[1].event == 0);
    CHECK(s[2].time == 3.0);
    std::remove(path.c_str());
}

TEST_CASE("ingest rejects negative times naming the row") {
    auto path = write_temp("time,event\n2,1\n-1,1\n");
    try {
        ingest_csv(path);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("ingest rejects bad event flags and degenerate samples") {
    auto bad_event = write_temp("time,event\n1,2\n2,1\n");
    CHECK_THROWS_AS(ingest_csv(bad_event), ValidationError);
    std::remove(bad_event.c_str());

    auto one_row = write_temp("time,event\n1,1\n");
    CHECK_THROWS_AS(ingest_csv(one_row), DegenerateSample);
    std::remove(one_row.c_str());

    auto no_events = write_temp("time,event\n1,0\n2,0\n");
    CHECK_THROWS_AS(ingest_csv(no_events), DegenerateSample);
    std::remove(no_events.c_str());
}

TEST_CASE("tied times put events first") {
    auto path = write_temp("time,event\n2,0\n2,1\n");
    auto s = ingest_csv(path);
    CHECK(s[0].event == 1);
    CHECK(s[1].event == 0);
    CHECK(s.has_tied_times());
    std::remove(path.c_str());
}

TEST_CASE("extra columns ignored, delimiter configurable") {
    auto path = write_temp("id;time;event;note\n7;1.5;1;x\n8;0.5;0;y\n9;2;1;z\n");
    CsvConfig cfg;
    cfg.delimiter = ';';
    auto s = ingest_csv(path, cfg);
    REQUIRE(s.n() == 3);
    CHECK(s[0].time == 0.5);
    std::remove(path.c_str());
}

TEST_CASE("ingest / serialize round trip is idempotent") {
    std::mt19937_64 rng(99);
    auto s = testutil::random_sample(rng, 60);
    auto path = write_temp("");
    write_csv(s, path);
    auto s2 = ingest_csv(path);
    REQUIRE(s2.n() == s.n());
    for (std::size_t i = 0; i < s.n(); ++i) {
        CHECK(s2[i].time == s[i].time);
        CHECK(s2[i].event == s[i].event);
    }
    std::remove(path.c_str());
}

TEST_CASE("step function evaluation at and off knots") {
    StepFunction f({1.0}, {1.0}, 0.0, true);
    CHECK(f.eval(1.0) == 1.0);
    CHECK(f.eval_left(1.0) == 0.0);
    CHECK(f.eval(0.5) == 0.0);
    CHECK(f.eval(2.0) == 1.0);
    CHECK(f.jump_at(1.0) == 1.0);
    CHECK(f.jump_at(0.7) == 0.0);
}

TEST_CASE("step function jump identity on a random grid") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::vector<double> knots{1.0, 2.5, 4.0, 7.25};
    std::vector<double> values{0.2, 0.5, 0.55, 1.0};
    StepFunction f(knots, values, 0.0, true);
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng);
        CHECK(f.eval(x) - f.eval_left(x) == f.jump_at(x));
    }
    for (double k : knots) {
        CHECK(f.eval(k) - f.eval_left(k) == f.jump_at(k));
    }
}

TEST_CASE("step function validates monotone flag and knot order") {
    CHECK_THROWS_AS(StepFunction({2.0, 1.0}, {0.1, 0.2}, 0.0), ValidationError);
    CHECK_THROWS_AS(StepFunction({1.0, 2.0}, {0.5, 0.2}, 0.0, true), ValidationError);
}

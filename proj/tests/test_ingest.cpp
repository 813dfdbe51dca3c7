#include <doctest.h>

#include <sstream>

#include "forumnet/ingest.hpp"

using namespace forumnet;

namespace {

const char* kHeader = "message_id,thread_id,parent_id,author_id,timestamp,sentiment,spam_label,text\n";

ParseResult parse(const std::string& body, LogFormat fmt = LogFormat::delimited_table) {
    std::istringstream in(fmt == LogFormat::delimited_table ? kHeader + body : body);
    return parse_message_log(in, fmt);
}

}  // namespace

TEST_CASE("timestamp round trip") {
    auto t = parse_iso8601_utc("2016-03-01T10:00:00Z");
    REQUIRE(t.has_value());
    CHECK(format_iso8601_utc(*t) == "2016-03-01T10:00:00Z");
    CHECK(!parse_iso8601_utc("2016-03-01 10:00:00").has_value());
    CHECK(!parse_iso8601_utc("2016-13-01T10:00:00Z").has_value());
    CHECK(*parse_iso8601_utc("1970-01-01T00:00:00Z") == 0);
}

TEST_CASE("reply with resolved parent") {
    auto res = parse(
        "m1,t1,,alice,2016-03-01T09:00:00Z,,,hello\n"
        "m2,t1,m1,bob,2016-03-01T10:00:00Z,,,hi\n");
    REQUIRE(res.events.size() == 2);
    CHECK(res.events[1].parent_id == "m1");
    CHECK(res.diagnostics.empty());
}

TEST_CASE("unknown parent demotes to thread-opener") {
    auto res = parse("m2,t1,ghost,bob,2016-03-01T10:00:00Z,,,hi\n");
    REQUIRE(res.events.size() == 1);
    CHECK(res.events[0].parent_id.empty());
    CHECK(res.diagnostics.size() == 1);
}

TEST_CASE("duplicate message_id is fatal") {
    CHECK_THROWS_AS(parse("m1,t1,,alice,2016-03-01T09:00:00Z,,,a\n"
                          "m1,t1,,bob,2016-03-01T10:00:00Z,,,b\n"),
                    DataError);
}

TEST_CASE("bad sentiment and bad timestamp reject the record") {
    auto res = parse(
        "m1,t1,,alice,2016-03-01T09:00:00Z,1.5,,x\n"
        "m2,t1,,bob,yesterday,,,y\n"
        "m3,t1,,carol,2016-03-01T11:00:00Z,0.25,,z\n");
    CHECK(res.events.size() == 1);
    CHECK(res.rejected == 2);
    CHECK(res.events.size() + res.rejected == res.input_records);
    CHECK(res.events[0].sentiment == doctest::Approx(0.25));
}

TEST_CASE("events come out in (timestamp, message_id) order") {
    auto res = parse(
        "m9,t1,,a,2016-03-02T00:00:00Z,,,\n"
        "m2,t1,,b,2016-03-01T00:00:00Z,,,\n"
        "m1,t1,,c,2016-03-01T00:00:00Z,,,\n");
    REQUIRE(res.events.size() == 3);
    CHECK(res.events[0].message_id == "m1");
    CHECK(res.events[1].message_id == "m2");
    CHECK(res.events[2].message_id == "m9");
}

TEST_CASE("parent later in time is demoted") {
    auto res = parse(
        "m1,t1,m2,alice,2016-03-01T09:00:00Z,,,early reply\n"
        "m2,t1,,bob,2016-03-01T10:00:00Z,,,late parent\n");
    CHECK(res.events[0].parent_id.empty());
    CHECK(res.diagnostics.size() == 1);
}

TEST_CASE("equal parent/reply timestamps are allowed") {
    auto res = parse(
        "m1,t1,,alice,2016-03-01T09:00:00Z,,,\n"
        "m2,t1,m1,bob,2016-03-01T09:00:00Z,,,\n");
    CHECK(res.events[1].parent_id == "m1");
    CHECK(res.diagnostics.empty());
}

TEST_CASE("writer/parser round trip") {
    auto res = parse(
        "m1,t1,,alice,2016-03-01T09:00:00Z,0.75,true,\"hello, \"\"world\"\"\"\n"
        "m2,t1,m1,bob,2016-03-01T10:00:00Z,,false,plain text\n"
        "m3,t2,,carol,2016-03-01T11:00:00Z,,,\n");
    REQUIRE(res.events.size() == 3);
    std::ostringstream out;
    write_message_log(out, res.events);
    std::istringstream back(out.str());
    auto res2 = parse_message_log(back);
    REQUIRE(res2.events.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(res2.events[i].message_id == res.events[i].message_id);
        CHECK(res2.events[i].thread_id == res.events[i].thread_id);
        CHECK(res2.events[i].parent_id == res.events[i].parent_id);
        CHECK(res2.events[i].author_id == res.events[i].author_id);
        CHECK(res2.events[i].timestamp == res.events[i].timestamp);
        CHECK(res2.events[i].sentiment == res.events[i].sentiment);
        CHECK(res2.events[i].spam_label == res.events[i].spam_label);
        CHECK(res2.events[i].text == res.events[i].text);
    }
}

TEST_CASE("line-delimited records") {
    std::string body =
        R"({"message_id":"m1","thread_id":"t1","author_id":"alice","timestamp":"2016-03-01T09:00:00Z","sentiment":0.5,"text":"hi"})"
        "\n"
        R"({"message_id":"m2","thread_id":"t1","parent_id":"m1","author_id":"bob","timestamp":"2016-03-01T10:00:00Z"})"
        "\n";
    auto res = parse(body, LogFormat::line_delimited_records);
    REQUIRE(res.events.size() == 2);
    CHECK(res.events[0].sentiment == doctest::Approx(0.5));
    CHECK(res.events[1].parent_id == "m1");
}

TEST_CASE("roster parsing") {
    std::istringstream in("author_id,role\nalice,moderator\nspam1,spammer\n");
    auto res = parse_roster(in, {"alice"});
    CHECK(res.roster.role_of("alice") == Role::moderator);
    CHECK(res.roster.role_of("unknown") == Role::regular);
    CHECK(res.diagnostics.size() == 1);  // spam1 never posted

    std::istringstream bad("alice,admin\n");
    CHECK_THROWS_AS(parse_roster(bad), DataError);

    std::istringstream conflict("alice,moderator\nalice,spammer\n");
    CHECK_THROWS_AS(parse_roster(conflict), DataError);
}

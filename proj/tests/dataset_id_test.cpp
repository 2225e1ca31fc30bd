#include <doctest.h>

#include <random>

#include "dslink/dataset_id.hpp"
#include "support/generators.hpp"

using namespace dslink;

TEST_CASE("parse splits the three components") {
    const ParseResult r = parse_dataset_id("ADS/Sa.CXO#obs/1234");
    REQUIRE(get_id(r) != nullptr);
    CHECK(get_id(r)->facility_id == "Sa.CXO");
    CHECK(get_id(r)->private_id == "obs/1234");
}

TEST_CASE("parse keeps facility case and allows slashes in the private id") {
    const ParseResult r = parse_dataset_id("ADS/MAST#hst/a/b.c");
    REQUIRE(get_id(r) != nullptr);
    CHECK(get_id(r)->facility_id == "MAST");
    CHECK(get_id(r)->private_id == "hst/a/b.c");
}

TEST_CASE("parse rejections carry the first violated rule and its position") {
    SUBCASE("empty private id") {
        const ParseResult r = parse_dataset_id("ADS/MAST#");
        REQUIRE(get_parse_error(r) != nullptr);
        CHECK(*get_parse_error(r) == ParseError{ParseErrorKind::EmptyPrivateId, 9});
    }
    SUBCASE("bad authority") {
        const ParseResult r = parse_dataset_id("DOI/MAST#x");
        REQUIRE(get_parse_error(r) != nullptr);
        CHECK(*get_parse_error(r) == ParseError{ParseErrorKind::BadAuthority, 0});
    }
    SUBCASE("authority is case sensitive") {
        CHECK(get_parse_error(parse_dataset_id("ads/MAST#x"))->kind == ParseErrorKind::BadAuthority);
    }
    SUBCASE("missing authority") {
        CHECK(*get_parse_error(parse_dataset_id("MAST#x")) == ParseError{ParseErrorKind::MissingAuthority, 0});
        CHECK(get_parse_error(parse_dataset_id(""))->kind == ParseErrorKind::MissingAuthority);
    }
    SUBCASE("missing separator") {
        CHECK(*get_parse_error(parse_dataset_id("ADS/MAST")) == ParseError{ParseErrorKind::MissingSeparator, 8});
    }
    SUBCASE("empty facility") {
        CHECK(*get_parse_error(parse_dataset_id("ADS/#x")) == ParseError{ParseErrorKind::EmptyFacility, 4});
    }
    SUBCASE("bad facility char, including a second slash") {
        CHECK(*get_parse_error(parse_dataset_id("ADS/MA ST#x")) == ParseError{ParseErrorKind::BadFacilityChar, 6});
        CHECK(*get_parse_error(parse_dataset_id("ADS/MA/ST#x")) == ParseError{ParseErrorKind::BadFacilityChar, 6});
    }
    SUBCASE("second separator is a bad private char") {
        CHECK(*get_parse_error(parse_dataset_id("ADS/MAST#a#b")) == ParseError{ParseErrorKind::BadPrivateChar, 10});
    }
    SUBCASE("whitespace and control bytes in the private id") {
        CHECK(get_parse_error(parse_dataset_id("ADS/MAST#a b"))->kind == ParseErrorKind::BadPrivateChar);
        CHECK(get_parse_error(parse_dataset_id("ADS/MAST#a\tb"))->kind == ParseErrorKind::BadPrivateChar);
        CHECK(get_parse_error(parse_dataset_id("ADS/MAST#a\x01"))->kind == ParseErrorKind::BadPrivateChar);
    }
    SUBCASE("length bounds") {
        const std::string long_facility(33, 'f');
        CHECK(*get_parse_error(parse_dataset_id("ADS/" + long_facility + "#x")) ==
              ParseError{ParseErrorKind::TooLong, 4 + 32});
        const std::string long_private(129, 'p');
        CHECK(*get_parse_error(parse_dataset_id("ADS/MAST#" + long_private)) ==
              ParseError{ParseErrorKind::TooLong, 9 + 128});
        // at the bounds both parse
        CHECK(get_id(parse_dataset_id("ADS/" + std::string(32, 'f') + "#x")) != nullptr);
        CHECK(get_id(parse_dataset_id("ADS/MAST#" + std::string(128, 'p'))) != nullptr);
    }
}

TEST_CASE("format concatenates the skeleton") {
    CHECK(format_dataset_id({"MAST", "hst.07442"}) == "ADS/MAST#hst.07442");
    CHECK(format_dataset_id({"Sa.CXO", "obs/1234"}) == "ADS/Sa.CXO#obs/1234");
}

TEST_CASE("normalize_facility folds to lower case and is idempotent") {
    CHECK(normalize_facility("Sa.CXO") == "sa.cxo");
    CHECK(normalize_facility("MAST") == "mast");
    CHECK(normalize_facility("mast") == "mast");
    CHECK(normalize_facility(normalize_facility("IRSA-2.5_x")) == normalize_facility("IRSA-2.5_x"));
}

TEST_CASE("round trip over a generated corpus") {
    std::mt19937 rng(20060914);
    for (int i = 0; i < 500; ++i) {
        const std::string s = testgen::valid_identifier(rng);
        const ParseResult r = parse_dataset_id(s);
        REQUIRE_MESSAGE(get_id(r) != nullptr, s);
        CHECK(format_dataset_id(*get_id(r)) == s);  // format . parse is the identity
        CHECK(*get_id(parse_dataset_id(format_dataset_id(*get_id(r)))) == *get_id(r));
    }
}

TEST_CASE("rejection completeness over derived invalid strings") {
    std::mt19937 rng(42);
    for (int i = 0; i < 500; ++i) {
        const std::string s = testgen::corrupt_identifier(rng);
        CHECK_MESSAGE(get_parse_error(parse_dataset_id(s)) != nullptr, s);
    }
}

TEST_CASE("a formatted identifier contains exactly one separator") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        const std::string s = testgen::valid_identifier(rng);
        std::size_t hashes = 0;
        for (char c : s) {
            if (c == '#') ++hashes;
        }
        CHECK(hashes == 1);
    }
}

TEST_CASE("error positions never exceed the input length") {
    std::mt19937 rng(99);
    for (int i = 0; i < 300; ++i) {
        const std::string s = testgen::corrupt_identifier(rng);
        const ParseError* err = get_parse_error(parse_dataset_id(s));
        REQUIRE(err != nullptr);
        CHECK(err->position <= s.size());
    }
}

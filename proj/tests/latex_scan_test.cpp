#include <doctest.h>

#include <algorithm>
#include <random>

#include "dslink/latex_scan.hpp"

using namespace dslink;

TEST_CASE("direct extraction with position at the backslash") {
    const ScanResult r = scan_latex("We used \\dataset{ADS/Sa.CXO#obs/1234} here.", "ms.tex");
    REQUIRE(r.occurrences.size() == 1);
    CHECK(r.occurrences[0].identifier_text == "ADS/Sa.CXO#obs/1234");
    CHECK(r.occurrences[0].file == "ms.tex");
    CHECK(r.occurrences[0].line == 1);
    CHECK(r.occurrences[0].column == 9);
    CHECK(r.issues.empty());
}

TEST_CASE("commented macros are not occurrences") {
    CHECK(scan_latex("% \\dataset{ADS/MAST#x}").occurrences.empty());
    CHECK(scan_latex("text % trailing \\dataset{ADS/MAST#x}").occurrences.empty());

    // an escaped percent does not open a comment
    const ScanResult r = scan_latex("100\\% of \\dataset{ADS/MAST#x}");
    REQUIRE(r.occurrences.size() == 1);
    CHECK(r.occurrences[0].identifier_text == "ADS/MAST#x");
}

TEST_CASE("occurrences are reported in document order with correct lines") {
    const ScanResult r = scan_latex(
        "First \\dataset{ADS/MAST#a}\n"
        "and then\n"
        "  \\dataset{ADS/MAST#b} plus \\dataset{ADS/CXC#c}\n");
    REQUIRE(r.occurrences.size() == 3);
    CHECK(r.occurrences[0].identifier_text == "ADS/MAST#a");
    CHECK(r.occurrences[0].line == 1);
    CHECK(r.occurrences[0].column == 7);
    CHECK(r.occurrences[1].identifier_text == "ADS/MAST#b");
    CHECK(r.occurrences[1].line == 3);
    CHECK(r.occurrences[1].column == 3);
    CHECK(r.occurrences[2].identifier_text == "ADS/CXC#c");
    CHECK(r.occurrences[2].line == 3);
    CHECK(r.occurrences[2].column == 30);
}

TEST_CASE("the brace argument may span lines") {
    SUBCASE("plain wrap") {
        const ScanResult r = scan_latex("\\dataset{ADS/MAST#hst.\n    07442}");
        REQUIRE(r.occurrences.size() == 1);
        CHECK(r.occurrences[0].identifier_text == "ADS/MAST#hst.07442");
    }
    SUBCASE("comment splice") {
        const ScanResult r = scan_latex("\\dataset{ADS/MAST#hst%\n.07442}");
        REQUIRE(r.occurrences.size() == 1);
        CHECK(r.occurrences[0].identifier_text == "ADS/MAST#hst.07442");
    }
    SUBCASE("surrounding blanks are trimmed") {
        const ScanResult r = scan_latex("\\dataset{ ADS/MAST#x }");
        REQUIRE(r.occurrences.size() == 1);
        CHECK(r.occurrences[0].identifier_text == "ADS/MAST#x");
    }
}

TEST_CASE("whitespace between macro and brace is tolerated") {
    const ScanResult r = scan_latex("\\dataset {ADS/MAST#x}");
    REQUIRE(r.occurrences.size() == 1);
    CHECK(r.occurrences[0].identifier_text == "ADS/MAST#x");
}

TEST_CASE("longer control words are different macros") {
    CHECK(scan_latex("\\datasetlist{ADS/MAST#x}").occurrences.empty());
    CHECK(scan_latex("\\datasets{ADS/MAST#x}").occurrences.empty());
}

TEST_CASE("interior spaces stay put and fail verification later") {
    const ScanResult r = scan_latex("\\dataset{ADS/MA ST#x}");
    REQUIRE(r.occurrences.size() == 1);
    CHECK(r.occurrences[0].identifier_text == "ADS/MA ST#x");
}

TEST_CASE("unterminated argument is an issue located at the macro") {
    const ScanResult r = scan_latex("text\n\\dataset{ADS/MAST#x", "broken.tex");
    CHECK(r.occurrences.empty());
    REQUIRE(r.issues.size() == 1);
    CHECK(r.issues[0].file == "broken.tex");
    CHECK(r.issues[0].line == 2);
    CHECK(r.issues[0].column == 1);
    CHECK(r.issues[0].message.find("unterminated") != std::string::npos);
}

TEST_CASE("nested braces are rejected") {
    const ScanResult r = scan_latex("\\dataset{ADS/{MAST}#x}");
    CHECK(r.occurrences.empty());
    REQUIRE_FALSE(r.issues.empty());
    CHECK(r.issues[0].message.find("nested") != std::string::npos);
}

TEST_CASE("missing brace argument is an issue") {
    const ScanResult r = scan_latex("\\dataset ADS/MAST#x");
    CHECK(r.occurrences.empty());
    REQUIRE(r.issues.size() == 1);
    CHECK(r.issues[0].message.find("without a brace") != std::string::npos);
}

TEST_CASE("inserting prose never changes the extracted identifier multiset") {
    const std::string identifiers[] = {"ADS/MAST#hst.07442", "ADS/Sa.CXO#obs/1234", "ADS/IRSA#2mass-j123"};
    std::mt19937 rng(31337);
    const char* fillers[] = {"as shown in Table 2 ",  "\n",  "% a comment line\n",
                             "\\emph{important} ", "see \\cite{2000A&AS..143...41K} ", "\n\n"};

    for (int trial = 0; trial < 50; ++trial) {
        std::string text;
        std::vector<std::string> expected;
        for (int k = 0; k < 6; ++k) {
            text += fillers[std::uniform_int_distribution<int>(0, 5)(rng)];
            const std::string& id = identifiers[std::uniform_int_distribution<int>(0, 2)(rng)];
            text += "\\dataset{" + id + "}";
            expected.push_back(id);
        }
        const ScanResult r = scan_latex(text);
        std::vector<std::string> got;
        for (const MacroOccurrence& occurrence : r.occurrences) got.push_back(occurrence.identifier_text);
        std::sort(got.begin(), got.end());
        std::sort(expected.begin(), expected.end());
        CHECK(got == expected);
    }
}

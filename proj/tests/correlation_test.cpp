#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>

#include "dslink/correlation.hpp"
#include "support/generators.hpp"

using namespace dslink;

namespace {

std::shared_ptr<SimulatedClock> test_clock() {
    return std::make_shared<SimulatedClock>(make_utc_time(2006, 9, 14));
}

std::string article_token(std::mt19937& rng, int n) {
    return "2006ApJ..." + std::to_string(600 + n % 40) + ".." + std::to_string(10 + n) + "E";
}

}  // namespace

TEST_CASE("ingest counts inserts, updates and per-line rejects") {
    auto clock = test_clock();
    CorrelationStore store(clock);

    const std::string feed =
        "2006ApJ...650..100A\tADS/MAST#hst.07442\n"
        "2006ApJ...650..100A\tADS/Sa.CXO#obs/1234\n"
        "2006AJ....132...50B\tADS/MAST#hst.07442\n";
    const IngestReport first = store.ingest_feed(feed, "UChP");
    CHECK(first.inserted == 3);
    CHECK(first.updated == 0);
    CHECK(first.rejected == 0);

    const IngestReport second = store.ingest_feed(feed, "UChP");
    CHECK(second.inserted == 0);
    CHECK(second.updated == 3);
    CHECK(store.size() == 3);
}

TEST_CASE("malformed lines are rejected individually, never aborting the feed") {
    CorrelationStore store(test_clock());
    const IngestReport report = store.ingest_feed(
        "2006ApJ...650..100A\tADS/MAST#hst.07442\n"
        "2006ApJ...650..101B\tADS/MAST#\n"
        "no-tab-line\n"
        "a\tb\tc\n"
        "\tADS/MAST#x\n"
        "2006ApJ...650..102C\tADS/Sa.CXO#obs/1\n",
        "UChP");
    CHECK(report.inserted == 2);
    CHECK(report.rejected == 4);
    REQUIRE(report.rejects.size() == 4);
    CHECK(report.rejects[0].line == 2);
    CHECK(report.rejects[0].reason == "empty_private_id at byte 9");
    CHECK(report.rejects[1].line == 3);
    CHECK(report.rejects[2].line == 4);
    CHECK(report.rejects[3].line == 5);
}

TEST_CASE("non-utf8 input is unreadable as a whole") {
    CorrelationStore store(test_clock());
    std::string feed = "2006ApJ...650..100A\tADS/MAST#x\n";
    feed += static_cast<char>(0xff);
    const IngestReport report = store.ingest_feed(feed, "UChP");
    CHECK(report.feed_unreadable);
    CHECK(store.size() == 0);
}

TEST_CASE("harvest filters by facility and timestamp") {
    auto clock = test_clock();
    CorrelationStore store(clock);
    store.ingest_feed(
        "art.1\tADS/MAST#a\n"
        "art.1\tADS/Sa.CXO#c\n"
        "art.2\tADS/mast#b\n",
        "UChP");

    CHECK(store.harvest(std::string("mast"), std::nullopt) ==
          "art.1\tADS/MAST#a\n"
          "art.2\tADS/mast#b\n");
    CHECK(store.harvest(std::string("sa.cxo"), std::nullopt) == "art.1\tADS/Sa.CXO#c\n");
    CHECK(store.harvest(std::string("other"), std::nullopt).empty());

    const TimePoint cut = clock->now() + Seconds(100);
    CHECK(store.harvest(std::nullopt, cut).empty());  // future cutoff

    clock->advance(Seconds(200));
    store.ingest_feed("art.3\tADS/MAST#late\n", "UChP");
    CHECK(store.harvest(std::nullopt, cut) == "art.3\tADS/MAST#late\n");
}

TEST_CASE("generated feed: harvest equals the sorted canonical oracle") {
    std::mt19937 rng(2006);
    auto clock = test_clock();
    CorrelationStore store(clock);

    std::set<std::string> oracle_lines;  // sorted + deduplicated, as the store must emit
    std::string feed;
    int produced = 0;
    while (produced < 200) {
        const std::string article = article_token(rng, produced);
        const std::string dataset = testgen::valid_identifier(rng);
        const std::string line = article + "\t" + dataset + "\n";
        if (!oracle_lines.insert(line).second) continue;
        feed += line;
        ++produced;
    }

    const IngestReport report = store.ingest_feed(feed, "UChP");
    CHECK(report.inserted == 200);
    CHECK(report.rejected == 0);

    std::string expected;
    for (const std::string& line : oracle_lines) expected += line;
    CHECK(store.harvest(std::nullopt, std::nullopt) == expected);

    // determinism: two harvests with no intervening ingest are byte-identical
    CHECK(store.harvest(std::nullopt, std::nullopt) == store.harvest(std::nullopt, std::nullopt));

    // idempotence: a second ingest only refreshes timestamps
    const IngestReport again = store.ingest_feed(feed, "UChP");
    CHECK(again.inserted == 0);
    CHECK(again.updated == 200);
    CHECK(store.harvest(std::nullopt, std::nullopt) == expected);
}

TEST_CASE("article and dataset lookups are mutually consistent") {
    std::mt19937 rng(77);
    CorrelationStore store(test_clock());
    std::string feed;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int i = 0; i < 40; ++i) {
        const std::string article = article_token(rng, i % 11);
        const std::string dataset = testgen::valid_identifier(rng);
        pairs.emplace_back(article, dataset);
        feed += article + "\t" + dataset + "\n";
    }
    store.ingest_feed(feed, "UChP");

    for (const auto& [article, dataset] : pairs) {
        const auto datasets = store.lookup_article(article);
        CHECK(std::find(datasets.begin(), datasets.end(), dataset) != datasets.end());
        const auto articles = std::get<std::vector<std::string>>(store.lookup_dataset(dataset));
        CHECK(std::find(articles.begin(), articles.end(), article) != articles.end());
    }

    CHECK(store.lookup_article("unknown-article").empty());
    CHECK(std::get<std::vector<std::string>>(store.lookup_dataset("ADS/MAST#unseen")).empty());
    const auto invalid = store.lookup_dataset("not an id");
    CHECK(std::get_if<ParseError>(&invalid) != nullptr);

    const auto datasets = store.lookup_article(pairs[0].first);
    CHECK(std::is_sorted(datasets.begin(), datasets.end()));
}

TEST_CASE("append log replays and compacts") {
    const std::string path = "build/correlation_test.log";
    std::remove(path.c_str());

    auto clock = test_clock();
    {
        CorrelationStore store(clock);
        REQUIRE(store.attach_log(path));
        store.ingest_feed("art.1\tADS/MAST#a\nart.2\tADS/MAST#b\n", "UChP");
        clock->advance(Seconds(60));
        store.ingest_feed("art.1\tADS/MAST#a\n", "UChP");  // update appends another log line
    }
    {
        CorrelationStore replayed(clock);
        REQUIRE(replayed.attach_log(path));
        CHECK(replayed.size() == 2);
        CHECK(replayed.harvest(std::nullopt, std::nullopt) ==
              "art.1\tADS/MAST#a\n"
              "art.2\tADS/MAST#b\n");
        REQUIRE(replayed.compact());
    }
    {
        CorrelationStore compacted(clock);
        REQUIRE(compacted.attach_log(path));
        CHECK(compacted.size() == 2);
    }
    std::remove(path.c_str());
}

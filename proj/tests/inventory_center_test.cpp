#include <doctest.h>

#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <httplib.h>

#include "dslink/center_service.hpp"
#include "dslink/dataset_id.hpp"
#include "dslink/inventory.hpp"
#include "support/generators.hpp"

using namespace dslink;

namespace {

std::shared_ptr<SimulatedClock> test_clock() {
    return std::make_shared<SimulatedClock>(make_utc_time(2006, 9, 14));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("inventory insert, duplicate rejection and case-sensitive lookup") {
    Inventory inventory(test_clock());
    CHECK(inventory.insert("mast", "hst.07442", "http://mast.example/d/hst.07442"));
    CHECK_FALSE(inventory.insert("mast", "hst.07442", "http://elsewhere"));
    CHECK(inventory.size() == 1);

    REQUIRE(inventory.find("mast", "hst.07442").has_value());
    CHECK(inventory.find("mast", "hst.07442")->current_url == "http://mast.example/d/hst.07442");
    CHECK_FALSE(inventory.find("mast", "HST.07442").has_value());  // private ids are case sensitive
    CHECK_FALSE(inventory.find("cxc", "hst.07442").has_value());
}

TEST_CASE("updates reflect the latest value") {
    Inventory inventory(test_clock());
    inventory.insert("mast", "x", "http://u1");
    CHECK(inventory.update_url("mast", "x", "http://u2"));
    CHECK(inventory.find("mast", "x")->current_url == "http://u2");
    CHECK_FALSE(inventory.update_url("mast", "missing", "http://u3"));
}

TEST_CASE("export lists a facility ordered by private id") {
    Inventory inventory(test_clock());
    inventory.insert("mast", "b", "http://b");
    inventory.insert("mast", "a", "http://a");
    inventory.insert("mast", "c", "http://c");
    inventory.insert("cxc", "z", "http://z");

    const auto records = inventory.export_facility("mast");
    REQUIRE(records.size() == 3);
    CHECK(records[0].private_id == "a");
    CHECK(records[1].private_id == "b");
    CHECK(records[2].private_id == "c");
    CHECK(inventory.export_facility("empty").empty());
}

TEST_CASE("extract and import hand a facility over intact") {
    Inventory source(test_clock());
    Inventory target(test_clock());
    source.insert("iras", "p1", "http://1");
    source.insert("iras", "p2", "http://2");
    source.insert("rxte", "other", "http://3");

    const auto before = source.export_facility("iras");
    const auto moved = source.extract_facility("iras");
    CHECK(moved.size() == 2);
    CHECK(source.export_facility("iras").empty());
    CHECK(source.find("rxte", "other").has_value());

    CHECK(target.import_records(moved) == 2);
    CHECK(target.export_facility("iras") == before);
    CHECK(target.import_records(moved) == 0);  // duplicates rejected
}

TEST_CASE("random lookups agree with the seed map") {
    std::mt19937 rng(123);
    Inventory inventory(test_clock());
    std::map<std::pair<std::string, std::string>, std::string> oracle;
    for (int i = 0; i < 60; ++i) {
        const std::string facility = normalize_facility(testgen::random_facility(rng, 8));
        const std::string private_id = testgen::random_private_id(rng, 24);
        const std::string url = "http://data.example/" + std::to_string(i);
        if (oracle.emplace(std::make_pair(facility, private_id), url).second) {
            inventory.insert(facility, private_id, url);
        }
    }
    for (int i = 0; i < 50; ++i) {
        const auto it = std::next(oracle.begin(), std::uniform_int_distribution<long>(0, oracle.size() - 1)(rng));
        const auto record = inventory.find(it->first.first, it->first.second);
        REQUIRE(record.has_value());
        CHECK(record->current_url == it->second);
    }
    CHECK_FALSE(inventory.find("unseeded", "nothing").has_value());
}

TEST_CASE("inventory tsv round trip and golden file") {
    auto clock = test_clock();
    Inventory inventory(clock);
    inventory.insert("mast", "hst.07442", "http://mast.example/d/hst.07442");
    inventory.insert("sa.cxo", "obs/1234", "http://cxc.example/obs/1234");
    inventory.insert("mast", "fuse-0001", "http://mast.example/d/fuse-0001");

    const std::string tsv = inventory.to_tsv();
    CHECK(tsv == slurp("tests/data/inventory_golden.tsv"));

    Inventory reloaded(clock);
    std::vector<std::string> errors;
    CHECK(reloaded.load_tsv(tsv, &errors) == 3);
    CHECK(errors.empty());
    CHECK(reloaded.to_tsv() == tsv);
}

TEST_CASE("inventory tsv load: later lines win, bad lines reported") {
    Inventory inventory(test_clock());
    std::vector<std::string> errors;
    const std::size_t loaded = inventory.load_tsv(
        "mast\tx\thttp://old\t2006-09-14T00:00:00Z\n"
        "short line\n"
        "mast\ty\thttp://y\tnot-a-time\n"
        "mast\tx\thttp://new\t2006-09-15T00:00:00Z\n",
        &errors);
    CHECK(loaded == 2);
    REQUIRE(errors.size() == 2);
    CHECK(inventory.size() == 1);
    CHECK(inventory.find("mast", "x")->current_url == "http://new");
}

TEST_CASE("data center http surface") {
    auto clock = test_clock();
    CenterConfig config;
    config.center_id = "MAST";
    config.display_name = "Multimission Archive";
    DataCenterService center(config, clock);
    center.inventory().insert("mast", "hst.07442", "http://mast.example/d/hst.07442");
    center.start();

    httplib::Client client("http://127.0.0.1:" + std::to_string(center.port()));
    client.set_follow_location(false);

    SUBCASE("verify endpoint") {
        auto valid = client.Get("/verify?facility=mast&private=hst.07442");
        REQUIRE(valid);
        CHECK(valid->status == 200);
        CHECK(valid->body.find("status=\"valid\"") != std::string::npos);
        CHECK(valid->body.find("url=\"http://mast.example/d/hst.07442\"") != std::string::npos);

        auto notfound = client.Get("/verify?facility=mast&private=nope");
        REQUIRE(notfound);
        CHECK(notfound->status == 200);
        CHECK(notfound->body.find("status=\"notfound\"") != std::string::npos);

        // facility comparison is normalized, private ids are not
        auto case_folded = client.Get("/verify?facility=MAST&private=hst.07442");
        REQUIRE(case_folded);
        CHECK(case_folded->body.find("status=\"valid\"") != std::string::npos);
        auto wrong_case = client.Get("/verify?facility=mast&private=HST.07442");
        REQUIRE(wrong_case);
        CHECK(wrong_case->body.find("status=\"notfound\"") != std::string::npos);

        auto not_served = client.Get("/verify?facility=unknown&private=x");
        REQUIRE(not_served);
        CHECK(not_served->status == 404);

        auto bad_grammar = client.Get("/verify?facility=ba%20d&private=x");
        REQUIRE(bad_grammar);
        CHECK(bad_grammar->status == 400);

        auto missing_param = client.Get("/verify?facility=mast");
        REQUIRE(missing_param);
        CHECK(missing_param->status == 400);
        CHECK(center.verify_requests() == 6);
    }

    SUBCASE("resolve endpoint redirects to the current url") {
        auto found = client.Get("/resolve?facility=mast&private=hst.07442");
        REQUIRE(found);
        CHECK(found->status == 302);
        CHECK(found->get_header_value("Location") == "http://mast.example/d/hst.07442");

        center.inventory().update_url("mast", "hst.07442", "http://mast.example/v2/hst.07442");
        auto updated = client.Get("/resolve?facility=mast&private=hst.07442");
        REQUIRE(updated);
        CHECK(updated->get_header_value("Location") == "http://mast.example/v2/hst.07442");

        auto missing = client.Get("/resolve?facility=mast&private=gone");
        REQUIRE(missing);
        CHECK(missing->status == 404);
        CHECK(center.resolve_requests() == 3);
    }

    SUBCASE("profile endpoint round trips through parse_profile") {
        auto res = client.Get(std::string(kProfileWellKnownPath));
        REQUIRE(res);
        CHECK(res->status == 200);
        const ProfileResult parsed = parse_profile(res->body);
        REQUIRE(get_profile(parsed) != nullptr);
        CHECK(*get_profile(parsed) == center.profile());
        CHECK(get_profile(parsed)->facilities == std::set<std::string>{"mast"});
    }

    SUBCASE("profile follows the inventory") {
        center.inventory().insert("iras", "scan-1", "http://x/1");
        CHECK(center.profile().facilities == std::set<std::string>{"iras", "mast"});
        center.add_extra_facility("EUVE");
        CHECK(center.profile().facilities.contains("euve"));
        center.remove_extra_facility("euve");
        CHECK_FALSE(center.profile().facilities.contains("euve"));
    }

    SUBCASE("stop and revive keep the port") {
        const int port = center.port();
        center.stop();
        CHECK_FALSE(center.running());
        auto refused = client.Get("/verify?facility=mast&private=hst.07442");
        CHECK_FALSE(refused);

        center.start();
        CHECK(center.running());
        CHECK(center.port() == port);
        auto back = client.Get("/verify?facility=mast&private=hst.07442");
        REQUIRE(back);
        CHECK(back->status == 200);
    }

    center.stop();
}

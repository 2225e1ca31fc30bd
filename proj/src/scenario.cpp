#include "dslink/scenario.hpp"

#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include <httplib.h>

#include "dslink/dataset_id.hpp"
#include "dslink/url.hpp"
#include "dslink/xml.hpp"

namespace dslink {
namespace {

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size() || line[i] == '#') break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        out.emplace_back(line.substr(start, i - start));
    }
    return out;
}

bool parse_size(const std::string& token, std::size_t& out) {
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc{} && ptr == token.data() + token.size();
}

bool parse_duration(const std::string& token, Seconds& out) {
    if (token.size() < 2) return false;
    std::size_t value = 0;
    const char unit = token.back();
    if (!parse_size(token.substr(0, token.size() - 1), value)) return false;
    switch (unit) {
        case 's': out = Seconds(value); return true;
        case 'm': out = Seconds(value * 60); return true;
        case 'h': out = Seconds(value * 3600); return true;
        case 'd': out = Seconds(value * 86400); return true;
        default: return false;
    }
}

const char* kStatusTokens[] = {"redirect", "valid", "invalid_syntax", "unknown_facility", "notfound",
                               "center_unavailable"};

bool is_status_token(const std::string& token) {
    for (const char* known : kStatusTokens) {
        if (token == known) return true;
    }
    return false;
}

struct HttpAnswer {
    bool ok = false;          // transport-level
    int status = 0;
    std::string body;
    std::string location;
    bool stale_header = false;
};

HttpAnswer http_get(const std::string& base_url, const std::string& path_and_query) {
    HttpAnswer answer;
    const auto parts = url::parse_http_url(base_url);
    if (!parts) return answer;
    httplib::Client client(parts->origin());
    client.set_follow_location(false);
    const httplib::Result res = client.Get(path_and_query);
    if (!res) return answer;
    answer.ok = true;
    answer.status = res->status;
    answer.body = res->body;
    answer.location = res->get_header_value("Location");
    answer.stale_header = res->get_header_value("X-Resolver-Stale") == "true";
    return answer;
}

std::string reason_token(const std::string& body) {
    const xml::XmlResult parsed = xml::parse(body);
    const xml::Element* root = xml::get_element(parsed);
    if (root == nullptr) return "unknown";
    const std::string* reason = root->attribute("reason");
    if (reason == nullptr) return "unknown";
    const auto colon = reason->find(':');
    return reason->substr(0, colon);
}

class Runner {
public:
    explicit Runner(const Scenario& scenario) : scenario_(scenario) {}

    ScenarioReport run() {
        report_.name = scenario_.name;
        clock_ = std::make_shared<SimulatedClock>(scenario_epoch());

        FederationConfig config;
        config.centers = scenario_.centers;
        federation_ = std::make_unique<Federation>(config, clock_);

        // Seeds go in before start so the very first profile fetch already
        // lists every seeded facility.
        std::map<std::string, std::vector<ScenarioSeed>> seeds_by_center;
        for (const ScenarioSeed& seed : scenario_.seeds) seeds_by_center[seed.center_id].push_back(seed);

        federation_->start();
        for (const auto& [center_id, seeds] : seeds_by_center) {
            Inventory& inventory = federation_->center(center_id).inventory();
            for (const ScenarioSeed& seed : seeds) {
                inventory.insert(normalize_facility(seed.facility), seed.private_id, seed.url);
            }
        }
        federation_->refresh();  // pick up seeded facilities

        int index = 0;
        for (const ScenarioEvent& event : scenario_.events) {
            ++index;
            run_event(index, event);
        }
        federation_->stop();

        std::ostringstream summary;
        summary << "checks: " << (report_.checks - report_.failures) << "/" << report_.checks << " passed";
        report_.lines.push_back(summary.str());
        return std::move(report_);
    }

private:
    const Scenario& scenario_;
    ScenarioReport report_;
    std::shared_ptr<SimulatedClock> clock_;
    std::unique_ptr<Federation> federation_;

    void emit(int index, const std::string& text) {
        std::ostringstream line;
        line.width(3);
        line.fill('0');
        line << index;
        report_.lines.push_back(line.str() + " " + text);
    }

    std::string mask_resolver(const std::string& link) const {
        const std::string base = federation_->resolver_base_url();
        if (link.rfind(base, 0) == 0) return "<resolver>" + link.substr(base.size());
        return link;
    }

    // Appends the verdict for one expectation-carrying event.
    std::string check(bool pass, const std::string& expected) {
        ++report_.checks;
        if (pass) return " [PASS]";
        ++report_.failures;
        return " [FAIL expected " + expected + "]";
    }

    void run_event(int index, const ScenarioEvent& event) {
        using Kind = ScenarioEvent::Kind;
        switch (event.kind) {
            case Kind::Refresh: {
                const RefreshReport report = federation_->refresh();
                std::ostringstream line;
                line << "refresh -> version=" << report.version << " live=" << report.centers_live
                     << " stale=" << report.centers_stale << " dropped=" << report.centers_dropped
                     << " conflicts=" << report.conflicts.size();
                emit(index, line.str());
                return;
            }
            case Kind::Advance: {
                clock_->advance(event.advance_by);
                emit(index, "advance " + std::to_string(event.advance_by.count()) + "s -> now=" +
                                format_rfc3339(clock_->now()));
                return;
            }
            case Kind::Update: {
                const bool updated = federation_->center(event.arg0).inventory().update_url(
                    normalize_facility(event.arg1), event.arg2, event.arg3);
                std::string text = "update " + event.arg0 + " " + event.arg1 + " " + event.arg2 + " -> " +
                                   (updated ? "ok" : "no-such-record");
                if (!updated) {
                    ++report_.checks;
                    ++report_.failures;
                    text += " [FAIL]";
                }
                emit(index, text);
                return;
            }
            case Kind::Migrate: {
                const std::size_t moved = federation_->migrate_facility(normalize_facility(event.arg0),
                                                                        event.arg1, event.arg2);
                emit(index, "migrate " + event.arg0 + " " + event.arg1 + " -> " + event.arg2 +
                                " moved=" + std::to_string(moved));
                return;
            }
            case Kind::Kill: {
                federation_->center(event.arg0).stop();
                emit(index, "kill " + event.arg0 + " -> down");
                return;
            }
            case Kind::Revive: {
                federation_->center(event.arg0).start();
                emit(index, "revive " + event.arg0 + " -> up");
                return;
            }
            case Kind::Invalidate: {
                federation_->resolver().invalidate(event.arg0);
                emit(index, "invalidate " + event.arg0 + " -> ok");
                return;
            }
            case Kind::Resolve: {
                run_resolve(index, event);
                return;
            }
            case Kind::Verify: {
                run_verify(index, event);
                return;
            }
            case Kind::Ingest: {
                run_ingest(index, event);
                return;
            }
            case Kind::Harvest: {
                run_harvest(index, event);
                return;
            }
        }
    }

    void run_resolve(int index, const ScenarioEvent& event) {
        const HttpAnswer answer =
            http_get(federation_->resolver_base_url(), "/link?id=" + url::percent_encode(event.arg0));
        std::string status = "transport_error";
        std::string target;
        bool stale = false;
        if (answer.ok) {
            if (answer.status == 302) {
                status = "redirect";
                target = answer.location;
                stale = answer.stale_header;
            } else if (answer.status == 400) {
                status = "invalid_syntax";
            } else if (answer.status == 404) {
                status = reason_token(answer.body);
            } else if (answer.status == 503) {
                status = "center_unavailable";
            } else {
                status = "http_" + std::to_string(answer.status);
            }
        }

        std::string text = "resolve " + event.arg0 + " -> " + status;
        if (!target.empty()) text += " " + target;
        if (stale) text += " (stale)";

        if (event.expect_status || event.expect_target || event.expect_stale) {
            bool pass = true;
            std::string expected;
            if (event.expect_status) {
                pass = pass && status == *event.expect_status;
                expected += *event.expect_status;
            }
            if (event.expect_target) {
                pass = pass && target == *event.expect_target;
                expected += expected.empty() ? "target " + *event.expect_target : " target " + *event.expect_target;
            }
            if (event.expect_stale) {
                pass = pass && stale == *event.expect_stale;
                expected += expected.empty() ? "" : " ";
                expected += *event.expect_stale ? "stale" : "fresh";
            }
            text += check(pass, expected);
        }
        emit(index, text);
    }

    void run_verify(int index, const ScenarioEvent& event) {
        const HttpAnswer answer =
            http_get(federation_->verifier_base_url(), "/verify?id=" + url::percent_encode(event.arg0));
        std::string status = "transport_error";
        std::string link;
        if (answer.ok && answer.status == 200) {
            const xml::XmlResult parsed = xml::parse(answer.body);
            const xml::Element* root = xml::get_element(parsed);
            if (root != nullptr && root->name == "result") {
                if (const std::string* s = root->attribute("status")) status = *s;
                if (const std::string* l = root->attribute("link")) link = mask_resolver(*l);
            }
        }

        std::string text = "verify " + event.arg0 + " -> " + status;
        if (!link.empty()) text += " link=" + link;
        if (event.expect_status) {
            text += check(status == *event.expect_status, *event.expect_status);
        }
        emit(index, text);
    }

    void run_ingest(int index, const ScenarioEvent& event) {
        std::string feed;
        for (const auto& [article, dataset] : event.pairs) {
            feed += article + "\t" + dataset + "\n";
        }
        const auto parts = url::parse_http_url(federation_->correlation_base_url());
        httplib::Client client(parts->origin());
        const httplib::Result res =
            client.Put("/feed?source=" + url::percent_encode(event.arg0), feed, "text/plain; charset=utf-8");

        std::size_t inserted = 0, updated = 0, rejected = 0;
        std::string status = "transport_error";
        if (res) {
            status = "http_" + std::to_string(res->status);
            if (res->status == 200) {
                const xml::XmlResult parsed = xml::parse(res->body);
                const xml::Element* root = xml::get_element(parsed);
                if (root != nullptr && root->name == "ingest") {
                    status = "ok";
                    const auto read_count = [root](const char* name, std::size_t& out) {
                        if (const std::string* value = root->attribute(name)) parse_size(*value, out);
                    };
                    read_count("inserted", inserted);
                    read_count("updated", updated);
                    read_count("rejected", rejected);
                }
            }
        }

        std::ostringstream text;
        text << "ingest " << event.arg0 << " " << event.pairs.size() << " pairs -> " << status
             << " inserted=" << inserted << " updated=" << updated << " rejected=" << rejected;
        std::string line = text.str();
        if (event.expect_inserted || event.expect_updated || event.expect_rejected) {
            const bool pass = (!event.expect_inserted || inserted == *event.expect_inserted) &&
                              (!event.expect_updated || updated == *event.expect_updated) &&
                              (!event.expect_rejected || rejected == *event.expect_rejected) &&
                              status == "ok";
            std::ostringstream expected;
            expected << "inserted=" << (event.expect_inserted ? std::to_string(*event.expect_inserted) : "*")
                     << " updated=" << (event.expect_updated ? std::to_string(*event.expect_updated) : "*")
                     << " rejected=" << (event.expect_rejected ? std::to_string(*event.expect_rejected) : "*");
            line += check(pass, expected.str());
        }
        emit(index, line);
    }

    void run_harvest(int index, const ScenarioEvent& event) {
        std::string query;
        if (!event.arg0.empty()) query += "facility=" + url::percent_encode(normalize_facility(event.arg0));
        if (!event.arg1.empty()) {
            if (!query.empty()) query += "&";
            query += "since=" + url::percent_encode(event.arg1);
        }
        const HttpAnswer answer = http_get(federation_->correlation_base_url(),
                                           query.empty() ? "/correlations" : "/correlations?" + query);
        std::size_t lines = 0;
        for (char c : answer.body) {
            if (c == '\n') ++lines;
        }
        std::string text = "harvest";
        if (!event.arg0.empty()) text += " facility=" + event.arg0;
        if (!event.arg1.empty()) text += " since=" + event.arg1;
        text += " -> " + std::to_string(lines) + " lines";
        if (event.expect_lines) {
            text += check(answer.ok && answer.status == 200 && lines == *event.expect_lines,
                          std::to_string(*event.expect_lines) + " lines");
        }
        emit(index, text);
    }
};

}  // namespace

TimePoint scenario_epoch() {
    return make_utc_time(2006, 9, 14, 0, 0, 0);
}

ScenarioParseResult parse_scenario(std::string_view text) {
    Scenario scenario;
    std::set<std::string> center_ids;
    bool events_started = false;

    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        if (end == text.size() && raw.empty()) break;

        const std::vector<std::string> tokens = tokenize(raw);
        if (tokens.empty()) continue;
        const std::string& verb = tokens[0];

        const auto require_center = [&](const std::string& id) -> bool { return center_ids.contains(id); };

        if (verb == "name") {
            if (tokens.size() != 2) return ScenarioError{line_no, "name takes one token"};
            scenario.name = tokens[1];
            continue;
        }
        if (verb == "center") {
            if (events_started) return ScenarioError{line_no, "declarations must precede events"};
            if (tokens.size() < 2) return ScenarioError{line_no, "center takes an id"};
            const std::string& id = tokens[1];
            if (!is_valid_facility(id)) return ScenarioError{line_no, "bad center id: " + id};
            if (!center_ids.insert(id).second) return ScenarioError{line_no, "duplicate center: " + id};
            CenterConfig config;
            config.center_id = id;
            config.display_name = id;
            for (std::size_t i = 2; i + 1 < tokens.size(); i += 2) {
                if (tokens[i] != "facility") return ScenarioError{line_no, "expected 'facility <token>'"};
                if (!is_valid_facility(tokens[i + 1])) return ScenarioError{line_no, "bad facility token"};
                config.extra_facilities.push_back(tokens[i + 1]);
            }
            if ((tokens.size() - 2) % 2 != 0) return ScenarioError{line_no, "dangling token after center"};
            scenario.centers.push_back(std::move(config));
            continue;
        }
        if (verb == "seed") {
            if (events_started) return ScenarioError{line_no, "declarations must precede events"};
            if (tokens.size() != 5) return ScenarioError{line_no, "seed takes center facility private url"};
            if (!require_center(tokens[1])) return ScenarioError{line_no, "unknown center: " + tokens[1]};
            if (!is_valid_facility(tokens[2])) return ScenarioError{line_no, "bad facility token"};
            scenario.seeds.push_back({tokens[1], tokens[2], tokens[3], tokens[4]});
            continue;
        }

        // Everything below is an event.
        events_started = true;
        ScenarioEvent event;
        event.source_line = line_no;
        using Kind = ScenarioEvent::Kind;

        if (verb == "refresh") {
            if (tokens.size() != 1) return ScenarioError{line_no, "refresh takes no arguments"};
            event.kind = Kind::Refresh;
        } else if (verb == "advance") {
            if (tokens.size() != 2 || !parse_duration(tokens[1], event.advance_by)) {
                return ScenarioError{line_no, "advance takes <N>{s|m|h|d}"};
            }
            event.kind = Kind::Advance;
        } else if (verb == "update") {
            if (tokens.size() != 5) return ScenarioError{line_no, "update takes center facility private url"};
            if (!require_center(tokens[1])) return ScenarioError{line_no, "unknown center: " + tokens[1]};
            event.kind = Kind::Update;
            event.arg0 = tokens[1];
            event.arg1 = tokens[2];
            event.arg2 = tokens[3];
            event.arg3 = tokens[4];
        } else if (verb == "migrate") {
            if (tokens.size() != 4) return ScenarioError{line_no, "migrate takes facility from to"};
            if (!require_center(tokens[2])) return ScenarioError{line_no, "unknown center: " + tokens[2]};
            if (!require_center(tokens[3])) return ScenarioError{line_no, "unknown center: " + tokens[3]};
            event.kind = Kind::Migrate;
            event.arg0 = tokens[1];
            event.arg1 = tokens[2];
            event.arg2 = tokens[3];
        } else if (verb == "kill" || verb == "revive") {
            if (tokens.size() != 2) return ScenarioError{line_no, verb + " takes a center id"};
            if (!require_center(tokens[1])) return ScenarioError{line_no, "unknown center: " + tokens[1]};
            event.kind = verb == "kill" ? Kind::Kill : Kind::Revive;
            event.arg0 = tokens[1];
        } else if (verb == "invalidate") {
            if (tokens.size() != 2) return ScenarioError{line_no, "invalidate takes an identifier"};
            event.kind = Kind::Invalidate;
            event.arg0 = tokens[1];
        } else if (verb == "resolve" || verb == "verify") {
            if (tokens.size() < 2) return ScenarioError{line_no, verb + " takes an identifier"};
            event.kind = verb == "resolve" ? Kind::Resolve : Kind::Verify;
            event.arg0 = tokens[1];
            std::size_t i = 2;
            while (i < tokens.size()) {
                if (tokens[i] == "expect" && i + 1 < tokens.size()) {
                    if (!is_status_token(tokens[i + 1])) {
                        return ScenarioError{line_no, "unknown status: " + tokens[i + 1]};
                    }
                    event.expect_status = tokens[i + 1];
                    i += 2;
                } else if (tokens[i] == "target" && i + 1 < tokens.size() && event.kind == Kind::Resolve) {
                    event.expect_target = tokens[i + 1];
                    i += 2;
                } else if (tokens[i] == "stale" && i + 1 < tokens.size() && event.kind == Kind::Resolve) {
                    event.expect_stale = tokens[i + 1] == "true";
                    i += 2;
                } else {
                    return ScenarioError{line_no, "unexpected token: " + tokens[i]};
                }
            }
        } else if (verb == "ingest") {
            if (tokens.size() < 3) return ScenarioError{line_no, "ingest takes source and pairs"};
            event.kind = Kind::Ingest;
            event.arg0 = tokens[1];
            std::string_view payload = tokens[2];
            while (!payload.empty()) {
                auto comma = payload.find(',');
                std::string_view pair = payload.substr(0, comma);
                const auto eq = pair.find('=');
                if (eq == std::string_view::npos) return ScenarioError{line_no, "ingest pair needs article=dataset"};
                event.pairs.emplace_back(std::string(pair.substr(0, eq)), std::string(pair.substr(eq + 1)));
                if (comma == std::string_view::npos) break;
                payload = payload.substr(comma + 1);
            }
            if (tokens.size() > 3) {
                if (tokens.size() != 7 || tokens[3] != "expect") {
                    return ScenarioError{line_no, "ingest expectation: expect <ins> <upd> <rej>"};
                }
                std::size_t inserted, updated, rejected;
                if (!parse_size(tokens[4], inserted) || !parse_size(tokens[5], updated) ||
                    !parse_size(tokens[6], rejected)) {
                    return ScenarioError{line_no, "ingest expectation counts must be numbers"};
                }
                event.expect_inserted = inserted;
                event.expect_updated = updated;
                event.expect_rejected = rejected;
            }
        } else if (verb == "harvest") {
            event.kind = Kind::Harvest;
            std::size_t i = 1;
            while (i < tokens.size()) {
                if (tokens[i] == "facility" && i + 1 < tokens.size()) {
                    event.arg0 = tokens[i + 1];
                    i += 2;
                } else if (tokens[i] == "since" && i + 1 < tokens.size()) {
                    if (!parse_rfc3339(tokens[i + 1])) return ScenarioError{line_no, "bad since timestamp"};
                    event.arg1 = tokens[i + 1];
                    i += 2;
                } else if (tokens[i] == "expect_lines" && i + 1 < tokens.size()) {
                    std::size_t lines;
                    if (!parse_size(tokens[i + 1], lines)) return ScenarioError{line_no, "expect_lines needs a number"};
                    event.expect_lines = lines;
                    i += 2;
                } else {
                    return ScenarioError{line_no, "unexpected token: " + tokens[i]};
                }
            }
        } else {
            return ScenarioError{line_no, "unknown statement: " + verb};
        }
        scenario.events.push_back(std::move(event));
    }

    if (scenario.centers.empty()) return ScenarioError{0, "scenario declares no centers"};
    return scenario;
}

std::string ScenarioReport::to_text() const {
    std::string out = "scenario: " + name + "\n";
    for (const std::string& line : lines) {
        out += "  " + line + "\n";
    }
    out += passed() ? "result: PASS\n" : "result: FAIL\n";
    return out;
}

ScenarioReport run_scenario(const Scenario& scenario) {
    return Runner(scenario).run();
}

}  // namespace dslink

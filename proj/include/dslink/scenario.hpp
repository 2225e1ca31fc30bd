// Scripted federation scenarios: seeding, URL updates, facility migrations
// and outages, with expectations checked against the live services over
// their HTTP interfaces.
//
// File format, one statement per line ('#' starts a comment):
//
//   name <token>
//   center <ID> [facility <token>]...
//   seed <ID> <facility> <private-id> <url>
//   refresh
//   advance <N>{s|m|h|d}
//   update <ID> <facility> <private-id> <url>
//   migrate <facility> <fromID> <toID>
//   kill <ID> | revive <ID>
//   resolve <identifier> [expect <status>] [target <url>] [stale true|false]
//   verify <identifier> [expect <status>]
//   invalidate <identifier>
//   ingest <source> <article>=<dataset>[,<article>=<dataset>...]
//          [expect <inserted> <updated> <rejected>]
//   harvest [facility <token>] [since <rfc3339>] [expect_lines <N>]
//
// Declarations (name/center/seed) must precede events.  Reports are
// deterministic for a given scenario: the simulated clock starts at a fixed
// epoch and volatile service URLs are masked.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dslink/clock.hpp"
#include "dslink/federation.hpp"

namespace dslink {

struct ScenarioEvent {
    enum class Kind {
        Refresh,
        Advance,
        Update,
        Migrate,
        Kill,
        Revive,
        Resolve,
        Verify,
        Invalidate,
        Ingest,
        Harvest,
    };

    Kind kind{};
    int source_line = 0;
    // Positional arguments; meaning depends on kind (see format above).
    std::string arg0, arg1, arg2, arg3;
    std::vector<std::pair<std::string, std::string>> pairs;  // ingest payload
    Seconds advance_by{0};

    std::optional<std::string> expect_status;
    std::optional<std::string> expect_target;
    std::optional<bool> expect_stale;
    std::optional<std::size_t> expect_inserted;
    std::optional<std::size_t> expect_updated;
    std::optional<std::size_t> expect_rejected;
    std::optional<std::size_t> expect_lines;
};

struct ScenarioSeed {
    std::string center_id;
    std::string facility;
    std::string private_id;
    std::string url;
};

struct Scenario {
    std::string name = "scenario";
    std::vector<CenterConfig> centers;
    std::vector<ScenarioSeed> seeds;
    std::vector<ScenarioEvent> events;
};

struct ScenarioError {
    int line = 0;
    std::string message;
};

using ScenarioParseResult = std::variant<Scenario, ScenarioError>;

ScenarioParseResult parse_scenario(std::string_view text);

struct ScenarioReport {
    std::string name;
    std::vector<std::string> lines;  // one per event, plus a trailing summary
    std::size_t checks = 0;
    std::size_t failures = 0;

    bool passed() const { return failures == 0; }
    std::string to_text() const;
};

// The scenario clock starts at this fixed instant.
TimePoint scenario_epoch();

ScenarioReport run_scenario(const Scenario& scenario);

}  // namespace dslink

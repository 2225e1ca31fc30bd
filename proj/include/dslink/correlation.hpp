// Article <-> dataset correlation store: ingests publisher feeds and serves
// the pairs back for harvesting by data centers.
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dslink/clock.hpp"
#include "dslink/dataset_id.hpp"

namespace dslink {

struct Correlation {
    std::string article_id;  // opaque publisher token
    std::string dataset_id;  // canonical identifier string
    std::string source;      // publisher code, first-seen wins
    TimePoint recorded_at{};
};

struct IngestReject {
    std::size_t line = 0;  // 1-based
    std::string reason;
};

struct IngestReport {
    bool feed_unreadable = false;  // non-UTF-8 input; nothing was ingested
    std::size_t inserted = 0;
    std::size_t updated = 0;
    std::size_t rejected = 0;
    std::vector<IngestReject> rejects;
};

// Feed line format, both directions: article_id TAB dataset_id.
class CorrelationStore {
public:
    explicit CorrelationStore(std::shared_ptr<const Clock> clock);

    // Upserts valid lines; malformed lines are rejected individually and
    // never abort the feed.  Re-ingesting an existing pair refreshes
    // recorded_at only.
    IngestReport ingest_feed(std::string_view feed, std::string_view source);

    // Emits the line format filtered by normalized dataset facility and
    // recorded_at >= since, ordered by (article_id, dataset_id).
    std::string harvest(std::optional<std::string> facility, std::optional<TimePoint> since) const;

    // Sorted dataset ids correlated with the article; empty when unknown.
    std::vector<std::string> lookup_article(const std::string& article_id) const;

    // Sorted article ids citing the dataset; dataset must be syntactically valid.
    std::variant<std::vector<std::string>, ParseError> lookup_dataset(const std::string& dataset_id) const;

    std::size_t size() const;

    // Desk-scale persistence: an append log replayed at load time, with
    // compaction to a sorted snapshot.  Log line: source TAB article TAB
    // dataset TAB recorded_at.
    bool attach_log(const std::string& path, std::string* error = nullptr);
    bool compact(std::string* error = nullptr);

private:
    struct Meta {
        std::string source;
        TimePoint recorded_at;
    };
    using PairMap = std::map<std::pair<std::string, std::string>, Meta>;

    std::shared_ptr<const PairMap> view() const;
    void append_log_line(const std::string& article_id, const std::string& dataset_id, const Meta& meta);

    std::shared_ptr<const Clock> clock_;

    mutable std::mutex mu_;  // serializes writers; readers copy the snapshot pointer
    std::shared_ptr<const PairMap> snapshot_;
    std::string log_path_;
};

bool is_valid_utf8(std::string_view text);

}  // namespace dslink

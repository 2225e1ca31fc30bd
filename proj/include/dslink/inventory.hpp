// A data center's knowledge of its datasets.  Records are never deleted:
// published identifiers must stay recognizable, so the only mutations are
// URL updates and whole-facility migration handoffs.
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dslink/clock.hpp"

namespace dslink {

struct InventoryRecord {
    std::string facility_id;  // normalized
    std::string private_id;   // case-sensitive, compared verbatim
    std::string current_url;
    TimePoint created_at{};

    bool operator==(const InventoryRecord& other) const {
        return facility_id == other.facility_id && private_id == other.private_id &&
               current_url == other.current_url;
    }
};

enum class LocalStatus { Valid, NotFound };

struct LocalVerdict {
    LocalStatus status = LocalStatus::NotFound;
    std::string current_url;  // set exactly when Valid
};

class Inventory {
public:
    explicit Inventory(std::shared_ptr<const Clock> clock) : clock_(std::move(clock)) {}

    // Rejects duplicate (facility, private_id) pairs.
    bool insert(std::string_view facility_id, std::string_view private_id, std::string_view current_url);

    // Latest-value update; false when the record does not exist.
    bool update_url(std::string_view facility_id, std::string_view private_id, std::string_view new_url);

    std::optional<InventoryRecord> find(std::string_view facility_id, std::string_view private_id) const;

    // Complete listing for one facility, ordered by private_id.
    std::vector<InventoryRecord> export_facility(std::string_view facility_id) const;

    // Migration handoff: atomically removes and returns a facility's records
    // so another center can import them.
    std::vector<InventoryRecord> extract_facility(std::string_view facility_id);

    // Migration intake; duplicates against existing records are rejected and
    // returned count reflects records actually added.
    std::size_t import_records(const std::vector<InventoryRecord>& records);

    // Facilities with at least one record.
    std::set<std::string> facilities() const;

    std::size_t size() const;

    // Tab-separated table: facility, private_id, URL, RFC 3339 created_at.
    // Later lines win, so appended updates replay correctly.
    std::string to_tsv() const;
    std::size_t load_tsv(std::string_view text, std::vector<std::string>* errors = nullptr);

private:
    using Key = std::pair<std::string, std::string>;

    std::shared_ptr<const Clock> clock_;
    mutable std::mutex mu_;
    std::map<Key, InventoryRecord> records_;
};

}  // namespace dslink

// Profile registry: fetches data center profiles on a schedule and answers
// "which center currently serves facility F?".  Readers work against an
// immutable routing table snapshot; refresh builds a replacement table and
// publishes it atomically.
#pragma once

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "dslink/clock.hpp"
#include "dslink/profile.hpp"

namespace dslink {

struct CenterSource {
    std::string center_id;
    std::string base_url;  // profile served at base_url + kProfileWellKnownPath
};

struct RoutingTable {
    std::map<std::string, std::string> facility_to_center;  // normalized facility -> center_id
    std::map<std::string, DataCenterProfile> centers;
    std::uint64_t version = 0;

    const DataCenterProfile* find(std::string_view normalized_facility) const;
};

struct FetchResult {
    bool transport_ok = false;
    int http_status = 0;
    std::string body;
    std::string error;  // transport error description
};

using ProfileFetcher = std::function<FetchResult(const std::string& url)>;

// HTTP GET with the given timeout; the registry default.
ProfileFetcher make_http_fetcher(int timeout_ms);

struct RefreshIssue {
    std::string center_id;
    std::string message;
};

struct RefreshReport {
    std::uint64_t version = 0;
    std::size_t centers_live = 0;    // fetched this cycle
    std::size_t centers_stale = 0;   // carried over from a previous cycle
    std::size_t centers_dropped = 0; // past the staleness horizon
    std::vector<RefreshIssue> errors;
    std::vector<std::string> conflicts;  // facility tokens contested by two centers
};

struct RegistryConfig {
    Seconds refresh_interval{6 * 3600};
    Seconds staleness_horizon{7 * 24 * 3600};
    int fetch_timeout_ms = 5000;
};

class ProfileRegistry {
public:
    ProfileRegistry(std::vector<CenterSource> sources, RegistryConfig config,
                    std::shared_ptr<const Clock> clock, ProfileFetcher fetcher = nullptr);
    ~ProfileRegistry();

    ProfileRegistry(const ProfileRegistry&) = delete;
    ProfileRegistry& operator=(const ProfileRegistry&) = delete;

    // Fetches every profile, builds the replacement table and publishes it.
    // Per-source failures are recorded in the report, never thrown.
    RefreshReport refresh();

    std::shared_ptr<const RoutingTable> snapshot() const;

    // Lookup on the current snapshot.  Expects a normalized facility token.
    std::optional<DataCenterProfile> route(std::string_view normalized_facility) const;

    // Wall-clock periodic refresh for service deployments.  The harness
    // drives refresh() explicitly instead.
    void start_auto_refresh();
    void stop_auto_refresh();

    const RegistryConfig& config() const { return config_; }

private:
    std::vector<CenterSource> sources_;
    RegistryConfig config_;
    std::shared_ptr<const Clock> clock_;
    ProfileFetcher fetcher_;

    mutable std::mutex table_mu_;
    std::shared_ptr<const RoutingTable> table_;

    std::mutex refresh_mu_;  // serializes refresh cycles

    std::thread refresher_;
    std::mutex stop_mu_;
    std::condition_variable stop_cv_;
    bool stopping_ = false;
};

}  // namespace dslink

#include "dslink/registry.hpp"

#include <algorithm>
#include <utility>

#include <httplib.h>

#include "dslink/url.hpp"

namespace dslink {

const DataCenterProfile* RoutingTable::find(std::string_view normalized_facility) const {
    const auto owner = facility_to_center.find(std::string(normalized_facility));
    if (owner == facility_to_center.end()) return nullptr;
    const auto center = centers.find(owner->second);
    return center == centers.end() ? nullptr : &center->second;
}

ProfileFetcher make_http_fetcher(int timeout_ms) {
    return [timeout_ms](const std::string& target) -> FetchResult {
        const auto parts = url::parse_http_url(target);
        if (!parts) return {false, 0, "", "not an absolute http(s) URL: " + target};
        httplib::Client client(parts->origin());
        client.set_connection_timeout(std::chrono::milliseconds(timeout_ms));
        client.set_read_timeout(std::chrono::milliseconds(timeout_ms));
        std::string path = parts->path;
        if (!parts->query.empty()) path += "?" + parts->query;
        auto res = client.Get(path);
        if (!res) return {false, 0, "", httplib::to_string(res.error())};
        return {true, res->status, res->body, ""};
    };
}

ProfileRegistry::ProfileRegistry(std::vector<CenterSource> sources, RegistryConfig config,
                                 std::shared_ptr<const Clock> clock, ProfileFetcher fetcher)
    : sources_(std::move(sources)),
      config_(config),
      clock_(std::move(clock)),
      fetcher_(fetcher ? std::move(fetcher) : make_http_fetcher(config.fetch_timeout_ms)),
      table_(std::make_shared<RoutingTable>()) {}

ProfileRegistry::~ProfileRegistry() {
    stop_auto_refresh();
}

RefreshReport ProfileRegistry::refresh() {
    std::lock_guard refresh_lock(refresh_mu_);

    const auto previous = snapshot();
    const TimePoint now = clock_->now();
    RefreshReport report;

    auto next = std::make_shared<RoutingTable>();
    next->version = previous->version + 1;

    for (const CenterSource& source : sources_) {
        const std::string profile_url = source.base_url + std::string(kProfileWellKnownPath);
        const FetchResult fetched = fetcher_(profile_url);

        std::string failure;
        if (!fetched.transport_ok) {
            failure = "fetch failed: " + fetched.error;
        } else if (fetched.http_status != 200) {
            failure = "fetch failed: HTTP " + std::to_string(fetched.http_status);
        } else {
            const ProfileResult parsed = parse_profile(fetched.body);
            if (const ProfileError* err = get_profile_error(parsed)) {
                failure = "profile rejected: " + describe(*err);
            } else {
                DataCenterProfile profile = *get_profile(parsed);
                if (profile.center_id != source.center_id) {
                    failure = "profile id \"" + profile.center_id + "\" does not match configured center \"" +
                              source.center_id + "\"";
                } else {
                    profile.fetched_at = now;
                    next->centers[source.center_id] = std::move(profile);
                    ++report.centers_live;
                    continue;
                }
            }
        }

        report.errors.push_back({source.center_id, failure});
        // Stale tolerance: keep the previous profile until the horizon.
        const auto prev = previous->centers.find(source.center_id);
        if (prev != previous->centers.end()) {
            if (now - prev->second.fetched_at < config_.staleness_horizon) {
                next->centers[source.center_id] = prev->second;
                ++report.centers_stale;
            } else {
                ++report.centers_dropped;
            }
        }
    }

    // Facility ownership.  On contested facilities the most recently fetched
    // profile wins; exact ties go to the lexicographically smaller center id
    // so a refresh cycle is deterministic.
    for (const auto& [center_id, profile] : next->centers) {
        for (const std::string& facility : profile.facilities) {
            const auto [it, inserted] = next->facility_to_center.emplace(facility, center_id);
            if (inserted) continue;
            report.conflicts.push_back(facility);
            const DataCenterProfile& holder = next->centers.at(it->second);
            if (profile.fetched_at > holder.fetched_at) it->second = center_id;
        }
    }

    report.version = next->version;
    {
        std::lock_guard table_lock(table_mu_);
        table_ = std::move(next);
    }
    return report;
}

std::shared_ptr<const RoutingTable> ProfileRegistry::snapshot() const {
    std::lock_guard lock(table_mu_);
    return table_;
}

std::optional<DataCenterProfile> ProfileRegistry::route(std::string_view normalized_facility) const {
    const auto table = snapshot();
    const DataCenterProfile* profile = table->find(normalized_facility);
    if (profile == nullptr) return std::nullopt;
    return *profile;
}

void ProfileRegistry::start_auto_refresh() {
    stop_auto_refresh();
    {
        std::lock_guard lock(stop_mu_);
        stopping_ = false;
    }
    refresher_ = std::thread([this] {
        for (;;) {
            {
                std::unique_lock lock(stop_mu_);
                if (stop_cv_.wait_for(lock, config_.refresh_interval, [this] { return stopping_; })) {
                    return;
                }
            }
            refresh();
        }
    });
}

void ProfileRegistry::stop_auto_refresh() {
    {
        std::lock_guard lock(stop_mu_);
        stopping_ = true;
    }
    stop_cv_.notify_all();
    if (refresher_.joinable()) refresher_.join();
}

}  // namespace dslink

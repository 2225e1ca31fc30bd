#include "dslink/resolver.hpp"

#include <chrono>

#include <httplib.h>

#include "dslink/dataset_id.hpp"
#include "dslink/url.hpp"

namespace dslink {

const char* to_string(ResolveStatus status) {
    switch (status) {
        case ResolveStatus::Redirect: return "redirect";
        case ResolveStatus::InvalidSyntax: return "invalid_syntax";
        case ResolveStatus::UnknownFacility: return "unknown_facility";
        case ResolveStatus::NotFound: return "notfound";
        case ResolveStatus::CenterUnavailable: return "center_unavailable";
    }
    return "unknown";
}

LinkResolver::LinkResolver(std::shared_ptr<ProfileRegistry> registry, ResolverConfig config,
                           std::shared_ptr<const Clock> clock)
    : registry_(std::move(registry)), config_(config), clock_(std::move(clock)) {}

ResolutionOutcome LinkResolver::resolve(const std::string& identifier) {
    ResolutionOutcome outcome;

    const ParseResult parsed = parse_dataset_id(identifier);
    if (const ParseError* err = get_parse_error(parsed)) {
        outcome.status = ResolveStatus::InvalidSyntax;
        outcome.detail = describe(*err);
        return outcome;
    }
    const DatasetId& id = *get_id(parsed);
    const std::string canonical = format_dataset_id(id);

    const auto center = registry_->route(normalize_facility(id.facility_id));
    if (!center) {
        outcome.status = ResolveStatus::UnknownFacility;
        outcome.detail = "no data center currently serves facility " + normalize_facility(id.facility_id);
        return outcome;
    }

    const TimePoint now = clock_->now();
    bool have_expired_entry = false;
    std::string expired_target;
    {
        std::lock_guard lock(cache_mu_);
        const auto it = cache_.find(canonical);
        if (it != cache_.end()) {
            if (now - it->second.cached_at < Seconds(config_.cache_ttl_s)) {
                outcome.status = ResolveStatus::Redirect;
                outcome.target = it->second.target;
                return outcome;
            }
            have_expired_entry = true;
            expired_target = it->second.target;
        }
    }

    outcome = remote_current_link(id, *center);
    if (outcome.status == ResolveStatus::Redirect) {
        std::lock_guard lock(cache_mu_);
        cache_[canonical] = CacheEntry{outcome.target, now};
        return outcome;
    }
    if (outcome.status == ResolveStatus::CenterUnavailable && config_.stale_serve && have_expired_entry) {
        outcome.status = ResolveStatus::Redirect;
        outcome.target = expired_target;
        outcome.stale = true;
        outcome.detail = "served expired cache entry while center is unavailable";
    }
    return outcome;
}

ResolutionOutcome LinkResolver::remote_current_link(const DatasetId& id, const DataCenterProfile& center) const {
    using std::chrono::milliseconds;
    using std::chrono::steady_clock;

    ResolutionOutcome outcome;
    outcome.status = ResolveStatus::CenterUnavailable;

    const auto endpoint = url::parse_http_url(center.resolver_url);
    if (!endpoint) {
        outcome.detail = "center " + center.center_id + " has an unusable resolver URL";
        return outcome;
    }
    const std::string path = endpoint->path + "?facility=" + url::percent_encode(normalize_facility(id.facility_id)) +
                             "&private=" + url::percent_encode(id.private_id);

    const auto deadline = steady_clock::now() + milliseconds(config_.remote_timeout_ms);
    for (int attempt = 0; attempt < 2; ++attempt) {
        const auto remaining = std::chrono::duration_cast<milliseconds>(deadline - steady_clock::now());
        if (remaining <= milliseconds(0)) break;

        httplib::Client client(endpoint->origin());
        client.set_connection_timeout(remaining);
        client.set_read_timeout(remaining);
        client.set_follow_location(false);  // the Location header is the answer
        const httplib::Result res = client.Get(path);
        if (!res) {
            outcome.detail = "center " + center.center_id + " unreachable: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 302 || res->status == 301 || res->status == 307) {
            const std::string location = res->get_header_value("Location");
            if (location.empty()) {
                outcome.detail = "center " + center.center_id + " redirect carried no Location";
                return outcome;
            }
            outcome.status = ResolveStatus::Redirect;
            outcome.target = location;
            outcome.detail.clear();
            return outcome;
        }
        if (res->status == 404) {
            outcome.status = ResolveStatus::NotFound;
            outcome.detail = "center " + center.center_id + " reports no such dataset";
            return outcome;
        }
        outcome.detail = "center " + center.center_id + " answered HTTP " + std::to_string(res->status);
        return outcome;
    }
    return outcome;
}

void LinkResolver::invalidate(const std::string& identifier) {
    const ParseResult parsed = parse_dataset_id(identifier);
    const DatasetId* id = get_id(parsed);
    if (id == nullptr) return;
    std::lock_guard lock(cache_mu_);
    cache_.erase(format_dataset_id(*id));
}

std::size_t LinkResolver::cache_size() const {
    std::lock_guard lock(cache_mu_);
    return cache_.size();
}

}  // namespace dslink

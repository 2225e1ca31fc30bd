// Permanent-link resolver: published links point here forever; each request
// is routed to whichever center currently holds the dataset and answered
// with a redirect to its current location.
#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "dslink/clock.hpp"
#include "dslink/dataset_id.hpp"
#include "dslink/registry.hpp"

namespace dslink {

enum class ResolveStatus {
    Redirect,
    InvalidSyntax,
    UnknownFacility,
    NotFound,
    CenterUnavailable,
};

struct ResolutionOutcome {
    ResolveStatus status = ResolveStatus::CenterUnavailable;
    std::string target;  // set exactly when Redirect
    bool stale = false;  // Redirect served from an expired cache entry during an outage
    std::string detail;
};

struct ResolverConfig {
    int cache_ttl_s = 3600;
    bool stale_serve = true;
    int remote_timeout_ms = 5000;
};

class LinkResolver {
public:
    LinkResolver(std::shared_ptr<ProfileRegistry> registry, ResolverConfig config,
                 std::shared_ptr<const Clock> clock);

    // parse -> route -> cached target or remote current-link fetch.  With a
    // TTL of zero every request goes remote.  When the owning center is down
    // and an expired entry exists, the stale target is served flagged.
    ResolutionOutcome resolve(const std::string& identifier);

    // Drops any cache entry for the canonical identifier; absent is a no-op.
    void invalidate(const std::string& identifier);

    std::size_t cache_size() const;
    const ResolverConfig& config() const { return config_; }

private:
    struct CacheEntry {
        std::string target;
        TimePoint cached_at;
    };

    ResolutionOutcome remote_current_link(const DatasetId& id, const DataCenterProfile& center) const;

    std::shared_ptr<ProfileRegistry> registry_;
    ResolverConfig config_;
    std::shared_ptr<const Clock> clock_;

    mutable std::mutex cache_mu_;
    std::unordered_map<std::string, CacheEntry> cache_;
};

const char* to_string(ResolveStatus status);

}  // namespace dslink

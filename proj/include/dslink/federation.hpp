// Boots a complete federation on loopback: N data centers, the profile
// registry, master verifier, link resolver and correlation store, all
// behind their real HTTP interfaces.  Used by the harness and the
// integration tests.
#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "dslink/center_service.hpp"
#include "dslink/clock.hpp"
#include "dslink/correlation.hpp"
#include "dslink/http_service.hpp"
#include "dslink/registry.hpp"
#include "dslink/resolver.hpp"
#include "dslink/verifier.hpp"

namespace dslink {

struct FederationConfig {
    std::vector<CenterConfig> centers;
    RegistryConfig registry;
    VerifierConfig verifier;   // resolver_base_url is filled in at start()
    ResolverConfig resolver;
};

class Federation {
public:
    Federation(FederationConfig config, std::shared_ptr<const Clock> clock);
    ~Federation();

    Federation(const Federation&) = delete;
    Federation& operator=(const Federation&) = delete;

    // Boots every service and performs the initial profile refresh.
    void start();
    void stop();

    RefreshReport refresh() { return registry_->refresh(); }

    bool has_center(const std::string& center_id) const { return centers_.contains(center_id); }
    DataCenterService& center(const std::string& center_id);
    std::vector<std::string> center_ids() const;

    ProfileRegistry& registry() { return *registry_; }
    MasterVerifier& verifier() { return *verifier_; }
    LinkResolver& resolver() { return *resolver_; }
    CorrelationStore& correlations() { return *correlations_; }

    std::string verifier_base_url() const { return verifier_http_->base_url(); }
    std::string resolver_base_url() const { return resolver_http_->base_url(); }
    std::string correlation_base_url() const { return correlation_http_->base_url(); }

    // Migration handoff: moves every record of `facility` (normalized) from
    // one center to the other and keeps both profiles coherent.  Links
    // follow once profiles are re-fetched.
    std::size_t migrate_facility(const std::string& facility, const std::string& from_center,
                                 const std::string& to_center);

    const Clock& clock() const { return *clock_; }

private:
    FederationConfig config_;
    std::shared_ptr<const Clock> clock_;

    std::map<std::string, std::unique_ptr<DataCenterService>> centers_;
    std::shared_ptr<ProfileRegistry> registry_;
    std::shared_ptr<MasterVerifier> verifier_;
    std::shared_ptr<LinkResolver> resolver_;
    std::shared_ptr<CorrelationStore> correlations_;

    std::unique_ptr<HttpService> verifier_http_;
    std::unique_ptr<HttpService> resolver_http_;
    std::unique_ptr<HttpService> correlation_http_;

    bool started_ = false;
};

}  // namespace dslink

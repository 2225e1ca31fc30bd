#include "dslink/federation.hpp"

namespace dslink {

Federation::Federation(FederationConfig config, std::shared_ptr<const Clock> clock)
    : config_(std::move(config)), clock_(std::move(clock)) {}

Federation::~Federation() {
    stop();
}

void Federation::start() {
    if (started_) return;

    std::vector<CenterSource> sources;
    for (const CenterConfig& center_config : config_.centers) {
        auto center = std::make_unique<DataCenterService>(center_config, clock_);
        center->start();
        sources.push_back({center_config.center_id, center->base_url()});
        centers_.emplace(center_config.center_id, std::move(center));
    }

    registry_ = std::make_shared<ProfileRegistry>(std::move(sources), config_.registry, clock_);

    resolver_ = std::make_shared<LinkResolver>(registry_, config_.resolver, clock_);
    resolver_http_ = std::make_unique<HttpService>();
    register_resolver_routes(resolver_http_->server(), resolver_);
    resolver_http_->start();

    VerifierConfig verifier_config = config_.verifier;
    verifier_config.resolver_base_url = resolver_http_->base_url();
    verifier_ = std::make_shared<MasterVerifier>(registry_, verifier_config);
    verifier_http_ = std::make_unique<HttpService>();
    register_verifier_routes(verifier_http_->server(), verifier_);
    verifier_http_->start();

    correlations_ = std::make_shared<CorrelationStore>(clock_);
    correlation_http_ = std::make_unique<HttpService>();
    register_correlation_routes(correlation_http_->server(), correlations_);
    correlation_http_->start();

    registry_->refresh();
    started_ = true;
}

void Federation::stop() {
    if (correlation_http_) correlation_http_->stop();
    if (verifier_http_) verifier_http_->stop();
    if (resolver_http_) resolver_http_->stop();
    for (auto& [id, center] : centers_) center->stop();
}

DataCenterService& Federation::center(const std::string& center_id) {
    const auto it = centers_.find(center_id);
    if (it == centers_.end()) throw std::out_of_range("unknown center: " + center_id);
    return *it->second;
}

std::vector<std::string> Federation::center_ids() const {
    std::vector<std::string> out;
    for (const auto& [id, center] : centers_) out.push_back(id);
    return out;
}

std::size_t Federation::migrate_facility(const std::string& facility, const std::string& from_center,
                                         const std::string& to_center) {
    DataCenterService& from = center(from_center);
    DataCenterService& to = center(to_center);

    const std::vector<InventoryRecord> records = from.inventory().extract_facility(facility);
    from.remove_extra_facility(facility);
    const std::size_t moved = to.inventory().import_records(records);
    if (records.empty()) {
        to.add_extra_facility(facility);  // the claim moves even without records
    }
    return moved;
}

}  // namespace dslink

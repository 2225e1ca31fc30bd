// Reference data center: inventory plus the HTTP surface a center exposes
// to the federation (verification, current-link redirects, profile).
// Doubles as the mock center in the federation harness, which is why it
// counts requests and supports stop/restart on a stable port.
#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "dslink/clock.hpp"
#include "dslink/inventory.hpp"
#include "dslink/profile.hpp"

namespace httplib {
class Server;
}

namespace dslink {

struct CenterConfig {
    std::string center_id;
    std::string display_name;
    // Facilities the center claims even while it has no records for them.
    std::vector<std::string> extra_facilities;
};

enum class CenterQueryStatus { Valid, NotFound, FacilityNotServed };

struct CenterAnswer {
    CenterQueryStatus status = CenterQueryStatus::NotFound;
    std::string current_url;  // set exactly when Valid
};

class DataCenterService {
public:
    DataCenterService(CenterConfig config, std::shared_ptr<const Clock> clock);
    ~DataCenterService();

    DataCenterService(const DataCenterService&) = delete;
    DataCenterService& operator=(const DataCenterService&) = delete;

    // Fixes host/port before the first start(); defaults to an ephemeral
    // loopback port.
    void configure_bind(std::string host, int port);

    // First call binds the port; later calls re-listen on the same one, so
    // published profile endpoints survive an outage.
    void start();
    void stop();
    bool running() const;

    int port() const { return port_; }
    std::string base_url() const;
    std::string verifier_url() const;
    std::string resolver_url() const;

    Inventory& inventory() { return inventory_; }
    const Inventory& inventory() const { return inventory_; }
    const CenterConfig& config() const { return config_; }

    // Exact-match verification; FacilityNotServed flags registry/profile skew.
    CenterAnswer verify_local(std::string_view facility_id, std::string_view private_id) const;
    CenterAnswer current_link(std::string_view facility_id, std::string_view private_id) const;

    // Claims the center carries even without records; migration handoffs
    // adjust these so profiles stay coherent.
    void add_extra_facility(std::string_view facility_id);
    void remove_extra_facility(std::string_view facility_id);

    std::set<std::string> served_facilities() const;
    DataCenterProfile profile() const;
    std::string serve_profile() const;

    std::uint64_t verify_requests() const { return verify_requests_.load(); }
    std::uint64_t resolve_requests() const { return resolve_requests_.load(); }

private:
    void register_routes();
    CenterAnswer lookup(std::string_view facility_id, std::string_view private_id) const;

    CenterConfig config_;
    std::shared_ptr<const Clock> clock_;
    Inventory inventory_;

    mutable std::mutex extra_mu_;
    std::set<std::string> extra_facilities_;

    std::unique_ptr<httplib::Server> server_;
    std::thread listen_thread_;
    std::string host_ = "127.0.0.1";
    int port_ = 0;

    std::atomic<std::uint64_t> verify_requests_{0};
    std::atomic<std::uint64_t> resolve_requests_{0};
};

const char* to_string(CenterQueryStatus status);

}  // namespace dslink

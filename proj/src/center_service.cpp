#include "dslink/center_service.hpp"

#include <stdexcept>

#include <httplib.h>

#include "dslink/dataset_id.hpp"
#include "dslink/xml.hpp"

namespace dslink {
namespace {

bool is_valid_private_id(std::string_view private_id) {
    if (private_id.empty() || private_id.size() > kMaxPrivateIdLength) return false;
    for (char c : private_id) {
        if (!is_private_id_char(c)) return false;
    }
    return true;
}

std::string verdict_xml(const CenterAnswer& answer) {
    if (answer.status == CenterQueryStatus::Valid) {
        return "<verdict status=\"valid\" url=\"" + xml::escape_attribute(answer.current_url) + "\"/>\n";
    }
    return "<verdict status=\"notfound\"/>\n";
}

std::string error_xml(std::string_view reason) {
    return "<error reason=\"" + xml::escape_attribute(reason) + "\"/>\n";
}

}  // namespace

const char* to_string(CenterQueryStatus status) {
    switch (status) {
        case CenterQueryStatus::Valid: return "valid";
        case CenterQueryStatus::NotFound: return "notfound";
        case CenterQueryStatus::FacilityNotServed: return "facility_not_served";
    }
    return "unknown";
}

DataCenterService::DataCenterService(CenterConfig config, std::shared_ptr<const Clock> clock)
    : config_(std::move(config)), clock_(clock), inventory_(std::move(clock)) {
    for (const std::string& facility : config_.extra_facilities) {
        extra_facilities_.insert(normalize_facility(facility));
    }
    server_ = std::make_unique<httplib::Server>();
    register_routes();
}

DataCenterService::~DataCenterService() {
    stop();
}

void DataCenterService::register_routes() {
    server_->Get("/verify", [this](const httplib::Request& req, httplib::Response& res) {
        verify_requests_.fetch_add(1);
        res.set_header("Content-Type", "application/xml");
        if (!req.has_param("facility") || !req.has_param("private")) {
            res.status = 400;
            res.body = error_xml("missing facility or private parameter");
            return;
        }
        const std::string facility = req.get_param_value("facility");
        const std::string private_id = req.get_param_value("private");
        if (!is_valid_facility(facility) || !is_valid_private_id(private_id)) {
            res.status = 400;
            res.body = error_xml("identifier grammar violation");
            return;
        }
        const CenterAnswer answer = verify_local(normalize_facility(facility), private_id);
        if (answer.status == CenterQueryStatus::FacilityNotServed) {
            res.status = 404;
            res.body = error_xml("facility_not_served");
            return;
        }
        res.status = 200;
        res.body = verdict_xml(answer);
    });

    server_->Get("/resolve", [this](const httplib::Request& req, httplib::Response& res) {
        resolve_requests_.fetch_add(1);
        if (!req.has_param("facility") || !req.has_param("private")) {
            res.status = 400;
            res.set_content(error_xml("missing facility or private parameter"), "application/xml");
            return;
        }
        const std::string facility = req.get_param_value("facility");
        const std::string private_id = req.get_param_value("private");
        if (!is_valid_facility(facility) || !is_valid_private_id(private_id)) {
            res.status = 400;
            res.set_content(error_xml("identifier grammar violation"), "application/xml");
            return;
        }
        const CenterAnswer answer = current_link(normalize_facility(facility), private_id);
        if (answer.status == CenterQueryStatus::Valid) {
            res.set_redirect(answer.current_url, 302);
            return;
        }
        res.status = 404;
        res.set_content(error_xml(to_string(answer.status)), "application/xml");
    });

    server_->Get(std::string(kProfileWellKnownPath), [this](const httplib::Request&, httplib::Response& res) {
        res.set_content(serve_profile(), "application/xml");
    });
}

void DataCenterService::configure_bind(std::string host, int port) {
    host_ = std::move(host);
    port_ = port;
}

void DataCenterService::start() {
    if (running()) return;
    if (port_ == 0) {
        port_ = server_->bind_to_any_port(host_);
        if (port_ <= 0) throw std::runtime_error("data center " + config_.center_id + ": bind failed");
        listen_thread_ = std::thread([this] { server_->listen_after_bind(); });
    } else {
        const int port = port_;
        listen_thread_ = std::thread([this, port] { server_->listen(host_, port); });
    }
    server_->wait_until_ready();
}

void DataCenterService::stop() {
    if (server_) server_->stop();
    if (listen_thread_.joinable()) listen_thread_.join();
}

bool DataCenterService::running() const {
    return server_ && server_->is_running();
}

std::string DataCenterService::base_url() const {
    return "http://" + host_ + ":" + std::to_string(port_);
}

std::string DataCenterService::verifier_url() const {
    return base_url() + "/verify";
}

std::string DataCenterService::resolver_url() const {
    return base_url() + "/resolve";
}

CenterAnswer DataCenterService::lookup(std::string_view facility_id, std::string_view private_id) const {
    if (!served_facilities().contains(std::string(facility_id))) {
        return {CenterQueryStatus::FacilityNotServed, ""};
    }
    const auto record = inventory_.find(facility_id, private_id);
    if (!record) return {CenterQueryStatus::NotFound, ""};
    return {CenterQueryStatus::Valid, record->current_url};
}

CenterAnswer DataCenterService::verify_local(std::string_view facility_id, std::string_view private_id) const {
    return lookup(facility_id, private_id);
}

CenterAnswer DataCenterService::current_link(std::string_view facility_id, std::string_view private_id) const {
    return lookup(facility_id, private_id);
}

void DataCenterService::add_extra_facility(std::string_view facility_id) {
    std::lock_guard lock(extra_mu_);
    extra_facilities_.insert(normalize_facility(facility_id));
}

void DataCenterService::remove_extra_facility(std::string_view facility_id) {
    std::lock_guard lock(extra_mu_);
    extra_facilities_.erase(normalize_facility(facility_id));
}

std::set<std::string> DataCenterService::served_facilities() const {
    std::set<std::string> out = inventory_.facilities();
    std::lock_guard lock(extra_mu_);
    out.insert(extra_facilities_.begin(), extra_facilities_.end());
    return out;
}

DataCenterProfile DataCenterService::profile() const {
    DataCenterProfile out;
    out.center_id = config_.center_id;
    out.display_name = config_.display_name;
    out.verifier_url = verifier_url();
    out.resolver_url = resolver_url();
    out.facilities = served_facilities();
    return out;
}

std::string DataCenterService::serve_profile() const {
    return serialize_profile(profile());
}

}  // namespace dslink

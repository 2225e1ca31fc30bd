#include "dslink/verifier.hpp"

#include <atomic>
#include <chrono>
#include <thread>
#include <unordered_map>

#include <httplib.h>

#include "dslink/url.hpp"
#include "dslink/xml.hpp"

namespace dslink {
namespace {

using std::chrono::milliseconds;
using std::chrono::steady_clock;

VerificationResult parse_verdict_body(const std::string& body, VerificationResult result,
                                      const MasterVerifier& verifier) {
    const xml::XmlResult parsed = xml::parse(body);
    const xml::Element* verdict = xml::get_element(parsed);
    if (verdict == nullptr || verdict->name != "verdict") {
        result.status = VerifyStatus::CenterUnavailable;
        result.detail = "unparseable verdict from data center";
        return result;
    }
    const std::string* status = verdict->attribute("status");
    if (status != nullptr && *status == "valid") {
        result.status = VerifyStatus::Valid;
        result.permanent_link = verifier.make_permanent_link(result.identifier);
        return result;
    }
    if (status != nullptr && *status == "notfound") {
        result.status = VerifyStatus::NotFound;
        result.detail = "data center does not recognize the private id";
        return result;
    }
    result.status = VerifyStatus::CenterUnavailable;
    result.detail = "unknown verdict status from data center";
    return result;
}

}  // namespace

const char* to_string(VerifyStatus status) {
    switch (status) {
        case VerifyStatus::Valid: return "valid";
        case VerifyStatus::InvalidSyntax: return "invalid_syntax";
        case VerifyStatus::UnknownFacility: return "unknown_facility";
        case VerifyStatus::NotFound: return "notfound";
        case VerifyStatus::CenterUnavailable: return "center_unavailable";
    }
    return "unknown";
}

bool verify_status_from_string(std::string_view token, VerifyStatus& out) {
    if (token == "valid") out = VerifyStatus::Valid;
    else if (token == "invalid_syntax") out = VerifyStatus::InvalidSyntax;
    else if (token == "unknown_facility") out = VerifyStatus::UnknownFacility;
    else if (token == "notfound") out = VerifyStatus::NotFound;
    else if (token == "center_unavailable") out = VerifyStatus::CenterUnavailable;
    else return false;
    return true;
}

MasterVerifier::MasterVerifier(std::shared_ptr<ProfileRegistry> registry, VerifierConfig config)
    : registry_(std::move(registry)), config_(std::move(config)) {}

VerificationResult MasterVerifier::verify(const std::string& identifier) const {
    VerificationResult result;
    result.identifier = identifier;

    const ParseResult parsed = parse_dataset_id(identifier);
    if (const ParseError* err = get_parse_error(parsed)) {
        result.status = VerifyStatus::InvalidSyntax;
        result.detail = describe(*err);
        return result;
    }
    const DatasetId& id = *get_id(parsed);

    const auto center = registry_->route(normalize_facility(id.facility_id));
    if (!center) {
        result.status = VerifyStatus::UnknownFacility;
        result.detail = "no data center currently serves facility " + normalize_facility(id.facility_id);
        return result;
    }

    return verify_remote(identifier, id, *center);
}

VerificationResult MasterVerifier::verify_remote(const std::string& identifier, const DatasetId& id,
                                                 const DataCenterProfile& center) const {
    VerificationResult result;
    result.identifier = identifier;
    result.status = VerifyStatus::CenterUnavailable;

    const auto endpoint = url::parse_http_url(center.verifier_url);
    if (!endpoint) {
        result.detail = "center " + center.center_id + " has an unusable verifier URL";
        return result;
    }
    const std::string path = endpoint->path + "?facility=" + url::percent_encode(normalize_facility(id.facility_id)) +
                             "&private=" + url::percent_encode(id.private_id);

    // One retry for this idempotent GET, but the whole operation stays
    // within the remote timeout budget: a hung center consumes the budget
    // on the first attempt and is reported, a refused connection fails fast
    // and leaves room for the retry.
    const auto deadline = steady_clock::now() + milliseconds(config_.remote_timeout_ms);
    for (int attempt = 0; attempt < 2; ++attempt) {
        const auto remaining = std::chrono::duration_cast<milliseconds>(deadline - steady_clock::now());
        if (remaining <= milliseconds(0)) break;

        httplib::Client client(endpoint->origin());
        client.set_connection_timeout(remaining);
        client.set_read_timeout(remaining);
        const httplib::Result res = client.Get(path);
        if (!res) {
            result.detail = "center " + center.center_id + " unreachable: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 200) {
            return parse_verdict_body(res->body, std::move(result), *this);
        }
        if (res->status == 404) {
            result.detail = "center " + center.center_id + " does not serve facility " +
                            normalize_facility(id.facility_id) + " (registry/profile skew)";
        } else {
            result.detail = "center " + center.center_id + " answered HTTP " + std::to_string(res->status);
        }
        return result;  // a definite HTTP answer is not retried
    }
    return result;
}

BatchResult MasterVerifier::verify_batch(const std::vector<std::string>& identifiers) const {
    if (identifiers.size() > config_.batch_cap) {
        return BatchTooLarge{identifiers.size(), config_.batch_cap};
    }

    std::vector<std::string> unique;
    std::unordered_map<std::string, std::size_t> position;
    unique.reserve(identifiers.size());
    for (const std::string& identifier : identifiers) {
        if (position.emplace(identifier, unique.size()).second) {
            unique.push_back(identifier);
        }
    }

    std::vector<VerificationResult> unique_results(unique.size());
    const std::size_t workers = std::min<std::size_t>(8, unique.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < unique.size(); ++i) unique_results[i] = verify(unique[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < unique.size(); i = next.fetch_add(1)) {
                    unique_results[i] = verify(unique[i]);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    std::vector<VerificationResult> results;
    results.reserve(identifiers.size());
    for (const std::string& identifier : identifiers) {
        results.push_back(unique_results[position.at(identifier)]);
    }
    return results;
}

std::string MasterVerifier::make_permanent_link(const std::string& identifier) const {
    std::string base = config_.resolver_base_url;
    while (!base.empty() && base.back() == '/') base.pop_back();
    return base + "/link?id=" + url::percent_encode(identifier);
}

}  // namespace dslink

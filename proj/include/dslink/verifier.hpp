// Master verifier: accepts identifiers from publishers, routes each to the
// owning center's local verifier and mints the permanent resolver link for
// the valid ones.
#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "dslink/dataset_id.hpp"
#include "dslink/registry.hpp"

namespace dslink {

enum class VerifyStatus {
    Valid,
    InvalidSyntax,
    UnknownFacility,
    NotFound,
    CenterUnavailable,
};

struct VerificationResult {
    std::string identifier;      // as submitted
    VerifyStatus status = VerifyStatus::CenterUnavailable;
    std::string permanent_link;  // set exactly when Valid; always a resolver URL
    std::string detail;
};

struct BatchTooLarge {
    std::size_t submitted = 0;
    std::size_t cap = 0;
};

using BatchResult = std::variant<std::vector<VerificationResult>, BatchTooLarge>;

struct VerifierConfig {
    std::string resolver_base_url;
    int remote_timeout_ms = 5000;
    std::size_t batch_cap = 1000;
};

class MasterVerifier {
public:
    MasterVerifier(std::shared_ptr<ProfileRegistry> registry, VerifierConfig config);

    // parse -> route -> remote verify_local.  Every outcome is a result;
    // transport problems surface as CenterUnavailable, never as errors.
    VerificationResult verify(const std::string& identifier) const;

    // Positionally aligned with the input; duplicates are deduplicated for
    // remote calls but reported per position.
    BatchResult verify_batch(const std::vector<std::string>& identifiers) const;

    // resolver base + /link?id=<percent-encoded identifier>
    std::string make_permanent_link(const std::string& identifier) const;

    const VerifierConfig& config() const { return config_; }

private:
    VerificationResult verify_remote(const std::string& identifier, const DatasetId& id,
                                     const DataCenterProfile& center) const;

    std::shared_ptr<ProfileRegistry> registry_;
    VerifierConfig config_;
};

const char* to_string(VerifyStatus status);
bool verify_status_from_string(std::string_view token, VerifyStatus& out);

}  // namespace dslink

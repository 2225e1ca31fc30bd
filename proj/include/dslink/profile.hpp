// Data center profile document: the XML file each center serves at a known
// location so routing can follow the data.
#pragma once

#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "dslink/clock.hpp"

namespace dslink {

// Fixed path relative to a center's registered base URL.
inline constexpr std::string_view kProfileWellKnownPath = "/.well-known/dsid-profile.xml";

struct DataCenterProfile {
    std::string center_id;
    std::string display_name;
    std::string verifier_url;
    std::string resolver_url;
    std::set<std::string> facilities;  // normalized tokens, non-empty
    TimePoint fetched_at{};

    bool operator==(const DataCenterProfile& other) const {
        return center_id == other.center_id && display_name == other.display_name &&
               verifier_url == other.verifier_url && resolver_url == other.resolver_url &&
               facilities == other.facilities;
    }
};

enum class ProfileErrorKind {
    MalformedXml,
    MissingField,
    EmptyFacilities,
    BadUrl,
};

struct ProfileError {
    ProfileErrorKind kind;
    std::string field;   // for MissingField / BadUrl
    std::string detail;
};

using ProfileResult = std::variant<DataCenterProfile, ProfileError>;

// Document shape:
//
//   <datacenter id="MAST">
//     <name>Multimission Archive</name>
//     <verifier>http://host:port/verify</verifier>
//     <resolver>http://host:port/resolve</resolver>
//     <facility>hst</facility>
//     <facility>fuse</facility>
//   </datacenter>
//
// Unknown elements and attributes are ignored.  Facility tokens are
// normalized to lower case.  fetched_at is left default; the registry
// stamps it on retrieval.
ProfileResult parse_profile(std::string_view document);

std::string serialize_profile(const DataCenterProfile& profile);

const char* to_string(ProfileErrorKind kind);
std::string describe(const ProfileError& error);

inline const DataCenterProfile* get_profile(const ProfileResult& r) {
    return std::get_if<DataCenterProfile>(&r);
}
inline const ProfileError* get_profile_error(const ProfileResult& r) {
    return std::get_if<ProfileError>(&r);
}

}  // namespace dslink

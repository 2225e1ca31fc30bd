#include "dslink/profile.hpp"

#include "dslink/dataset_id.hpp"
#include "dslink/url.hpp"
#include "dslink/xml.hpp"

namespace dslink {

ProfileResult parse_profile(std::string_view document) {
    const xml::XmlResult parsed = xml::parse(document);
    if (const xml::XmlError* err = xml::get_xml_error(parsed)) {
        return ProfileError{ProfileErrorKind::MalformedXml, "",
                            err->message + " at byte " + std::to_string(err->position)};
    }
    const xml::Element& root = *xml::get_element(parsed);
    if (root.name != "datacenter") {
        return ProfileError{ProfileErrorKind::MalformedXml, "", "root element must be <datacenter>"};
    }

    DataCenterProfile profile;
    const std::string* id = root.attribute("id");
    if (id == nullptr || id->empty()) {
        return ProfileError{ProfileErrorKind::MissingField, "id", "missing datacenter id attribute"};
    }
    if (!is_valid_facility(*id)) {
        return ProfileError{ProfileErrorKind::MalformedXml, "", "center id violates token rules: " + *id};
    }
    profile.center_id = *id;

    const xml::Element* name = root.child("name");
    if (name == nullptr) {
        return ProfileError{ProfileErrorKind::MissingField, "name", "missing <name>"};
    }
    profile.display_name = name->trimmed_text();

    const xml::Element* verifier = root.child("verifier");
    if (verifier == nullptr) {
        return ProfileError{ProfileErrorKind::MissingField, "verifier", "missing <verifier>"};
    }
    profile.verifier_url = verifier->trimmed_text();
    if (!url::is_absolute_http_url(profile.verifier_url)) {
        return ProfileError{ProfileErrorKind::BadUrl, "verifier", "not an absolute http(s) URL: " + profile.verifier_url};
    }

    const xml::Element* resolver = root.child("resolver");
    if (resolver == nullptr) {
        return ProfileError{ProfileErrorKind::MissingField, "resolver", "missing <resolver>"};
    }
    profile.resolver_url = resolver->trimmed_text();
    if (!url::is_absolute_http_url(profile.resolver_url)) {
        return ProfileError{ProfileErrorKind::BadUrl, "resolver", "not an absolute http(s) URL: " + profile.resolver_url};
    }

    for (const xml::Element* facility : root.children_named("facility")) {
        const std::string token = facility->trimmed_text();
        if (!is_valid_facility(token)) {
            return ProfileError{ProfileErrorKind::MalformedXml, "", "facility violates token rules: " + token};
        }
        profile.facilities.insert(normalize_facility(token));
    }
    if (profile.facilities.empty()) {
        return ProfileError{ProfileErrorKind::EmptyFacilities, "", "profile lists no facilities"};
    }

    return profile;
}

std::string serialize_profile(const DataCenterProfile& profile) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<datacenter id=\"" + xml::escape_attribute(profile.center_id) + "\">\n";
    out += "  <name>" + xml::escape_text(profile.display_name) + "</name>\n";
    out += "  <verifier>" + xml::escape_text(profile.verifier_url) + "</verifier>\n";
    out += "  <resolver>" + xml::escape_text(profile.resolver_url) + "</resolver>\n";
    for (const std::string& facility : profile.facilities) {
        out += "  <facility>" + xml::escape_text(facility) + "</facility>\n";
    }
    out += "</datacenter>\n";
    return out;
}

const char* to_string(ProfileErrorKind kind) {
    switch (kind) {
        case ProfileErrorKind::MalformedXml: return "malformed_xml";
        case ProfileErrorKind::MissingField: return "missing_field";
        case ProfileErrorKind::EmptyFacilities: return "empty_facilities";
        case ProfileErrorKind::BadUrl: return "bad_url";
    }
    return "unknown";
}

std::string describe(const ProfileError& error) {
    std::string out = to_string(error.kind);
    if (!error.field.empty()) out += "(" + error.field + ")";
    if (!error.detail.empty()) out += ": " + error.detail;
    return out;
}

}  // namespace dslink

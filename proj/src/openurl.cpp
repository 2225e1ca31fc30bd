#include "dslink/openurl.hpp"

#include "dslink/url.hpp"

namespace dslink {

const char* to_string(PrefErrorKind kind) {
    switch (kind) {
        case PrefErrorKind::MissingOpenURL: return "missing_openurl";
        case PrefErrorKind::BadServerUrl: return "bad_server_url";
        case PrefErrorKind::BadIconResolution: return "bad_icon_resolution";
    }
    return "unknown";
}

PrefResult parse_pref_link(std::string_view link) {
    const auto qmark = link.find('?');
    if (qmark == std::string_view::npos) {
        return PrefError{PrefErrorKind::MissingOpenURL, "link carries no query string"};
    }

    // Exact-case parameter match; other casings are unknown parameters and
    // ignored, as is the opaque leading `4` token.
    std::optional<std::string> server;
    std::optional<std::string> icon;
    for (const auto& [key, value] : url::parse_query(link.substr(qmark + 1))) {
        if (key == "OpenURL" && !server) server = value;
        else if (key == "Icon" && !icon) icon = value;
    }

    if (!server) {
        return PrefError{PrefErrorKind::MissingOpenURL, "no OpenURL parameter (names are case sensitive)"};
    }
    if (!url::is_absolute_http_url(*server)) {
        return PrefError{PrefErrorKind::BadServerUrl, "OpenURL is not an absolute http(s) URL: " + *server};
    }

    OpenUrlSettings settings;
    settings.server_url = *server;
    if (icon) {
        if (url::has_scheme(*icon)) {
            if (!url::is_absolute_http_url(*icon)) {
                return PrefError{PrefErrorKind::BadIconResolution, "icon URL is not usable: " + *icon};
            }
            settings.icon_url = *icon;
        } else {
            // Schemeless icon: the server URL is pre-pended, acting as a
            // base directory.
            const auto resolved = url::resolve_reference(settings.server_url, *icon);
            if (!resolved || !url::is_absolute_http_url(*resolved)) {
                return PrefError{PrefErrorKind::BadIconResolution,
                                 "cannot resolve icon \"" + *icon + "\" against " + settings.server_url};
            }
            settings.icon_url = *resolved;
        }
    }
    return settings;
}

std::string build_pref_link(const OpenUrlSettings& settings, std::string_view base_url) {
    std::string base(base_url);
    while (!base.empty() && base.back() == '/') base.pop_back();
    std::string out = base + "/cgi-bin/pref_set?4&OpenURL=" + url::percent_encode(settings.server_url);
    if (settings.icon_url) {
        out += "&Icon=" + url::percent_encode(*settings.icon_url);
    }
    return out;
}

}  // namespace dslink

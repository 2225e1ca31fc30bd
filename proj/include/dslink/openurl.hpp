// OpenURL settings link: the `pref_set` URL a library embeds so its users
// get the library's OpenURL server pre-filled.  Parameter names are matched
// case sensitively; a schemeless icon is resolved against the server URL.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace dslink {

struct OpenUrlSettings {
    std::string server_url;                 // absolute http(s)
    std::optional<std::string> icon_url;    // absolute after resolution

    bool operator==(const OpenUrlSettings&) const = default;
};

enum class PrefErrorKind {
    MissingOpenURL,
    BadServerUrl,
    BadIconResolution,
};

struct PrefError {
    PrefErrorKind kind;
    std::string detail;
};

using PrefResult = std::variant<OpenUrlSettings, PrefError>;

// Extracts the `OpenURL` and `Icon` query parameters (exact case).  An icon
// without a URL scheme is resolved against the server URL treated as a base
// directory.
PrefResult parse_pref_link(std::string_view link);

// base + /cgi-bin/pref_set?4&OpenURL=...&Icon=... with percent-encoded
// values; the Icon parameter is omitted when the settings carry no icon.
// parse_pref_link inverts this.
std::string build_pref_link(const OpenUrlSettings& settings, std::string_view base_url);

const char* to_string(PrefErrorKind kind);

inline const OpenUrlSettings* get_settings(const PrefResult& r) { return std::get_if<OpenUrlSettings>(&r); }
inline const PrefError* get_pref_error(const PrefResult& r) { return std::get_if<PrefError>(&r); }

}  // namespace dslink

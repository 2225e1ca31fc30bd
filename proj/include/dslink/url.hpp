// Small URL helpers: percent encoding, http(s) URL splitting, query parsing
// and RFC 3986 style reference resolution.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dslink::url {

// Encodes everything outside the RFC 3986 unreserved set, so `/` becomes
// %2F and `#` becomes %23.  Safe for query parameter values.
std::string percent_encode(std::string_view s);

// Strict %XX decoding; returns nullopt on truncated or non-hex escapes.
// Does not treat `+` specially.
std::optional<std::string> percent_decode(std::string_view s);

struct UrlParts {
    std::string scheme;  // lower case
    std::string host;
    std::string port;  // empty when not given
    std::string path;  // starts with '/' (may be just "/")
    std::string query; // without the '?', empty when absent

    // scheme://host[:port]
    std::string origin() const;
    std::string to_string() const;
};

bool has_scheme(std::string_view s);
std::optional<UrlParts> parse_http_url(std::string_view s);
bool is_absolute_http_url(std::string_view s);

// Resolves `ref` against an absolute http(s) base whose path is treated as
// a directory (a trailing slash is implied when absent).  Handles absolute
// references, network-path (`//...`) and path-absolute (`/...`) forms, and
// applies dot-segment removal.
std::optional<std::string> resolve_reference(std::string_view base, std::string_view ref);

// Splits a raw query string on '&'.  Each `key=value` pair is percent
// decoded; bare tokens (no '=') are kept with an empty value.  Pairs that
// fail decoding are dropped.
std::vector<std::pair<std::string, std::string>> parse_query(std::string_view query);

}  // namespace dslink::url

#include "dslink/url.hpp"

#include <cctype>

namespace dslink::url {
namespace {

bool is_unreserved(char c) {
    const unsigned char u = static_cast<unsigned char>(c);
    return std::isalnum(u) != 0 || c == '-' || c == '.' || c == '_' || c == '~';
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// RFC 3986 section 5.2.4.
std::string remove_dot_segments(std::string_view path) {
    std::string input(path);
    std::string output;
    while (!input.empty()) {
        if (input.rfind("../", 0) == 0) {
            input.erase(0, 3);
        } else if (input.rfind("./", 0) == 0) {
            input.erase(0, 2);
        } else if (input.rfind("/./", 0) == 0) {
            input.erase(0, 2);
        } else if (input == "/.") {
            input = "/";
        } else if (input.rfind("/../", 0) == 0 || input == "/..") {
            input.erase(0, 3);
            if (input.empty()) input = "/";
            const auto last = output.find_last_of('/');
            output.erase(last == std::string::npos ? 0 : last);
        } else if (input == "." || input == "..") {
            input.clear();
        } else {
            std::size_t next = input.find('/', input[0] == '/' ? 1 : 0);
            if (next == std::string::npos) next = input.size();
            output.append(input, 0, next);
            input.erase(0, next);
        }
    }
    return output;
}

}  // namespace

std::string percent_encode(std::string_view s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (is_unreserved(c)) {
            out.push_back(c);
        } else {
            const unsigned char u = static_cast<unsigned char>(c);
            out.push_back('%');
            out.push_back(hex[u >> 4]);
            out.push_back(hex[u & 0x0f]);
        }
    }
    return out;
}

std::optional<std::string> percent_decode(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '%') {
            out.push_back(s[i]);
            continue;
        }
        if (i + 2 >= s.size()) return std::nullopt;
        const int hi = hex_value(s[i + 1]);
        const int lo = hex_value(s[i + 2]);
        if (hi < 0 || lo < 0) return std::nullopt;
        out.push_back(static_cast<char>((hi << 4) | lo));
        i += 2;
    }
    return out;
}

std::string UrlParts::origin() const {
    std::string out = scheme + "://" + host;
    if (!port.empty()) out += ":" + port;
    return out;
}

std::string UrlParts::to_string() const {
    std::string out = origin() + path;
    if (!query.empty()) out += "?" + query;
    return out;
}

bool has_scheme(std::string_view s) {
    if (s.empty() || std::isalpha(static_cast<unsigned char>(s[0])) == 0) return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        const char c = s[i];
        if (c == ':') return true;
        const unsigned char u = static_cast<unsigned char>(c);
        if (std::isalnum(u) == 0 && c != '+' && c != '-' && c != '.') return false;
    }
    return false;
}

std::optional<UrlParts> parse_http_url(std::string_view s) {
    const auto scheme_end = s.find("://");
    if (scheme_end == std::string_view::npos) return std::nullopt;
    UrlParts parts;
    parts.scheme = to_lower(s.substr(0, scheme_end));
    if (parts.scheme != "http" && parts.scheme != "https") return std::nullopt;

    std::string_view rest = s.substr(scheme_end + 3);
    const auto authority_end = rest.find_first_of("/?#");
    std::string_view authority = rest.substr(0, authority_end);
    if (authority.empty()) return std::nullopt;

    const auto colon = authority.rfind(':');
    if (colon != std::string_view::npos) {
        std::string_view port = authority.substr(colon + 1);
        if (port.empty()) return std::nullopt;
        for (char c : port) {
            if (std::isdigit(static_cast<unsigned char>(c)) == 0) return std::nullopt;
        }
        parts.host = std::string(authority.substr(0, colon));
        parts.port = std::string(port);
    } else {
        parts.host = std::string(authority);
    }
    if (parts.host.empty()) return std::nullopt;

    if (authority_end == std::string_view::npos) {
        parts.path = "/";
        return parts;
    }
    rest = rest.substr(authority_end);
    if (!rest.empty() && rest[0] == '#') {  // fragment dropped
        parts.path = "/";
        return parts;
    }
    const auto qmark = rest.find('?');
    std::string_view path = rest.substr(0, qmark);
    parts.path = path.empty() ? "/" : std::string(path);
    if (qmark != std::string_view::npos) {
        std::string_view query = rest.substr(qmark + 1);
        const auto frag = query.find('#');
        parts.query = std::string(query.substr(0, frag));
    }
    return parts;
}

bool is_absolute_http_url(std::string_view s) {
    return parse_http_url(s).has_value();
}

std::optional<std::string> resolve_reference(std::string_view base, std::string_view ref) {
    if (has_scheme(ref)) {
        auto parsed = parse_http_url(ref);
        if (!parsed) return std::nullopt;
        return parsed->to_string();
    }
    auto base_parts = parse_http_url(base);
    if (!base_parts) return std::nullopt;

    if (ref.rfind("//", 0) == 0) {
        auto parsed = parse_http_url(base_parts->scheme + ":" + std::string(ref));
        if (!parsed) return std::nullopt;
        return parsed->to_string();
    }

    std::string_view ref_path = ref;
    std::string query;
    const auto qmark = ref.find('?');
    if (qmark != std::string_view::npos) {
        ref_path = ref.substr(0, qmark);
        query = std::string(ref.substr(qmark + 1));
    }

    std::string merged;
    if (!ref_path.empty() && ref_path[0] == '/') {
        merged = std::string(ref_path);
    } else {
        // Base path acts as a directory: imply a trailing slash when absent.
        merged = base_parts->path;
        if (merged.empty() || merged.back() != '/') merged += '/';
        merged += std::string(ref_path);
    }

    UrlParts out = *base_parts;
    out.path = remove_dot_segments(merged);
    if (out.path.empty()) out.path = "/";
    out.query = query;
    return out.to_string();
}

std::vector<std::pair<std::string, std::string>> parse_query(std::string_view query) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t start = 0;
    while (start <= query.size()) {
        auto end = query.find('&', start);
        if (end == std::string_view::npos) end = query.size();
        std::string_view piece = query.substr(start, end - start);
        if (!piece.empty()) {
            const auto eq = piece.find('=');
            std::string_view raw_key = piece.substr(0, eq);
            std::string_view raw_val = eq == std::string_view::npos ? std::string_view{} : piece.substr(eq + 1);
            auto key = percent_decode(raw_key);
            auto val = percent_decode(raw_val);
            if (key && val) out.emplace_back(std::move(*key), std::move(*val));
        }
        if (end == query.size()) break;
        start = end + 1;
    }
    return out;
}

}  // namespace dslink::url

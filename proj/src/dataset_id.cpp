#include "dslink/dataset_id.hpp"

#include <cctype>

namespace dslink {

bool is_facility_char(char c) {
    const unsigned char u = static_cast<unsigned char>(c);
    return std::isalnum(u) != 0 || c == '.' || c == '_' || c == '-';
}

bool is_valid_facility(std::string_view facility_id) {
    if (facility_id.empty() || facility_id.size() > kMaxFacilityLength) return false;
    for (char c : facility_id) {
        if (!is_facility_char(c)) return false;
    }
    return true;
}

// Printable non-whitespace ASCII, excluding the separator.
bool is_private_id_char(char c) {
    const unsigned char u = static_cast<unsigned char>(c);
    return u > 0x20 && u < 0x7f && c != '#';
}

ParseResult parse_dataset_id(std::string_view input) {
    const auto slash = input.find('/');
    if (slash == std::string_view::npos) {
        return ParseError{ParseErrorKind::MissingAuthority, 0};
    }
    if (input.substr(0, slash) != kAuthority) {
        return ParseError{ParseErrorKind::BadAuthority, 0};
    }

    std::size_t pos = slash + 1;
    const std::size_t facility_start = pos;
    while (pos < input.size() && input[pos] != '#') {
        if (!is_facility_char(input[pos])) {
            return ParseError{ParseErrorKind::BadFacilityChar, pos};
        }
        if (pos - facility_start >= kMaxFacilityLength) {
            return ParseError{ParseErrorKind::TooLong, pos};
        }
        ++pos;
    }
    if (pos == input.size()) {
        return ParseError{ParseErrorKind::MissingSeparator, input.size()};
    }
    if (pos == facility_start) {
        return ParseError{ParseErrorKind::EmptyFacility, facility_start};
    }

    const std::size_t private_start = pos + 1;
    if (private_start == input.size()) {
        return ParseError{ParseErrorKind::EmptyPrivateId, private_start};
    }
    for (std::size_t i = private_start; i < input.size(); ++i) {
        if (!is_private_id_char(input[i])) {
            return ParseError{ParseErrorKind::BadPrivateChar, i};
        }
        if (i - private_start >= kMaxPrivateIdLength) {
            return ParseError{ParseErrorKind::TooLong, i};
        }
    }

    return DatasetId{
        std::string(input.substr(facility_start, pos - facility_start)),
        std::string(input.substr(private_start)),
    };
}

std::string format_dataset_id(const DatasetId& id) {
    std::string out;
    out.reserve(kAuthority.size() + 2 + id.facility_id.size() + id.private_id.size());
    out.append(kAuthority);
    out.push_back('/');
    out.append(id.facility_id);
    out.push_back('#');
    out.append(id.private_id);
    return out;
}

std::string normalize_facility(std::string_view facility_id) {
    std::string out(facility_id);
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

const char* to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::MissingAuthority: return "missing_authority";
        case ParseErrorKind::BadAuthority: return "bad_authority";
        case ParseErrorKind::MissingSeparator: return "missing_separator";
        case ParseErrorKind::EmptyFacility: return "empty_facility";
        case ParseErrorKind::BadFacilityChar: return "bad_facility_char";
        case ParseErrorKind::EmptyPrivateId: return "empty_private_id";
        case ParseErrorKind::BadPrivateChar: return "bad_private_char";
        case ParseErrorKind::TooLong: return "too_long";
    }
    return "unknown";
}

std::string describe(const ParseError& error) {
    return std::string(to_string(error.kind)) + " at byte " + std::to_string(error.position);
}

}  // namespace dslink

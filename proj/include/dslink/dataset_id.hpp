// Dataset identifier grammar: parsing, formatting and the facility/private
// split the rest of the system routes on.
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

namespace dslink {

inline constexpr std::string_view kAuthority = "ADS";
inline constexpr std::size_t kMaxFacilityLength = 32;
inline constexpr std::size_t kMaxPrivateIdLength = 128;

// Parsed form of `ADS/FacilityId#PrivateId`.  The authority is not stored;
// it is always the literal `ADS` once parsing succeeded.
struct DatasetId {
    std::string facility_id;  // original case preserved
    std::string private_id;   // opaque, case-sensitive

    bool operator==(const DatasetId&) const = default;
};

enum class ParseErrorKind {
    MissingAuthority,
    BadAuthority,
    MissingSeparator,
    EmptyFacility,
    BadFacilityChar,
    EmptyPrivateId,
    BadPrivateChar,
    TooLong,
};

struct ParseError {
    ParseErrorKind kind;
    std::size_t position;  // byte offset into the input, <= input length

    bool operator==(const ParseError&) const = default;
};

using ParseResult = std::variant<DatasetId, ParseError>;

// Accepts any string; returns either a DatasetId satisfying all invariants
// or the first violated rule with its byte position.
ParseResult parse_dataset_id(std::string_view input);

// `ADS/` + facility_id + `#` + private_id.  Inverse of parse_dataset_id.
std::string format_dataset_id(const DatasetId& id);

// ASCII lower-case fold used as the routing key.  Private ids are never
// normalized; they belong to the data center.
std::string normalize_facility(std::string_view facility_id);

bool is_facility_char(char c);
bool is_valid_facility(std::string_view facility_id);
bool is_private_id_char(char c);

const char* to_string(ParseErrorKind kind);
std::string describe(const ParseError& error);

inline const DatasetId* get_id(const ParseResult& r) { return std::get_if<DatasetId>(&r); }
inline const ParseError* get_parse_error(const ParseResult& r) { return std::get_if<ParseError>(&r); }

}  // namespace dslink

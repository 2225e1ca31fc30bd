// Grammar-driven identifier generators for property tests.  The grammar
// itself is the oracle: everything produced by valid_identifier() must
// parse, everything produced by corrupt() must be rejected.
#pragma once

#include <random>
#include <string>

namespace testgen {

inline const std::string kFacilityChars =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789._-";

inline char random_facility_char(std::mt19937& rng) {
    return kFacilityChars[std::uniform_int_distribution<std::size_t>(0, kFacilityChars.size() - 1)(rng)];
}

// Printable non-whitespace ASCII excluding '#'.
inline char random_private_char(std::mt19937& rng) {
    for (;;) {
        const char c = static_cast<char>(std::uniform_int_distribution<int>(0x21, 0x7e)(rng));
        if (c != '#') return c;
    }
}

inline std::string random_facility(std::mt19937& rng, std::size_t max_len = 32) {
    const std::size_t len = std::uniform_int_distribution<std::size_t>(1, max_len)(rng);
    std::string out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(random_facility_char(rng));
    return out;
}

inline std::string random_private_id(std::mt19937& rng, std::size_t max_len = 128) {
    const std::size_t len = std::uniform_int_distribution<std::size_t>(1, max_len)(rng);
    std::string out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(random_private_char(rng));
    return out;
}

inline std::string valid_identifier(std::mt19937& rng) {
    return "ADS/" + random_facility(rng) + "#" + random_private_id(rng);
}

// Derives a string that violates exactly one grammar rule.
inline std::string corrupt_identifier(std::mt19937& rng) {
    const std::string facility = random_facility(rng, 16);
    const std::string private_id = random_private_id(rng, 32);
    switch (std::uniform_int_distribution<int>(0, 9)(rng)) {
        case 0: return facility + "#" + private_id;                    // no authority at all
        case 1: return "DOI/" + facility + "#" + private_id;           // wrong authority
        case 2: return "ads/" + facility + "#" + private_id;           // authority is case sensitive
        case 3: return "ADS/" + facility + private_id;                 // separator dropped
        case 4: return "ADS/#" + private_id;                           // empty facility
        case 5: return "ADS/" + facility + "#";                        // empty private id
        case 6: return "ADS/" + facility + "!bad#" + private_id;       // bad facility char
        case 7: return "ADS/" + facility + "#" + private_id + "#x";    // second separator
        case 8: return "ADS/" + facility + "# " + private_id;          // whitespace in private id
        case 9: return "ADS/" + std::string(33, 'f') + "#" + private_id;  // facility too long
    }
    return "";
}

}  // namespace testgen

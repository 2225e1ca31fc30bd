#include "dslink/clock.hpp"

#include <cctype>
#include <cstdio>

namespace dslink {
namespace {

// Days from 1970-01-01 for a proleptic Gregorian civil date.
long long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

void civil_from_days(long long z, int& y, int& m, int& d) {
    z += 719468;
    const long long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long long year = static_cast<long long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(year + (m <= 2));
}

bool parse_fixed_digits(std::string_view s, std::size_t pos, int count, int& out) {
    out = 0;
    for (int i = 0; i < count; ++i) {
        if (pos + i >= s.size() || std::isdigit(static_cast<unsigned char>(s[pos + i])) == 0) return false;
        out = out * 10 + (s[pos + i] - '0');
    }
    return true;
}

}  // namespace

std::string format_rfc3339(TimePoint t) {
    const long long total = std::chrono::duration_cast<Seconds>(t.time_since_epoch()).count();
    long long days = total / 86400;
    long long rem = total % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02lld:%02lld:%02lldZ", y, m, d,
                  rem / 3600, (rem % 3600) / 60, rem % 60);
    return buf;
}

std::optional<TimePoint> parse_rfc3339(std::string_view s) {
    int year, month, day, hour, minute, second;
    if (s.size() < 20) return std::nullopt;
    if (!parse_fixed_digits(s, 0, 4, year) || s[4] != '-' ||
        !parse_fixed_digits(s, 5, 2, month) || s[7] != '-' ||
        !parse_fixed_digits(s, 8, 2, day) || (s[10] != 'T' && s[10] != 't' && s[10] != ' ') ||
        !parse_fixed_digits(s, 11, 2, hour) || s[13] != ':' ||
        !parse_fixed_digits(s, 14, 2, minute) || s[16] != ':' ||
        !parse_fixed_digits(s, 17, 2, second)) {
        return std::nullopt;
    }
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || second > 60) {
        return std::nullopt;
    }

    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])) != 0) {
            ++pos;
            ++digits;
        }
        if (digits == 0) return std::nullopt;
    }
    if (pos >= s.size()) return std::nullopt;

    long long offset = 0;
    if (s[pos] == 'Z' || s[pos] == 'z') {
        ++pos;
    } else if (s[pos] == '+' || s[pos] == '-') {
        const int sign = s[pos] == '+' ? 1 : -1;
        int oh, om;
        if (!parse_fixed_digits(s, pos + 1, 2, oh) || pos + 3 >= s.size() || s[pos + 3] != ':' ||
            !parse_fixed_digits(s, pos + 4, 2, om) || oh > 23 || om > 59) {
            return std::nullopt;
        }
        offset = sign * (oh * 3600LL + om * 60LL);
        pos += 6;
    } else {
        return std::nullopt;
    }
    if (pos != s.size()) return std::nullopt;

    const long long epoch = days_from_civil(year, month, day) * 86400LL + hour * 3600LL + minute * 60LL + second - offset;
    return TimePoint(Seconds(epoch));
}

TimePoint make_utc_time(int year, int month, int day, int hour, int minute, int second) {
    const long long epoch = days_from_civil(year, month, day) * 86400LL + hour * 3600LL + minute * 60LL + second;
    return TimePoint(Seconds(epoch));
}

}  // namespace dslink

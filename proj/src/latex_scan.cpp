#include "dslink/latex_scan.hpp"

#include <cctype>

namespace dslink {
namespace {

bool is_blank(char c) {
    return c == ' ' || c == '\t';
}

bool is_letter(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

ScanResult scan_latex(std::string_view source, std::string_view filename) {
    ScanResult result;
    std::size_t i = 0;
    int line = 1;
    int column = 1;

    const auto advance = [&] {
        if (source[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        ++i;
    };
    const auto skip_to_eol = [&] {
        while (i < source.size() && source[i] != '\n') advance();
    };
    const auto skip_blanks = [&] {
        while (i < source.size() && is_blank(source[i])) advance();
    };

    while (i < source.size()) {
        const char c = source[i];
        if (c == '%') {  // escaped percents never reach here; see '\\' below
            skip_to_eol();
            continue;
        }
        if (c != '\\') {
            advance();
            continue;
        }

        const int macro_line = line;
        const int macro_column = column;
        advance();  // the backslash
        if (i >= source.size()) break;
        if (!is_letter(source[i])) {  // control symbol such as \% or \\
            advance();
            continue;
        }
        const std::size_t word_start = i;
        while (i < source.size() && is_letter(source[i])) advance();
        if (source.substr(word_start, i - word_start) != "dataset") continue;

        while (i < source.size() && (is_blank(source[i]) || source[i] == '\n' || source[i] == '\r')) advance();
        if (i >= source.size() || source[i] != '{') {
            result.issues.push_back({std::string(filename), macro_line, macro_column,
                                     "\\dataset without a brace argument"});
            continue;
        }
        advance();  // the '{'

        std::string text;
        bool closed = false;
        bool nested = false;
        while (i < source.size()) {
            const char a = source[i];
            if (a == '}') {
                advance();
                closed = true;
                break;
            }
            if (a == '{') {
                result.issues.push_back({std::string(filename), macro_line, macro_column,
                                         "nested brace in \\dataset argument"});
                nested = true;
                break;
            }
            if (a == '\\') {
                advance();
                if (i < source.size()) {
                    if (source[i] == '%') {
                        text.push_back('%');
                    } else {
                        text.push_back('\\');
                        text.push_back(source[i]);
                    }
                    advance();
                }
                continue;
            }
            if (a == '%') {
                // Comment splice: skip the rest of the line, the line break
                // and the continuation indentation.
                skip_to_eol();
                if (i < source.size()) advance();
                skip_blanks();
                continue;
            }
            if (a == '\n' || a == '\r') {
                // Wrapped argument: join the pieces.
                while (!text.empty() && is_blank(text.back())) text.pop_back();
                while (i < source.size() &&
                       (is_blank(source[i]) || source[i] == '\n' || source[i] == '\r')) {
                    advance();
                }
                continue;
            }
            text.push_back(a);
            advance();
        }
        if (nested) continue;  // resume at the offending brace
        if (!closed) {
            result.issues.push_back({std::string(filename), macro_line, macro_column,
                                     "unterminated \\dataset argument"});
            break;
        }

        std::size_t begin = 0;
        std::size_t end = text.size();
        while (begin < end && is_blank(text[begin])) ++begin;
        while (end > begin && is_blank(text[end - 1])) --end;
        result.occurrences.push_back({text.substr(begin, end - begin), std::string(filename),
                                      macro_line, macro_column});
    }
    return result;
}

}  // namespace dslink

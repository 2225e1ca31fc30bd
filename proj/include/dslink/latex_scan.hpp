// Lexical scanner for the \dataset{...} manuscript macro.  Not a TeX
// tokenizer: it understands comments, escaped percent signs and brace
// arguments that span lines, which is all the macro needs.
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dslink {

struct MacroOccurrence {
    std::string identifier_text;
    std::string file;
    int line = 0;    // 1-based, at the macro's backslash
    int column = 0;  // 1-based byte column

    bool operator==(const MacroOccurrence&) const = default;
};

struct ScanIssue {
    std::string file;
    int line = 0;
    int column = 0;
    std::string message;
};

struct ScanResult {
    std::vector<MacroOccurrence> occurrences;  // document order
    std::vector<ScanIssue> issues;
};

// Rules:
//  - `%` starts a comment through end of line, except when written `\%`.
//  - The argument may span lines; a line break plus surrounding indentation
//    inside the argument is joined away, and a `%` inside the argument
//    splices the next line TeX-style.
//  - Nested braces inside the argument are not permitted.
//  - `\datasetfoo` is a different control word, not a match.
ScanResult scan_latex(std::string_view source, std::string_view filename = "");

}  // namespace dslink

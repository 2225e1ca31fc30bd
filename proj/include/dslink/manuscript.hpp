// Publisher-side manuscript pipeline: scan LaTeX sources for \dataset
// macros, batch-verify the identifiers against the master verifier and
// produce the copy-editing report plus the correlation feed.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "dslink/latex_scan.hpp"
#include "dslink/verifier.hpp"

namespace dslink {

struct ManuscriptOptions {
    std::string article_id;
    std::string verifier_base_url;  // master verifier, e.g. http://host:port
    int request_timeout_ms = 30000;
};

struct OccurrenceOutcome {
    MacroOccurrence occurrence;
    VerificationResult result;
};

// Exit code contract: 0 when every occurrence verified Valid, 2 when any
// hard failure blocks (bad syntax, unknown facility, not found, scan or
// file errors), 3 when only indeterminate outcomes block (centers
// unavailable, verifier unreachable).
struct ManuscriptReport {
    std::vector<OccurrenceOutcome> rows;  // document order across files
    std::vector<ScanIssue> scan_issues;
    std::vector<std::string> file_errors;
    bool verifier_unreachable = false;
    std::string verifier_error;
    std::map<VerifyStatus, std::size_t> counts;
    std::string feed;  // article TAB dataset lines for the valid identifiers
    int exit_code = 0;
};

// Submits the deduplicated identifier set in one batch request; N textual
// repeats of an identifier produce one query and N report rows.
ManuscriptReport verify_manuscript(const std::vector<std::string>& files, const ManuscriptOptions& options);

// Scan-only variant used by tests and by `pubtool scan`.
ScanResult scan_file(const std::string& path, std::string* error);

std::string render_report_text(const ManuscriptReport& report);
std::string render_report_tsv(const ManuscriptReport& report);

}  // namespace dslink

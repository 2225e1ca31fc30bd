// Publisher-side CLI: scans LaTeX manuscripts for \dataset{...} macros and
// batch-verifies the identifiers against a master verifier.
//
// Exit codes for `verify`: 0 all identifiers valid, 2 hard failures (bad
// syntax, unknown facility, not found, scan or file errors), 3 only
// indeterminate outcomes (center or verifier unavailable).
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dslink/manuscript.hpp"

namespace {

int run_scan(const std::vector<std::string>& files, const std::string& format) {
    bool any_issue = false;
    std::string out;
    for (const std::string& file : files) {
        std::string error;
        const dslink::ScanResult result = dslink::scan_file(file, &error);
        if (!error.empty()) {
            std::cerr << "error: " << error << "\n";
            any_issue = true;
            continue;
        }
        for (const dslink::MacroOccurrence& occurrence : result.occurrences) {
            if (format == "tsv") {
                out += occurrence.file + "\t" + std::to_string(occurrence.line) + "\t" +
                       std::to_string(occurrence.column) + "\t" + occurrence.identifier_text + "\n";
            } else {
                out += occurrence.file + ":" + std::to_string(occurrence.line) + ":" +
                       std::to_string(occurrence.column) + "  " + occurrence.identifier_text + "\n";
            }
        }
        for (const dslink::ScanIssue& issue : result.issues) {
            std::cerr << "error: " << issue.file << ":" << issue.line << ":" << issue.column << ": "
                      << issue.message << "\n";
            any_issue = true;
        }
    }
    std::cout << out;
    return any_issue ? 2 : 0;
}

int run_verify(const std::vector<std::string>& files, const dslink::ManuscriptOptions& options,
               const std::string& format, const std::string& feed_out) {
    const dslink::ManuscriptReport report = dslink::verify_manuscript(files, options);

    if (format == "tsv") {
        std::cout << dslink::render_report_tsv(report);
        for (const std::string& error : report.file_errors) std::cerr << "error: " << error << "\n";
        for (const dslink::ScanIssue& issue : report.scan_issues) {
            std::cerr << "error: " << issue.file << ":" << issue.line << ":" << issue.column << ": "
                      << issue.message << "\n";
        }
        if (report.verifier_unreachable) std::cerr << "error: " << report.verifier_error << "\n";
    } else {
        std::cout << dslink::render_report_text(report);
    }

    if (!feed_out.empty() && !report.verifier_unreachable) {
        std::ofstream out(feed_out, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "error: cannot write feed to " << feed_out << "\n";
            return 2;
        }
        out << report.feed;
    }
    return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dataset identifier tooling for publishers"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    std::string article;
    std::string verifier;
    std::string feed_out;
    std::string format = "text";

    CLI::App* verify = app.add_subcommand("verify", "Scan manuscripts and verify identifiers");
    verify->add_option("--article", article, "Article identifier for the correlation feed")->required();
    verify->add_option("--verifier", verifier, "Master verifier base URL")->required();
    verify->add_option("--feed-out", feed_out, "Write the correlation feed for valid identifiers here");
    verify->add_option("--format", format, "Report format: text or tsv")
        ->check(CLI::IsMember({"text", "tsv"}));
    verify->add_option("files", files, "LaTeX source files")->required()->expected(-1);

    CLI::App* scan = app.add_subcommand("scan", "List \\dataset occurrences without verifying");
    scan->add_option("--format", format, "Output format: text or tsv")->check(CLI::IsMember({"text", "tsv"}));
    scan->add_option("files", files, "LaTeX source files")->required()->expected(-1);

    CLI11_PARSE(app, argc, argv);

    if (scan->parsed()) {
        return run_scan(files, format);
    }
    dslink::ManuscriptOptions options;
    options.article_id = article;
    options.verifier_base_url = verifier;
    return run_verify(files, options, format, feed_out);
}

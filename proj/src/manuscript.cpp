#include "dslink/manuscript.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <httplib.h>

#include "dslink/url.hpp"
#include "dslink/xml.hpp"

namespace dslink {
namespace {

// One batch POST to the master verifier; results come back positionally
// aligned with the submitted lines.
bool batch_verify_remote(const std::vector<std::string>& identifiers, const ManuscriptOptions& options,
                         std::vector<VerificationResult>& out, std::string& error) {
    const auto endpoint = url::parse_http_url(options.verifier_base_url);
    if (!endpoint) {
        error = "not an absolute http(s) URL: " + options.verifier_base_url;
        return false;
    }
    std::string body;
    for (const std::string& identifier : identifiers) {
        body += identifier;
        body += '\n';
    }

    httplib::Client client(endpoint->origin());
    client.set_connection_timeout(std::chrono::milliseconds(options.request_timeout_ms));
    client.set_read_timeout(std::chrono::milliseconds(options.request_timeout_ms));
    std::string path = endpoint->path;
    if (path.back() != '/') path += '/';
    const httplib::Result res = client.Post(path == "/" ? "/verify" : path + "verify", body, "text/plain");
    if (!res) {
        error = "verifier unreachable: " + httplib::to_string(res.error());
        return false;
    }
    if (res->status != 200) {
        error = "verifier answered HTTP " + std::to_string(res->status);
        return false;
    }

    const xml::XmlResult parsed = xml::parse(res->body);
    const xml::Element* root = xml::get_element(parsed);
    if (root == nullptr || root->name != "results") {
        error = "unparseable verifier response";
        return false;
    }
    for (const xml::Element* element : root->children_named("result")) {
        VerificationResult result;
        const std::string* id = element->attribute("id");
        const std::string* status = element->attribute("status");
        const std::string* link = element->attribute("link");
        const std::string* detail = element->attribute("detail");
        if (id == nullptr || status == nullptr || !verify_status_from_string(*status, result.status)) {
            error = "malformed result element in verifier response";
            return false;
        }
        result.identifier = *id;
        if (link != nullptr) result.permanent_link = *link;
        if (detail != nullptr) result.detail = *detail;
        out.push_back(std::move(result));
    }
    if (out.size() != identifiers.size()) {
        error = "verifier returned " + std::to_string(out.size()) + " results for " +
                std::to_string(identifiers.size()) + " identifiers";
        out.clear();
        return false;
    }
    return true;
}

}  // namespace

ScanResult scan_file(const std::string& path, std::string* error) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        if (error) *error = "cannot read " + path;
        return {};
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (error) error->clear();
    return scan_latex(buffer.str(), path);
}

ManuscriptReport verify_manuscript(const std::vector<std::string>& files, const ManuscriptOptions& options) {
    ManuscriptReport report;

    std::vector<MacroOccurrence> occurrences;
    for (const std::string& file : files) {
        std::string error;
        ScanResult scanned = scan_file(file, &error);
        if (!error.empty()) {
            report.file_errors.push_back(error);
            continue;
        }
        for (MacroOccurrence& occurrence : scanned.occurrences) occurrences.push_back(std::move(occurrence));
        for (ScanIssue& issue : scanned.issues) report.scan_issues.push_back(std::move(issue));
    }

    std::vector<std::string> unique;
    std::unordered_map<std::string, std::size_t> position;
    for (const MacroOccurrence& occurrence : occurrences) {
        if (position.emplace(occurrence.identifier_text, unique.size()).second) {
            unique.push_back(occurrence.identifier_text);
        }
    }

    std::vector<VerificationResult> results;
    if (!unique.empty()) {
        std::string error;
        if (!batch_verify_remote(unique, options, results, error)) {
            report.verifier_unreachable = true;
            report.verifier_error = error;
            report.exit_code = 3;
            return report;
        }
    }

    std::set<std::string> feed_lines;
    for (const MacroOccurrence& occurrence : occurrences) {
        const VerificationResult& result = results[position.at(occurrence.identifier_text)];
        ++report.counts[result.status];
        if (result.status == VerifyStatus::Valid) {
            feed_lines.insert(options.article_id + "\t" + result.identifier + "\n");
        }
        report.rows.push_back({occurrence, result});
    }
    for (const std::string& line : feed_lines) report.feed += line;

    const auto count = [&report](VerifyStatus status) {
        const auto it = report.counts.find(status);
        return it == report.counts.end() ? std::size_t{0} : it->second;
    };
    const bool hard_failure = count(VerifyStatus::InvalidSyntax) > 0 || count(VerifyStatus::UnknownFacility) > 0 ||
                              count(VerifyStatus::NotFound) > 0 || !report.scan_issues.empty() ||
                              !report.file_errors.empty();
    if (hard_failure) {
        report.exit_code = 2;
    } else if (count(VerifyStatus::CenterUnavailable) > 0) {
        report.exit_code = 3;
    } else {
        report.exit_code = 0;
    }
    return report;
}

std::string render_report_text(const ManuscriptReport& report) {
    std::string out;
    for (const std::string& error : report.file_errors) {
        out += "error: " + error + "\n";
    }
    for (const ScanIssue& issue : report.scan_issues) {
        out += "error: " + issue.file + ":" + std::to_string(issue.line) + ":" + std::to_string(issue.column) +
               ": " + issue.message + "\n";
    }
    if (report.verifier_unreachable) {
        out += "error: " + report.verifier_error + "\n";
        return out;
    }
    for (const OccurrenceOutcome& row : report.rows) {
        out += row.occurrence.file + ":" + std::to_string(row.occurrence.line) + ":" +
               std::to_string(row.occurrence.column) + "  " + row.occurrence.identifier_text + "  " +
               to_string(row.result.status);
        if (row.result.status == VerifyStatus::Valid) {
            out += "  " + row.result.permanent_link;
        } else if (!row.result.detail.empty()) {
            out += "  (" + row.result.detail + ")";
        }
        out += "\n";
    }

    out += "summary:";
    bool any = false;
    for (const auto& [status, n] : report.counts) {
        out += std::string(" ") + to_string(status) + "=" + std::to_string(n);
        any = true;
    }
    if (!any) out += " no occurrences";
    out += "\n";
    return out;
}

std::string render_report_tsv(const ManuscriptReport& report) {
    std::string out;
    for (const OccurrenceOutcome& row : report.rows) {
        out += row.occurrence.file + "\t" + std::to_string(row.occurrence.line) + "\t" +
               std::to_string(row.occurrence.column) + "\t" + row.occurrence.identifier_text + "\t" +
               to_string(row.result.status) + "\n";
    }
    return out;
}

}  // namespace dslink

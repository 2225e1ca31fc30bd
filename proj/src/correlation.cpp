#include "dslink/correlation.hpp"

#include <fstream>
#include <sstream>

namespace dslink {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        out.push_back(line);
        start = end + 1;
    }
    return out;
}

}  // namespace

bool is_valid_utf8(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        std::size_t extra;
        unsigned long min_value;
        if (c < 0x80) {
            ++i;
            continue;
        } else if ((c & 0xe0) == 0xc0) {
            extra = 1;
            min_value = 0x80;
        } else if ((c & 0xf0) == 0xe0) {
            extra = 2;
            min_value = 0x800;
        } else if ((c & 0xf8) == 0xf0) {
            extra = 3;
            min_value = 0x10000;
        } else {
            return false;
        }
        if (i + extra >= text.size()) return false;
        unsigned long value = c & (0x3f >> extra);
        for (std::size_t k = 1; k <= extra; ++k) {
            const unsigned char cont = static_cast<unsigned char>(text[i + k]);
            if ((cont & 0xc0) != 0x80) return false;
            value = (value << 6) | (cont & 0x3f);
        }
        if (value < min_value || value > 0x10ffff || (value >= 0xd800 && value <= 0xdfff)) return false;
        i += extra + 1;
    }
    return true;
}

CorrelationStore::CorrelationStore(std::shared_ptr<const Clock> clock)
    : clock_(std::move(clock)), snapshot_(std::make_shared<PairMap>()) {}

std::shared_ptr<const CorrelationStore::PairMap> CorrelationStore::view() const {
    std::lock_guard lock(mu_);
    return snapshot_;
}

IngestReport CorrelationStore::ingest_feed(std::string_view feed, std::string_view source) {
    IngestReport report;
    if (!is_valid_utf8(feed)) {
        report.feed_unreadable = true;
        return report;
    }

    std::lock_guard lock(mu_);
    auto next = std::make_shared<PairMap>(*snapshot_);
    const TimePoint now = clock_->now();

    std::size_t line_no = 0;
    for (std::string_view line : split_lines(feed)) {
        ++line_no;
        if (line.empty()) continue;

        const auto first_tab = line.find('\t');
        if (first_tab == std::string_view::npos || line.find('\t', first_tab + 1) != std::string_view::npos) {
            ++report.rejected;
            report.rejects.push_back({line_no, "expected two tab-separated fields"});
            continue;
        }
        const std::string_view article = line.substr(0, first_tab);
        const std::string_view dataset = line.substr(first_tab + 1);
        if (article.empty()) {
            ++report.rejected;
            report.rejects.push_back({line_no, "empty article id"});
            continue;
        }
        const ParseResult parsed = parse_dataset_id(dataset);
        if (const ParseError* err = get_parse_error(parsed)) {
            ++report.rejected;
            report.rejects.push_back({line_no, describe(*err)});
            continue;
        }

        auto key = std::make_pair(std::string(article), format_dataset_id(*get_id(parsed)));
        const auto it = next->find(key);
        if (it == next->end()) {
            Meta meta{std::string(source), now};
            append_log_line(key.first, key.second, meta);
            next->emplace(std::move(key), std::move(meta));
            ++report.inserted;
        } else {
            it->second.recorded_at = now;  // source keeps its first-seen value
            append_log_line(key.first, key.second, it->second);
            ++report.updated;
        }
    }

    snapshot_ = std::move(next);
    return report;
}

std::string CorrelationStore::harvest(std::optional<std::string> facility, std::optional<TimePoint> since) const {
    const auto pairs = view();
    std::string out;
    for (const auto& [key, meta] : *pairs) {
        if (since && meta.recorded_at < *since) continue;
        if (facility) {
            const ParseResult parsed = parse_dataset_id(key.second);
            const DatasetId* id = get_id(parsed);
            if (id == nullptr || normalize_facility(id->facility_id) != *facility) continue;
        }
        out += key.first;
        out += '\t';
        out += key.second;
        out += '\n';
    }
    return out;
}

std::vector<std::string> CorrelationStore::lookup_article(const std::string& article_id) const {
    const auto pairs = view();
    std::vector<std::string> out;
    for (auto it = pairs->lower_bound({article_id, ""}); it != pairs->end() && it->first.first == article_id; ++it) {
        out.push_back(it->first.second);
    }
    return out;  // map order: sorted by dataset id
}

std::variant<std::vector<std::string>, ParseError> CorrelationStore::lookup_dataset(const std::string& dataset_id) const {
    const ParseResult parsed = parse_dataset_id(dataset_id);
    if (const ParseError* err = get_parse_error(parsed)) return *err;
    const std::string canonical = format_dataset_id(*get_id(parsed));

    const auto pairs = view();
    std::vector<std::string> out;
    for (const auto& [key, meta] : *pairs) {
        if (key.second == canonical) out.push_back(key.first);
    }
    return out;  // map order: sorted by article id
}

std::size_t CorrelationStore::size() const {
    return view()->size();
}

void CorrelationStore::append_log_line(const std::string& article_id, const std::string& dataset_id, const Meta& meta) {
    if (log_path_.empty()) return;
    std::ofstream out(log_path_, std::ios::app | std::ios::binary);
    if (!out) return;
    out << meta.source << '\t' << article_id << '\t' << dataset_id << '\t' << format_rfc3339(meta.recorded_at) << '\n';
}

bool CorrelationStore::attach_log(const std::string& path, std::string* error) {
    std::lock_guard lock(mu_);
    auto next = std::make_shared<PairMap>(*snapshot_);

    std::ifstream in(path, std::ios::binary);
    if (in) {
        std::stringstream buffer;
        buffer << in.rdbuf();
        const std::string content = buffer.str();
        for (std::string_view line : split_lines(content)) {
            if (line.empty()) continue;
            std::vector<std::string_view> fields;
            std::size_t start = 0;
            for (;;) {
                const auto tab = line.find('\t', start);
                if (tab == std::string_view::npos) {
                    fields.push_back(line.substr(start));
                    break;
                }
                fields.push_back(line.substr(start, tab - start));
                start = tab + 1;
            }
            if (fields.size() != 4) continue;
            const auto recorded = parse_rfc3339(fields[3]);
            if (!recorded) continue;
            (*next)[{std::string(fields[1]), std::string(fields[2])}] = Meta{std::string(fields[0]), *recorded};
        }
    } else if (error != nullptr) {
        // A missing log is fine: it is created on first append.
        error->clear();
    }

    snapshot_ = std::move(next);
    log_path_ = path;
    return true;
}

bool CorrelationStore::compact(std::string* error) {
    std::lock_guard lock(mu_);
    if (log_path_.empty()) {
        if (error) *error = "no log attached";
        return false;
    }
    std::ofstream out(log_path_, std::ios::trunc | std::ios::binary);
    if (!out) {
        if (error) *error = "cannot rewrite " + log_path_;
        return false;
    }
    for (const auto& [key, meta] : *snapshot_) {
        out << meta.source << '\t' << key.first << '\t' << key.second << '\t'
            << format_rfc3339(meta.recorded_at) << '\n';
    }
    return true;
}

}  // namespace dslink

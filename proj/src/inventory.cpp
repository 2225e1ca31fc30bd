#include "dslink/inventory.hpp"

#include <algorithm>

namespace dslink {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto end = s.find(sep, start);
        if (end == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
}

}  // namespace

bool Inventory::insert(std::string_view facility_id, std::string_view private_id, std::string_view current_url) {
    std::lock_guard lock(mu_);
    Key key{std::string(facility_id), std::string(private_id)};
    if (records_.contains(key)) return false;
    InventoryRecord record{key.first, key.second, std::string(current_url), clock_->now()};
    records_.emplace(std::move(key), std::move(record));
    return true;
}

bool Inventory::update_url(std::string_view facility_id, std::string_view private_id, std::string_view new_url) {
    std::lock_guard lock(mu_);
    const auto it = records_.find(Key{std::string(facility_id), std::string(private_id)});
    if (it == records_.end()) return false;
    it->second.current_url = std::string(new_url);
    return true;
}

std::optional<InventoryRecord> Inventory::find(std::string_view facility_id, std::string_view private_id) const {
    std::lock_guard lock(mu_);
    const auto it = records_.find(Key{std::string(facility_id), std::string(private_id)});
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

std::vector<InventoryRecord> Inventory::export_facility(std::string_view facility_id) const {
    std::lock_guard lock(mu_);
    std::vector<InventoryRecord> out;
    const auto begin = records_.lower_bound(Key{std::string(facility_id), ""});
    for (auto it = begin; it != records_.end() && it->first.first == facility_id; ++it) {
        out.push_back(it->second);
    }
    return out;  // map order: already sorted by private_id
}

std::vector<InventoryRecord> Inventory::extract_facility(std::string_view facility_id) {
    std::lock_guard lock(mu_);
    std::vector<InventoryRecord> out;
    const auto begin = records_.lower_bound(Key{std::string(facility_id), ""});
    auto it = begin;
    while (it != records_.end() && it->first.first == facility_id) {
        out.push_back(it->second);
        it = records_.erase(it);
    }
    return out;
}

std::size_t Inventory::import_records(const std::vector<InventoryRecord>& records) {
    std::lock_guard lock(mu_);
    std::size_t added = 0;
    for (const InventoryRecord& record : records) {
        Key key{record.facility_id, record.private_id};
        if (records_.contains(key)) continue;
        records_.emplace(std::move(key), record);
        ++added;
    }
    return added;
}

std::set<std::string> Inventory::facilities() const {
    std::lock_guard lock(mu_);
    std::set<std::string> out;
    for (const auto& [key, record] : records_) out.insert(key.first);
    return out;
}

std::size_t Inventory::size() const {
    std::lock_guard lock(mu_);
    return records_.size();
}

std::string Inventory::to_tsv() const {
    std::lock_guard lock(mu_);
    std::string out;
    for (const auto& [key, record] : records_) {
        out += record.facility_id;
        out += '\t';
        out += record.private_id;
        out += '\t';
        out += record.current_url;
        out += '\t';
        out += format_rfc3339(record.created_at);
        out += '\n';
    }
    return out;
}

std::size_t Inventory::load_tsv(std::string_view text, std::vector<std::string>* errors) {
    std::size_t loaded = 0;
    std::size_t line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        const auto fields = split(line, '\t');
        if (fields.size() != 4) {
            if (errors) errors->push_back("line " + std::to_string(line_no) + ": expected 4 fields");
            continue;
        }
        const auto created = parse_rfc3339(fields[3]);
        if (!created) {
            if (errors) errors->push_back("line " + std::to_string(line_no) + ": bad timestamp");
            continue;
        }
        InventoryRecord record{std::string(fields[0]), std::string(fields[1]), std::string(fields[2]), *created};
        std::lock_guard lock(mu_);
        records_[Key{record.facility_id, record.private_id}] = std::move(record);  // later lines win
        ++loaded;
    }
    return loaded;
}

}  // namespace dslink

#include "pathgen/pathset.hpp"

#include <algorithm>

namespace pathgen {

bool PathSet::insert(const std::string& key, const InputVector& input, std::int64_t k, int length,
                     int cost) {
    auto [it, inserted] = index_.try_emplace(key, records_.size());
    if (!inserted) return false;
    PathRecord record;
    record.key = key;
    record.first_input = input;
    record.first_k = k;
    record.length = length;
    record.cost = cost;
    records_.push_back(std::move(record));
    max_length_ = std::max(max_length_, length);
    return true;
}

const PathRecord* PathSet::find(const std::string& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? nullptr : &records_[it->second];
}

std::vector<std::string> PathSet::sorted_keys() const {
    std::vector<std::string> keys;
    keys.reserve(records_.size());
    for (const auto& record : records_) keys.push_back(record.key);
    std::sort(keys.begin(), keys.end());
    return keys;
}

}  // namespace pathgen

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "pathgen/input.hpp"

namespace pathgen {

struct PathRecord {
    std::string key;
    InputVector first_input;   // lowest (k, draw index) that produced the path
    std::int64_t first_k = 0;
    int length = 0;
    int cost = 0;
};

// The dedup filter: unique path strings in first-seen order, each with one
// representative input.
class PathSet {
public:
    // True iff the key was new; duplicates leave the set untouched.
    bool insert(const std::string& key, const InputVector& input, std::int64_t k, int length,
                int cost);

    bool contains(const std::string& key) const { return index_.count(key) > 0; }
    std::size_t size() const { return records_.size(); }
    const std::vector<PathRecord>& records() const { return records_; }
    const PathRecord* find(const std::string& key) const;

    // Longest collected path so far; 0 when empty.
    int max_length() const { return max_length_; }

    std::vector<std::string> sorted_keys() const;

private:
    std::vector<PathRecord> records_;
    std::unordered_map<std::string, std::size_t> index_;
    int max_length_ = 0;
};

}  // namespace pathgen

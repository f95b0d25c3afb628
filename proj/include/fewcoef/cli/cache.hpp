#pragma once

#include "fewcoef/afe/evaluate.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace fewcoef::cli {

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

/// On-disk evaluations: <dir>/<instance label>/<fnv1a(key)>.eval, each file
/// starting with `key <key>` followed by the afe text form. Writes go to a
/// temporary file in the same directory and are renamed into place.
class EvalCache {
public:
    /// An empty directory disables the cache.
    explicit EvalCache(std::string dir = {}) : dir_(std::move(dir)) {}
    bool enabled() const { return !dir_.empty(); }
    std::string path(const std::string& label, const std::string& key) const;
    /// Missing, unreadable or mismatched files count as misses.
    std::optional<afe::Evaluation> load(const std::string& label, const std::string& key) const;
    void store(const std::string& label, const std::string& key, const afe::Evaluation& e) const;

private:
    std::string dir_;
};

}  // namespace fewcoef::cli

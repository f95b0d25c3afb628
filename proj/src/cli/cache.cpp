#include "fewcoef/cli/cache.hpp"

#include "fewcoef/afe/report.hpp"
#include "fewcoef/numerics/errors.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace fewcoef::cli {

namespace fs = std::filesystem;

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string EvalCache::path(const std::string& label, const std::string& key) const {
    return (fs::path(dir_) / label / (fnv1a_hex(key) + ".eval")).string();
}

std::optional<afe::Evaluation> EvalCache::load(const std::string& label, const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(path(label, key));
    if (!in) return std::nullopt;
    std::string first;
    std::getline(in, first);
    if (first != "key " + key) return std::nullopt;
    try {
        return afe::read_evaluation(in);
    } catch (const InputError&) {
        return std::nullopt;
    }
}

void EvalCache::store(const std::string& label, const std::string& key, const afe::Evaluation& e) const {
    if (!enabled()) return;
    static std::atomic<long> serial{0};
    fs::path final_path(path(label, key));
    fs::create_directories(final_path.parent_path());
    fs::path tmp = final_path;
    tmp += ".tmp" + std::to_string(::getpid()) + "." + std::to_string(serial++);
    {
        std::ofstream out(tmp);
        if (!out) throw InputError("cannot write cache file " + tmp.string());
        out << "key " << key << '\n';
        afe::write_evaluation(out, e);
        if (!out.flush()) throw InputError("cannot write cache file " + tmp.string());
    }
    fs::rename(tmp, final_path);
}

}  // namespace fewcoef::cli

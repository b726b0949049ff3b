#ifndef ZK_CONFIG_HPP
#define ZK_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

namespace zk {

// Flat key = value configuration.  Lines are `key = value`, `#` starts a comment,
// keys may be dotted (grid.M, run.T).  Values stay strings until queried.
class Config {
public:
    Config() = default;

    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::string require_string(const std::string& key) const;

    double get_double(const std::string& key, double fallback) const;
    double require_double(const std::string& key) const;

    long get_int(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    void set(const std::string& key, const std::string& value) { kv_[key] = value; }

    const std::map<std::string, std::string>& entries() const { return kv_; }
    std::vector<std::string> keys() const;

    // FNV-1a over the sorted canonical "key=value" lines; stable across runs.
    std::string hash_hex() const;

private:
    std::map<std::string, std::string> kv_;
    double parse_double(const std::string& key) const;
};

uint64_t fnv1a(const void* data, size_t n, uint64_t h = 14695981039346656037ull);
std::string fnv1a_hex(const std::string& bytes);

} // namespace zk

#endif

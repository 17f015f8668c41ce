#pragma once

#include <map>
#include <set>
#include <string>

namespace weylpath {

/// Flat key=value configuration. One entry per line; '#' starts a comment.
/// All parse problems throw ConfigError.
class RunConfig {
  public:
    static RunConfig from_file(const std::string& path);
    static RunConfig parse(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    /// Rejects keys outside `known` (catches typos before any work starts).
    void require_known(const std::set<std::string>& known) const;

    const std::map<std::string, std::string>& entries() const { return values_; }
    const std::string& origin() const { return origin_; }

  private:
    std::map<std::string, std::string> values_;
    std::string origin_;
};

} // namespace weylpath

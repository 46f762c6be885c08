#pragma once

#include <map>
#include <string>
#include <vector>

#include "monokit/homotopy.hpp"
#include "monokit/pde.hpp"

namespace monokit {

/// Flat key-value document with [section] headers, '#' comments, and
/// 'key = value' lines. Values stay strings until queried.
class SpecFile {
public:
    static SpecFile parse(const std::string& text);
    static SpecFile load(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    /// Comma-separated list of doubles.
    std::vector<double> get_list(const std::string& section, const std::string& key) const;

    const std::map<std::string, std::map<std::string, std::string>>& sections() const {
        return sections_;
    }

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// [problem] kind = inclusion | elliptic | parabolic dispatch targets.
InclusionProblem load_inclusion(const SpecFile& f);
EllipticSpec load_elliptic_spec(const SpecFile& f);
ParabolicProblem load_parabolic(const SpecFile& f);

}  // namespace monokit

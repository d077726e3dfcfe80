#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace camscout {

/// Parsed robots.txt. Only Allow/Disallow are interpreted; '*' wildcards and
/// a trailing '$' anchor are supported, and the longest matching rule wins
/// (Allow on ties).
class RobotsRules {
public:
    RobotsRules() = default;

    static RobotsRules parse(std::string_view text, std::string_view user_agent);
    static RobotsRules allow_all() { return {}; }

    /// `path` is the path-and-query of the URL being considered.
    bool allowed(std::string_view path) const;

    std::size_t rule_count() const { return rules_.size(); }

private:
    struct Rule {
        std::string pattern;
        bool allow;
    };
    std::vector<Rule> rules_;
};

bool robots_pattern_matches(std::string_view pattern, std::string_view path);

}  // namespace camscout

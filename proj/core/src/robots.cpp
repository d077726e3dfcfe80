#include "camscout/robots.hpp"

#include <algorithm>
#include <cctype>

namespace camscout {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

struct Group {
    std::vector<std::string> agents;
    std::vector<std::pair<std::string, bool>> rules;
};

}  // namespace

bool robots_pattern_matches(std::string_view pattern, std::string_view path) {
    bool anchored = !pattern.empty() && pattern.back() == '$';
    if (anchored) pattern.remove_suffix(1);

    // Iterative glob match where '*' spans any run of characters.
    std::size_t p = 0, s = 0, star = std::string_view::npos, mark = 0;
    while (s < path.size()) {
        if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = s;
        } else if (p < pattern.size() && pattern[p] == path[s]) {
            ++p;
            ++s;
        } else if (p == pattern.size() && !anchored) {
            return true;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            s = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

RobotsRules RobotsRules::parse(std::string_view text, std::string_view user_agent) {
    std::vector<Group> groups;
    bool last_was_agent = false;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto colon = line.find(':');
        if (colon == std::string_view::npos) continue;
        const std::string key = lower(trim(line.substr(0, colon)));
        const std::string_view value = trim(line.substr(colon + 1));

        if (key == "user-agent") {
            if (!last_was_agent) groups.emplace_back();
            groups.back().agents.push_back(lower(value));
            last_was_agent = true;
        } else if (key == "allow" || key == "disallow") {
            last_was_agent = false;
            if (groups.empty()) continue;
            // An empty Disallow means "allow everything" and adds no rule.
            if (value.empty()) continue;
            groups.back().rules.emplace_back(std::string(value), key == "allow");
        } else {
            last_was_agent = false;
        }
    }

    std::string token = lower(user_agent.substr(0, user_agent.find('/')));
    std::vector<const Group*> specific, wildcard;
    for (const auto& g : groups) {
        for (const auto& agent : g.agents) {
            if (agent == "*") {
                wildcard.push_back(&g);
                break;
            }
            if (!token.empty() && token.find(agent) != std::string::npos) {
                specific.push_back(&g);
                break;
            }
        }
    }

    RobotsRules rules;
    for (const Group* g : specific.empty() ? wildcard : specific)
        for (const auto& [pattern, allow] : g->rules) rules.rules_.push_back({pattern, allow});
    return rules;
}

bool RobotsRules::allowed(std::string_view path) const {
    std::size_t best_len = 0;
    bool verdict = true;
    bool matched = false;
    for (const auto& rule : rules_) {
        if (!robots_pattern_matches(rule.pattern, path)) continue;
        const auto len = rule.pattern.size();
        if (!matched || len > best_len || (len == best_len && rule.allow)) {
            best_len = len;
            verdict = rule.allow;
            matched = true;
        }
    }
    return verdict;
}

}  // namespace camscout

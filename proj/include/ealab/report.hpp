#pragma once

#include <deque>
#include <map>

#include "ealab/common.hpp"

namespace ealab {

/// Result of one axiom or identity check over a finite window. Witnesses are
/// capped; reports never claim more than the window shows.
struct CheckReport {
    std::string axiom;
    bool pass = true;
    int window = 0;
    std::string certification = "window-certified";  // or "structural"
    std::vector<std::string> witnesses;
    std::map<std::string, std::string> info;

    static constexpr std::size_t kMaxWitnesses = 4;

    void fail(std::string w) {
        pass = false;
        if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
    }
    void note(std::string key, std::string value) { info[std::move(key)] = std::move(value); }
};

struct SuiteReport {
    std::string suite;
    // deque: references returned by add() stay valid across later add() calls
    std::deque<CheckReport> checks;

    bool pass() const {
        for (auto const& c : checks)
            if (!c.pass) return false;
        return true;
    }
    CheckReport& add(std::string axiom, int window) {
        checks.push_back({});
        checks.back().axiom = std::move(axiom);
        checks.back().window = window;
        return checks.back();
    }
    CheckReport const* find(std::string const& axiom) const {
        for (auto const& c : checks)
            if (c.axiom == axiom) return &c;
        return nullptr;
    }
};

}  // namespace ealab

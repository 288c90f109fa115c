#ifndef ZIGZAG_REPORT_HPP
#define ZIGZAG_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "zigzag/padic.hpp"

namespace zigzag {

// One verified claim: an identity, a congruence, a telescoping bound, or a
// structural assertion.  `margin` is the worst valuation slack observed
// (how far above the required threshold the offending coefficient sits);
// `witness` localizes a failure.
struct CheckResult {
    std::string id;
    bool pass = false;
    std::optional<HalfInt> margin;
    std::string witness;
};

struct VerificationReport {
    std::string title;
    std::vector<std::string> params;  // "p=5", "r=23", ...
    std::vector<CheckResult> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::optional<HalfInt> worst_margin() const {
        std::optional<HalfInt> w;
        for (const auto& c : checks)
            if (c.margin && (!w || *c.margin < *w)) w = c.margin;
        return w;
    }
    void add(const std::string& id, bool pass, std::optional<HalfInt> margin = std::nullopt,
             const std::string& witness = "") {
        checks.push_back(CheckResult{id, pass, margin, witness});
    }
    void param(const std::string& kv) { params.push_back(kv); }
    std::string summary() const;
};

std::string json_escape(const std::string& s);

}  // namespace zigzag

#endif

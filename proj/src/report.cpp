#include "zigzag/report.hpp"

#include <sstream>

namespace zigzag {

std::string VerificationReport::summary() const {
    std::ostringstream os;
    os << (passed() ? "PASS " : "FAIL ") << title;
    for (const auto& p : params) os << " " << p;
    if (auto w = worst_margin()) os << " margin=" << w->str();
    if (!passed()) {
        for (const auto& c : checks)
            if (!c.pass) {
                os << " [" << c.id;
                if (!c.witness.empty()) os << ": " << c.witness;
                os << "]";
                break;
            }
    }
    return os.str();
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace zigzag

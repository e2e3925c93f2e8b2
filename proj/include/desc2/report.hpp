#pragma once

#include <algorithm>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace desc2
{

/// One failed instance of a law, e.g. family "interchange" with the cells
/// of the offending quadruple.
struct Violation
{
    std::string family;
    std::string detail;
    std::vector<long long> witness;
};

/// Result of a validator: the violated instances in scan order. Empty means
/// the structure satisfies every law that was checked.
class ValidationReport
{
public:
    bool ok() const { return violations_.empty(); }
    const std::vector<Violation>& violations() const { return violations_; }

    void add(std::string family, std::string detail, std::vector<long long> witness = {})
    {
        violations_.push_back({std::move(family), std::move(detail), std::move(witness)});
    }

    void merge(const ValidationReport& other)
    {
        violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
    }

    std::set<std::string> families() const
    {
        std::set<std::string> out;
        for (const auto& v : violations_)
            out.insert(v.family);
        return out;
    }

    std::size_t count(const std::string& family) const
    {
        return static_cast<std::size_t>(std::count_if(
            violations_.begin(), violations_.end(), [&](const Violation& v) { return v.family == family; }));
    }

    friend std::ostream& operator<<(std::ostream& os, const ValidationReport& r)
    {
        if (r.ok())
            return os << "valid\n";
        for (const auto& v : r.violations_) {
            os << v.family << ": " << v.detail;
            if (!v.witness.empty()) {
                os << " [";
                for (std::size_t i = 0; i < v.witness.size(); ++i)
                    os << (i ? " " : "") << v.witness[i];
                os << "]";
            }
            os << "\n";
        }
        return os;
    }

private:
    std::vector<Violation> violations_;
};

} // namespace desc2

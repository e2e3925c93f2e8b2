#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace desc2
{

/// Cell identifiers are dense small integers; kNone marks an absent entry.
using Id = std::uint32_t;
inline constexpr Id kNone = std::numeric_limits<Id>::max();

/// A table refers to an identifier that does not exist, or is not total
/// where it has to be.
struct StructuralError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Two cells were composed although their boundaries do not match.
struct CompositionError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// A cell has the wrong source or target for the role it is asked to play.
struct TypingError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// An enumeration exceeded its node budget.
struct ResourceError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// A document could not be parsed or does not follow its schema.
struct ParseError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Counts partial assignments of an enumeration and fails loudly once the
/// allowance is spent. Not thread safe; give each worker its own.
class Budget
{
public:
    static constexpr std::uint64_t kDefault = 10'000'000;

    explicit Budget(std::uint64_t limit = kDefault, std::string what = "enumeration")
        : limit_(limit), what_(std::move(what))
    {
        if (limit_ == 0)
            throw std::invalid_argument("budget must be positive");
    }

    void tick(std::uint64_t n = 1)
    {
        used_ += n;
        if (used_ > limit_)
            throw ResourceError(what_ + ": node budget of " + std::to_string(limit_) + " exceeded");
    }

    std::uint64_t used() const { return used_; }
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
    std::string what_;
};

} // namespace desc2

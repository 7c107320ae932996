#ifndef ODDPROD_REPORT_HPP
#define ODDPROD_REPORT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oddprod {

/// Base of every error raised by the library. `rule()` is a stable,
/// machine-readable identifier such as "host.index" or "palette.exhausted".
class error : public std::runtime_error {
public:
    error(std::string rule, const std::string &message)
        : std::runtime_error(message), rule_(std::move(rule)) {}

    [[nodiscard]] const std::string &rule() const noexcept { return rule_; }

private:
    std::string rule_;
};

/// Caller supplied parameters outside their documented domain.
class invalid_parameter : public error {
public:
    using error::error;
};

/// A product vertex whose coordinates fall outside the factors.
class invalid_vertex : public error {
public:
    using error::error;
};

/// A precondition of an operation was not met by its arguments.
class contract_error : public error {
public:
    using error::error;
};

/// The greedy pass found no free colour. On a valid instance with the
/// theorem palette this cannot happen, so it indicates a bug or bad input.
class palette_exhausted : public error {
public:
    using error::error;
};

/// Document parsing or semantic decoding failed.
class format_error : public error {
public:
    using error::error;
};

struct violation {
    std::string rule;
    std::vector<std::int64_t> indices;
    std::string message;
};

struct validation_report {
    std::vector<violation> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }

    void add(std::string rule, std::vector<std::int64_t> indices, std::string message) {
        violations.push_back({std::move(rule), std::move(indices), std::move(message)});
    }

    void merge(const validation_report &other) {
        violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    }

    [[nodiscard]] bool has_rule(const std::string &rule) const {
        for (const auto &v : violations) {
            if (v.rule == rule) {
                return true;
            }
        }
        return false;
    }
};

} // namespace oddprod

#endif

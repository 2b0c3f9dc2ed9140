// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#pragma once

#include <stdexcept>
#include <string>

namespace schemaguard {

/// Malformed or invariant-violating input document. `locus()` names the
/// offending line/column or JSON field path.
class ParseError : public std::runtime_error
{
public:
    ParseError(std::string locus, const std::string &what)
        : std::runtime_error(locus.empty() ? what : locus + ": " + what)
        , locus_(std::move(locus))
        , detail_(what)
    {}

    const std::string &locus() const noexcept { return locus_; }
    const std::string &detail() const noexcept { return detail_; }

private:
    std::string locus_;
    std::string detail_;
};

/// Lookup of a ref, pin, part type or task id that does not exist.
class LookupError : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

/// Rule endpoint that is syntactically bad or names an unknown ref/pin.
/// Distinct from an endpoint that resolves to the empty net set.
class ResolutionError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Shipped data that is internally inconsistent (golden fails, edit inapplicable).
class DataError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Generator process could not be run or broke the stdio protocol.
class HarnessError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Statistic evaluated outside its domain.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

} // namespace schemaguard

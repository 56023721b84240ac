#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "pglb/unit.hpp"

namespace pglb {

enum class Reply : std::uint8_t { True, False, Divergent };

std::string_view replyName(Reply r);  // "T", "F", "D"
inline Reply toReply(bool b) { return b ? Reply::True : Reply::False; }

/// Either the empty service or a functional unit paired with its current
/// state. Units are compared by identity.
class Service {
public:
    Service() = default;  // Empty
    Service(UnitRef unit, UnitState state);

    static Service empty() { return {}; }

    bool isEmpty() const noexcept { return unit_ == nullptr; }
    const UnitRef& unit() const noexcept { return unit_; }
    /// Only valid when !isEmpty().
    const UnitState& state() const { return *state_; }

    /// "empty" or "<unitname>:<state literal>".
    std::string render() const;

    friend bool operator==(const Service& a, const Service& b);

private:
    UnitRef unit_;
    std::optional<UnitState> state_;
};

/// One method call: the reply and the service afterwards. Methods outside
/// the interface (and every method on Empty) give (D, Empty).
std::pair<Reply, Service> serviceStep(const Service& s, const std::string& method);

/// A finite map from foci to services; each focus occurs at most once.
class ServiceFamily {
public:
    ServiceFamily() = default;

    static ServiceFamily singleton(const std::string& focus, Service s);

    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }
    bool contains(const std::string& focus) const { return entries_.contains(focus); }
    const Service* find(const std::string& focus) const;
    const std::map<std::string, Service>& entries() const noexcept { return entries_; }

    /// Replaces the service under an existing focus.
    ServiceFamily with(const std::string& focus, Service s) const;

    /// Family literal: "f=counter:0,g=tape:|10"; the empty family is "{}".
    std::string render() const;

    friend bool operator==(const ServiceFamily&, const ServiceFamily&) = default;
    friend ServiceFamily compose(const ServiceFamily& c, const ServiceFamily& d);
    friend ServiceFamily encapsulate(const std::set<std::string>& foci, const ServiceFamily& c);

private:
    std::map<std::string, Service> entries_;
};

inline ServiceFamily emptyFamily() { return {}; }
inline ServiceFamily singleton(const std::string& focus, Service s) { return ServiceFamily::singleton(focus, std::move(s)); }

/// Union; a focus present on both sides maps to the empty service.
ServiceFamily compose(const ServiceFamily& c, const ServiceFamily& d);
/// Drops every entry whose focus is in `foci`.
ServiceFamily encapsulate(const std::set<std::string>& foci, const ServiceFamily& c);

}  // namespace pglb

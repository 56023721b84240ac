#include "pglb/service.hpp"

#include "pglb/errors.hpp"

namespace pglb {

std::string_view replyName(Reply r) {
    switch (r) {
        case Reply::True: return "T";
        case Reply::False: return "F";
        case Reply::Divergent: return "D";
    }
    return "?";
}

Service::Service(UnitRef unit, UnitState state) : unit_(std::move(unit)), state_(std::move(state)) {
    if (!unit_) throw std::invalid_argument("service needs a unit");
    if (spaceOf(*state_) != unit_->stateSpace())
        throw StateSpaceMismatch("unit " + unit_->name() + " works on " +
                                 std::string(stateSpaceName(unit_->stateSpace())) + " states");
}

std::string Service::render() const {
    if (isEmpty()) return "empty";
    return unit_->name() + ":" + renderState(*state_);
}

bool operator==(const Service& a, const Service& b) { return a.unit_ == b.unit_ && a.state_ == b.state_; }

std::pair<Reply, Service> serviceStep(const Service& s, const std::string& method) {
    if (s.isEmpty() || !s.unit()->has(method)) return {Reply::Divergent, Service::empty()};
    StepResult r = s.unit()->apply(method, s.state());
    return {toReply(r.reply), Service(s.unit(), std::move(r.state))};
}

ServiceFamily ServiceFamily::singleton(const std::string& focus, Service s) {
    if (!isValidFocus(focus)) throw LiteralError("invalid focus '" + focus + "'");
    ServiceFamily out;
    out.entries_.emplace(focus, std::move(s));
    return out;
}

const Service* ServiceFamily::find(const std::string& focus) const {
    const auto it = entries_.find(focus);
    return it == entries_.end() ? nullptr : &it->second;
}

ServiceFamily ServiceFamily::with(const std::string& focus, Service s) const {
    ServiceFamily out = *this;
    out.entries_.at(focus) = std::move(s);
    return out;
}

std::string ServiceFamily::render() const {
    if (entries_.empty()) return "{}";
    std::string out;
    for (const auto& [f, s] : entries_) {
        if (!out.empty()) out += ',';
        out += f + "=" + s.render();
    }
    return out;
}

ServiceFamily compose(const ServiceFamily& c, const ServiceFamily& d) {
    ServiceFamily out = c;
    for (const auto& [f, s] : d.entries_) {
        const auto [it, fresh] = out.entries_.emplace(f, s);
        if (!fresh) it->second = Service::empty();
    }
    return out;
}

ServiceFamily encapsulate(const std::set<std::string>& foci, const ServiceFamily& c) {
    ServiceFamily out = c;
    for (const auto& f : foci) out.entries_.erase(f);
    return out;
}

}  // namespace pglb

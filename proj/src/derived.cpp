#include "pglb/derived.hpp"

#include "pglb/errors.hpp"

namespace pglb {

DerivedOperation::DerivedOperation(InstructionSequence x, UnitRef h, RunOptions opts, std::string focus)
    : x_(std::move(x)), thread_(extract(x_)), h_(std::move(h)), opts_(std::move(opts)), focus_(std::move(focus)) {
    for (const auto& u : x_) {
        if (!u.isBasic()) continue;
        if (u.basic().focus != focus_)
            throw WrongFocus("'" + u.render() + "' does not use focus " + focus_);
        if (!h_->has(u.basic().method))
            throw UnknownMethod("'" + u.basic().method + "' is not in the interface of " + h_->name());
    }
}

DerivedOutcome DerivedOperation::operator()(const UnitState& s) const {
    const EvalOutcome o = runThread(thread_, singleton(focus_, Service(h_, s)), opts_);
    if (const auto* cv = std::get_if<Converged>(&o))
        return DerivedConverged{cv->reply == Reply::True, cv->family.find(focus_)->state(), cv->steps};
    if (const auto* pd = std::get_if<ProvenDivergent>(&o)) return DerivedUndefined{pd->cause};
    return DerivedUnknown{std::get<FuelExhausted>(o).steps};
}

}  // namespace pglb

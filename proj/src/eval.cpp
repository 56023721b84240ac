#include "pglb/eval.hpp"

#include <limits>
#include <unordered_map>
#include <vector>

namespace pglb {

std::string_view causeName(DivergenceCause c) {
    switch (c) {
        case DivergenceCause::Deadlock: return "deadlock";
        case DivergenceCause::MissingFocus: return "missing-focus";
        case DivergenceCause::ReplyD: return "reply-d";
        case DivergenceCause::Cycle: return "cycle";
        case DivergenceCause::UnboundedLoop: return "unbounded-loop";
    }
    return "?";
}

std::string renderTrace(const TraceEvent& e) {
    return "pc=" + std::to_string(e.position) + " action=" + renderAction(e.action) +
           " reply=" + std::string(replyName(e.reply)) + " state=" + e.family.render();
}

RunOptions withFuel(std::uint64_t fuel, bool proveGrowth) {
    RunOptions o;
    o.fuel = fuel;
    o.proveGrowth = proveGrowth;
    return o;
}

namespace {

// Proves divergence of a control loop whose services keep changing state.
// On a revisit of node p the loop body (the steps since the previous visit
// of p) repeats forever when every service either
//   - is back in the same state,
//   - only received methods whose reply is declared constant, or
//   - is a counter whose pred/iszero probes in the body keep their outcome
//     once the whole body is shifted by the net change d.
// Then the same replies come back, the same path is taken, and the argument
// applies again to the next round.
class GrowthProver {
public:
    void record(const std::string& focus, const Service& before, const std::string& method) {
        const MethodOperation& op = before.unit()->operation(method);
        Event e{focus, op.constantReply.has_value(), false, 0};
        if (before.unit()->lineage() == "counter") {
            e.setzero = method == "setzero";
            e.pre = std::get<Natural>(before.state());
        }
        log_.push_back(std::move(e));
    }

    bool revisits(NodeId node, const ServiceFamily& now) {
        const auto it = last_.find(node);
        if (it != last_.end() && repeats(it->second, now)) return true;
        last_.insert_or_assign(node, Visit{log_.size(), now});
        return false;
    }

private:
    struct Event {
        std::string focus;
        bool constant;
        bool setzero;
        Natural pre;
    };
    struct Visit {
        std::size_t logIndex;
        ServiceFamily family;
    };

    bool repeats(const Visit& v, const ServiceFamily& now) const {
        for (const auto& [focus, svc] : now.entries()) {
            const Service* then = v.family.find(focus);
            if (then == nullptr) return false;
            if (*then == svc) continue;
            if (svc.isEmpty() || then->isEmpty()) return false;
            if (!serviceRepeats(v.logIndex, focus, *then, svc)) return false;
        }
        return true;
    }

    bool serviceRepeats(std::size_t from, const std::string& focus, const Service& then, const Service& now) const {
        bool allConstant = true;
        bool setzeroSeen = false;
        Natural minPre = std::numeric_limits<Natural>::max();
        for (std::size_t i = from; i < log_.size(); ++i) {
            const Event& e = log_[i];
            if (e.focus != focus) continue;
            if (e.setzero) setzeroSeen = true;
            if (e.constant) continue;
            allConstant = false;
            if (!setzeroSeen && e.pre < minPre) minPre = e.pre;
        }
        if (allConstant) return true;
        if (then.unit() != now.unit() || then.unit()->lineage() != "counter") return false;
        const Natural a = std::get<Natural>(then.state());
        const Natural b = std::get<Natural>(now.state());
        if (!setzeroSeen) return b > a && minPre > 0;
        if (minPre == std::numeric_limits<Natural>::max()) return true;
        // minPre + (b - a) > 0
        return minPre > 0 && (b >= a || minPre > a - b);
    }

    std::vector<Event> log_;
    std::unordered_map<NodeId, Visit> last_;
};

}  // namespace

EvalOutcome runThread(const RegularThread& t, const ServiceFamily& c, const RunOptions& opts) {
    NodeId node = t.root();
    ServiceFamily family = c;
    std::uint64_t steps = 0;

    // Brent's cycle detection over (node, family)
    NodeId savedNode = node;
    ServiceFamily savedFamily = family;
    std::uint64_t power = 1;
    std::uint64_t lam = 0;

    std::optional<GrowthProver> prover;
    if (opts.proveGrowth) prover.emplace();

    while (true) {
        const ThreadNode& n = t.node(node);
        switch (n.kind) {
            case NodeKind::Deadlock: return ProvenDivergent{DivergenceCause::Deadlock, steps};
            case NodeKind::StopTrue: return Converged{Reply::True, std::move(family), steps};
            case NodeKind::StopFalse: return Converged{Reply::False, std::move(family), steps};
            case NodeKind::PostCond: break;
        }
        if (prover && prover->revisits(node, family)) return ProvenDivergent{DivergenceCause::UnboundedLoop, steps};
        if (steps >= opts.fuel) return FuelExhausted{steps};

        Reply r = Reply::True;
        if (!isTau(n.action)) {
            const BasicInstruction& b = std::get<BasicInstruction>(n.action);
            const Service* svc = family.find(b.focus);
            if (svc == nullptr) return ProvenDivergent{DivergenceCause::MissingFocus, steps};
            auto [reply, after] = serviceStep(*svc, b.method);
            if (reply == Reply::Divergent) return ProvenDivergent{DivergenceCause::ReplyD, steps};
            if (prover) prover->record(b.focus, *svc, b.method);
            family = family.with(b.focus, std::move(after));
            r = reply;
        }
        ++steps;
        if (opts.trace) opts.trace(TraceEvent{steps, t.position(node).value_or(node), n.action, r, family});
        node = r == Reply::True ? n.onTrue : n.onFalse;
        if (isTau(n.action)) node = n.onTrue;

        ++lam;
        if (node == savedNode && family == savedFamily)
            return ProvenDivergent{DivergenceCause::Cycle, steps, steps - lam, lam};
        if (lam == power) {
            savedNode = node;
            savedFamily = family;
            power *= 2;
            lam = 0;
        }
    }
}

std::optional<MachineConfiguration> advance(const RegularThread& t, MachineConfiguration c, std::uint64_t n) {
    for (std::uint64_t i = 0; i < n; ++i) {
        const ThreadNode& node = t.node(c.node);
        if (node.kind != NodeKind::PostCond) return std::nullopt;
        if (isTau(node.action)) {
            c.node = node.onTrue;
            continue;
        }
        const BasicInstruction& b = std::get<BasicInstruction>(node.action);
        const Service* svc = c.family.find(b.focus);
        if (svc == nullptr) return std::nullopt;
        auto [reply, after] = serviceStep(*svc, b.method);
        if (reply == Reply::Divergent) return std::nullopt;
        c.family = c.family.with(b.focus, std::move(after));
        c.node = reply == Reply::True ? node.onTrue : node.onFalse;
    }
    return c;
}

EvalOutcome run(const InstructionSequence& x, const ServiceFamily& c, const RunOptions& opts) {
    return runThread(extract(x), c, opts);
}

std::string renderOutcome(const EvalOutcome& o) {
    if (const auto* cv = std::get_if<Converged>(&o)) return std::string(replyName(cv->reply)) + " " + cv->family.render();
    if (const auto* pd = std::get_if<ProvenDivergent>(&o)) return "D(" + std::string(causeName(pd->cause)) + ")";
    return "UNKNOWN(" + std::to_string(std::get<FuelExhausted>(o).steps) + ")";
}

std::uint64_t stepsOf(const EvalOutcome& o) {
    return std::visit([](const auto& v) { return v.steps; }, o);
}

std::string_view tristateName(Tristate t) {
    switch (t) {
        case Tristate::Yes: return "Yes";
        case Tristate::No: return "No";
        case Tristate::Unknown: return "Unknown";
    }
    return "?";
}

std::optional<Reply> replyOf(const EvalOutcome& o) {
    if (const auto* cv = std::get_if<Converged>(&o)) return cv->reply;
    if (std::holds_alternative<ProvenDivergent>(o)) return Reply::Divergent;
    return std::nullopt;
}

std::optional<ServiceFamily> applyOf(const EvalOutcome& o) {
    if (const auto* cv = std::get_if<Converged>(&o)) return cv->family;
    if (std::holds_alternative<ProvenDivergent>(o)) return emptyFamily();
    return std::nullopt;
}

Tristate convergesOf(const EvalOutcome& o) {
    if (std::holds_alternative<Converged>(o)) return Tristate::Yes;
    if (std::holds_alternative<ProvenDivergent>(o)) return Tristate::No;
    return Tristate::Unknown;
}

std::optional<Reply> reply(const InstructionSequence& x, const ServiceFamily& c, const RunOptions& opts) {
    return replyOf(run(x, c, opts));
}

std::optional<ServiceFamily> apply(const InstructionSequence& x, const ServiceFamily& c, const RunOptions& opts) {
    return applyOf(run(x, c, opts));
}

Tristate converges(const InstructionSequence& x, const ServiceFamily& c, const RunOptions& opts) {
    return convergesOf(run(x, c, opts));
}

}  // namespace pglb

#include "pglb/thread.hpp"

#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "pglb/errors.hpp"

namespace pglb {

std::string renderAction(const Action& a) {
    if (isTau(a)) return "tau";
    return std::get<BasicInstruction>(a).render();
}

RegularThread::RegularThread(std::vector<ThreadNode> nodes, NodeId root, std::vector<std::optional<std::size_t>> positions)
    : nodes_(std::move(nodes)), root_(root), positions_(std::move(positions)) {
    if (root_ >= nodes_.size()) throw MalformedThread("root " + std::to_string(root_) + " is not a node");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const ThreadNode& n = nodes_[i];
        if (n.kind == NodeKind::PostCond && (n.onTrue >= nodes_.size() || n.onFalse >= nodes_.size()))
            throw MalformedThread("node " + std::to_string(i) + " references a missing node");
    }
    if (!positions_.empty() && positions_.size() != nodes_.size())
        throw MalformedThread("position table does not match node count");
}

RegularThread RegularThread::deadlock() { return RegularThread({ThreadNode::deadlock()}, 0); }
RegularThread RegularThread::stopTrue() { return RegularThread({ThreadNode::stopTrue()}, 0); }
RegularThread RegularThread::stopFalse() { return RegularThread({ThreadNode::stopFalse()}, 0); }

std::optional<std::size_t> RegularThread::position(NodeId id) const {
    if (positions_.empty()) return std::nullopt;
    return positions_.at(id);
}

RegularThread RegularThread::withRoot(NodeId root) const { return RegularThread(nodes_, root, positions_); }

std::size_t RegularThread::reachableCount() const {
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<NodeId> stack{root_};
    std::size_t count = 0;
    while (!stack.empty()) {
        const NodeId id = stack.back();
        stack.pop_back();
        if (seen[id]) continue;
        seen[id] = true;
        ++count;
        const ThreadNode& n = nodes_[id];
        if (n.kind == NodeKind::PostCond) {
            stack.push_back(n.onTrue);
            stack.push_back(n.onFalse);
        }
    }
    return count;
}

std::string RegularThread::dump() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const ThreadNode& n = nodes_[i];
        os << i << ": ";
        switch (n.kind) {
            case NodeKind::Deadlock: os << "D"; break;
            case NodeKind::StopTrue: os << "S+"; break;
            case NodeKind::StopFalse: os << "S-"; break;
            case NodeKind::PostCond: os << renderAction(n.action) << " ? " << n.onTrue << " : " << n.onFalse; break;
        }
        if (i == root_) os << "  (root)";
        os << '\n';
    }
    return os.str();
}

std::optional<std::size_t> chaseJumps(const InstructionSequence& x, std::size_t position) {
    const std::size_t k = x.size();
    std::set<std::size_t> visited;
    while (true) {
        if (position < 1 || position > k) return std::nullopt;
        const PrimitiveInstruction& u = x.at(position);
        if (!u.isJump()) return position;
        const std::uint64_t l = u.counter();
        if (l == 0 || !visited.insert(position).second) return std::nullopt;
        if (u.kind() == InstrKind::FwdJump) {
            if (l > k) return std::nullopt;
            position += static_cast<std::size_t>(l);
        } else {
            position = l >= position ? 0 : position - static_cast<std::size_t>(l);
        }
    }
}

namespace {

class Extractor {
public:
    explicit Extractor(const InstructionSequence& x) : x_(x) {}

    RegularThread run(std::size_t start) {
        const NodeId root = target(start);
        while (!pending_.empty()) {
            const std::size_t q = pending_.front();
            pending_.pop();
            const PrimitiveInstruction& u = x_.at(q);
            NodeId t = 0;
            NodeId f = 0;
            switch (u.kind()) {
                case InstrKind::Plain: t = f = target(q + 1); break;
                case InstrKind::PosTest:
                    t = target(q + 1);
                    f = target(q + 2);
                    break;
                case InstrKind::NegTest:
                    t = target(q + 2);
                    f = target(q + 1);
                    break;
                default: break;
            }
            nodes_[byPosition_.at(q)] = ThreadNode::postCond(u.basic(), t, f);
        }
        return RegularThread(std::move(nodes_), root, std::move(positions_));
    }

private:
    NodeId terminal(std::optional<NodeId>& slot, ThreadNode node) {
        if (!slot) {
            slot = nodes_.size();
            nodes_.push_back(node);
            positions_.push_back(std::nullopt);
        }
        return *slot;
    }

    NodeId target(std::size_t position) {
        const auto q = chaseJumps(x_, position);
        if (!q) return terminal(deadlock_, ThreadNode::deadlock());
        const PrimitiveInstruction& u = x_.at(*q);
        if (u.kind() == InstrKind::TermTrue) return terminal(stopTrue_, ThreadNode::stopTrue());
        if (u.kind() == InstrKind::TermFalse) return terminal(stopFalse_, ThreadNode::stopFalse());
        const auto it = byPosition_.find(*q);
        if (it != byPosition_.end()) return it->second;
        const NodeId id = nodes_.size();
        nodes_.push_back(ThreadNode::deadlock());  // filled in by run()
        positions_.push_back(*q);
        byPosition_.emplace(*q, id);
        pending_.push(*q);
        return id;
    }

    const InstructionSequence& x_;
    std::vector<ThreadNode> nodes_;
    std::vector<std::optional<std::size_t>> positions_;
    std::map<std::size_t, NodeId> byPosition_;
    std::queue<std::size_t> pending_;
    std::optional<NodeId> deadlock_, stopTrue_, stopFalse_;
};

}  // namespace

RegularThread extract(const InstructionSequence& x) { return extractFrom(x, 1); }

RegularThread extractFrom(const InstructionSequence& x, std::size_t position) { return Extractor(x).run(position); }

FiniteThread FiniteThread::deadlock() {
    static const auto n = std::make_shared<const Node>(Node{NodeKind::Deadlock, Tau{}, nullptr, nullptr, 0});
    return FiniteThread(n);
}

FiniteThread FiniteThread::stopTrue() {
    static const auto n = std::make_shared<const Node>(Node{NodeKind::StopTrue, Tau{}, nullptr, nullptr, 0});
    return FiniteThread(n);
}

FiniteThread FiniteThread::stopFalse() {
    static const auto n = std::make_shared<const Node>(Node{NodeKind::StopFalse, Tau{}, nullptr, nullptr, 0});
    return FiniteThread(n);
}

FiniteThread FiniteThread::postCond(const Action& action, const FiniteThread& onTrue, const FiniteThread& onFalse) {
    const FiniteThread& f = isTau(action) ? onTrue : onFalse;
    const std::size_t depth = 1 + std::max(onTrue.depth(), f.depth());
    return FiniteThread(std::make_shared<const Node>(Node{NodeKind::PostCond, action, onTrue.node_, f.node_, depth}));
}

std::string FiniteThread::render() const {
    switch (kind()) {
        case NodeKind::Deadlock: return "D";
        case NodeKind::StopTrue: return "S+";
        case NodeKind::StopFalse: return "S-";
        case NodeKind::PostCond: break;
    }
    return "(" + onTrue().render() + " <| " + renderAction(action()) + " |> " + onFalse().render() + ")";
}

namespace {

using NodePtr = const void*;

template <typename NodeT>
bool structurallyEqual(const NodeT* a, const NodeT* b, std::set<std::pair<NodePtr, NodePtr>>& known) {
    if (a == b) return true;
    if (a->kind != b->kind || a->depth != b->depth) return false;
    if (a->kind != NodeKind::PostCond) return true;
    if (a->action != b->action) return false;
    if (known.contains({a, b})) return true;
    const bool eq = structurallyEqual(a->onTrue.get(), b->onTrue.get(), known) &&
                    structurallyEqual(a->onFalse.get(), b->onFalse.get(), known);
    if (eq) known.insert({a, b});
    return eq;
}

}  // namespace

bool operator==(const FiniteThread& a, const FiniteThread& b) {
    std::set<std::pair<NodePtr, NodePtr>> known;
    return structurallyEqual(a.node_.get(), b.node_.get(), known);
}

FiniteThread project(std::size_t n, const RegularThread& t) {
    std::map<std::pair<NodeId, std::size_t>, FiniteThread> memo;
    auto go = [&](auto& self, NodeId id, std::size_t depth) -> FiniteThread {
        if (depth == 0) return FiniteThread::deadlock();
        const ThreadNode& node = t.node(id);
        switch (node.kind) {
            case NodeKind::Deadlock: return FiniteThread::deadlock();
            case NodeKind::StopTrue: return FiniteThread::stopTrue();
            case NodeKind::StopFalse: return FiniteThread::stopFalse();
            case NodeKind::PostCond: break;
        }
        const auto key = std::make_pair(id, depth);
        if (const auto it = memo.find(key); it != memo.end()) return it->second;
        FiniteThread out = FiniteThread::postCond(node.action, self(self, node.onTrue, depth - 1),
                                                  self(self, node.onFalse, depth - 1));
        memo.emplace(key, out);
        return out;
    };
    return go(go, t.root(), n);
}

FiniteThread project(std::size_t n, const FiniteThread& t) {
    if (n == 0) return FiniteThread::deadlock();
    if (t.kind() != NodeKind::PostCond) return t;
    return FiniteThread::postCond(t.action(), project(n - 1, t.onTrue()), project(n - 1, t.onFalse()));
}

bool bisimilar(const RegularThread& a, const RegularThread& b) {
    // Disjoint union of both systems, Tau postconditionals normalised.
    std::vector<ThreadNode> nodes = a.nodes();
    const std::size_t offset = nodes.size();
    for (ThreadNode n : b.nodes()) {
        if (n.kind == NodeKind::PostCond) {
            n.onTrue += offset;
            n.onFalse += offset;
        }
        nodes.push_back(std::move(n));
    }
    for (ThreadNode& n : nodes)
        if (n.kind == NodeKind::PostCond && isTau(n.action)) n.onFalse = n.onTrue;

    std::vector<std::size_t> block(nodes.size());
    std::size_t blockCount = 0;
    {
        std::map<std::pair<int, std::string>, std::size_t> initial;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const auto key = std::make_pair(static_cast<int>(nodes[i].kind),
                                            nodes[i].kind == NodeKind::PostCond ? renderAction(nodes[i].action) : "");
            block[i] = initial.try_emplace(key, initial.size()).first->second;
        }
        blockCount = initial.size();
    }
    while (true) {
        std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> signature;
        std::vector<std::size_t> next(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const ThreadNode& n = nodes[i];
            const auto key = n.kind == NodeKind::PostCond ? std::make_tuple(block[i], block[n.onTrue], block[n.onFalse])
                                                          : std::make_tuple(block[i], block[i], block[i]);
            next[i] = signature.try_emplace(key, signature.size()).first->second;
        }
        block = std::move(next);
        if (signature.size() == blockCount) break;
        blockCount = signature.size();
    }
    return block[a.root()] == block[b.root() + offset];
}

}  // namespace pglb

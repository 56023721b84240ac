#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pglb/syntax.hpp"

namespace pglb {

/// The internal action. Its reply is always True.
struct Tau {
    friend bool operator==(const Tau&, const Tau&) = default;
};

using Action = std::variant<Tau, BasicInstruction>;

std::string renderAction(const Action& a);
inline bool isTau(const Action& a) { return std::holds_alternative<Tau>(a); }

using NodeId = std::size_t;

enum class NodeKind : std::uint8_t { Deadlock, StopTrue, StopFalse, PostCond };

/// One equation of a guarded recursive specification: D, S+, S-, or
/// `onTrue <| action |> onFalse`.
struct ThreadNode {
    NodeKind kind = NodeKind::Deadlock;
    Action action = Tau{};
    NodeId onTrue = 0;
    NodeId onFalse = 0;

    static ThreadNode deadlock() { return {}; }
    static ThreadNode stopTrue() { return {NodeKind::StopTrue, Tau{}, 0, 0}; }
    static ThreadNode stopFalse() { return {NodeKind::StopFalse, Tau{}, 0, 0}; }
    static ThreadNode postCond(Action a, NodeId t, NodeId f) { return {NodeKind::PostCond, std::move(a), t, f}; }

    bool isTerminal() const noexcept { return kind != NodeKind::PostCond; }
};

/// A regular thread: a finite, closed system of thread equations with a
/// designated root.
class RegularThread {
public:
    /// Throws MalformedThread if the root or any successor reference is
    /// dangling. `positions`, when given, maps nodes to the 1-based
    /// instruction position they were extracted from.
    RegularThread(std::vector<ThreadNode> nodes, NodeId root, std::vector<std::optional<std::size_t>> positions = {});

    static RegularThread deadlock();
    static RegularThread stopTrue();
    static RegularThread stopFalse();

    NodeId root() const noexcept { return root_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    const ThreadNode& node(NodeId id) const { return nodes_.at(id); }
    const std::vector<ThreadNode>& nodes() const noexcept { return nodes_; }
    std::optional<std::size_t> position(NodeId id) const;

    /// Same equations, different root.
    RegularThread withRoot(NodeId root) const;

    /// Number of nodes reachable from the root.
    std::size_t reachableCount() const;

    /// Debug dump, one line per node: "id: action ? then : else" or
    /// "id: D|S+|S-". Not a stable format.
    std::string dump() const;

private:
    std::vector<ThreadNode> nodes_;
    NodeId root_;
    std::vector<std::optional<std::size_t>> positions_;
};

/// Follows jumps from `position` without executing basic instructions.
/// Returns the first non-jump position reached, or std::nullopt when the
/// chase leaves 1..k, hits a zero jump, or revisits a position (an infinite
/// jump chain).
std::optional<std::size_t> chaseJumps(const InstructionSequence& x, std::size_t position);

/// Thread extraction: the behaviour of `x` started at position 1.
RegularThread extract(const InstructionSequence& x);
/// Thread extraction started at an arbitrary position.
RegularThread extractFrom(const InstructionSequence& x, std::size_t position);

/// Finite-depth thread term with structural equality. Postconditionals on
/// Tau are kept in the normal form `p <| tau |> p`.
class FiniteThread {
public:
    static FiniteThread deadlock();
    static FiniteThread stopTrue();
    static FiniteThread stopFalse();
    static FiniteThread postCond(const Action& action, const FiniteThread& onTrue, const FiniteThread& onFalse);

    NodeKind kind() const noexcept { return node_->kind; }
    const Action& action() const { return node_->action; }
    FiniteThread onTrue() const { return FiniteThread(node_->onTrue); }
    FiniteThread onFalse() const { return FiniteThread(node_->onFalse); }
    std::size_t depth() const noexcept { return node_->depth; }

    /// Term rendering, e.g. "(S+ <| f.m |> D)".
    std::string render() const;

    friend bool operator==(const FiniteThread& a, const FiniteThread& b);

private:
    struct Node {
        NodeKind kind;
        Action action;
        std::shared_ptr<const Node> onTrue;
        std::shared_ptr<const Node> onFalse;
        std::size_t depth;
    };
    explicit FiniteThread(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

/// Depth-n approximation of the thread rooted at t.root().
FiniteThread project(std::size_t n, const RegularThread& t);
/// Projection of a finite thread (for pi_n . pi_m checks).
FiniteThread project(std::size_t n, const FiniteThread& t);

/// Bisimilarity of the two root nodes, with Tau postconditionals normalised
/// so that their False branch equals their True branch.
bool bisimilar(const RegularThread& a, const RegularThread& b);

}  // namespace pglb

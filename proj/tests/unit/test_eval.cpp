#include <gtest/gtest.h>

#include "gen.hpp"
#include "oracle.hpp"
#include "pglb/eval.hpp"
#include "pglb/halting.hpp"
#include "pglb/literal.hpp"

using namespace pglb;

namespace {

ServiceFamily counterAt(Natural n) { return singleton("f", Service(counterUnit(), n)); }
ServiceFamily dupAt(const std::string& v) { return singleton("f", Service(dupUnit(), TapeState::parse(v))); }

std::optional<Reply> toReply(oracle::Kind k) {
    switch (k) {
        case oracle::Kind::True: return Reply::True;
        case oracle::Kind::False: return Reply::False;
        case oracle::Kind::Divergent: return Reply::Divergent;
        default: return std::nullopt;
    }
}

}  // namespace

TEST(Run, SpecExamples) {
    const ServiceFamily u = parseFamily("f=counter:3,g=dup:|1");
    const EvalOutcome stop = run(parse("!t"), u);
    ASSERT_TRUE(std::holds_alternative<Converged>(stop));
    EXPECT_EQ(std::get<Converged>(stop).family, u);
    EXPECT_EQ(std::get<Converged>(stop).reply, Reply::True);

    const EvalOutcome missing = run(parse("+g.m;!t;!f"), counterAt(0));
    ASSERT_TRUE(std::holds_alternative<ProvenDivergent>(missing));
    EXPECT_EQ(std::get<ProvenDivergent>(missing).cause, DivergenceCause::MissingFocus);

    const EvalOutcome c = run(parse("f.setzero;f.succ;+f.iszero;!f;!t"), counterAt(0));
    ASSERT_TRUE(std::holds_alternative<Converged>(c));
    EXPECT_EQ(std::get<Converged>(c).reply, Reply::True);
    EXPECT_EQ(std::get<Converged>(c).family, counterAt(1));

    const EvalOutcome grow = run(parse("f.succ;\\#1"), counterAt(0), withFuel(1000));
    ASSERT_TRUE(std::holds_alternative<FuelExhausted>(grow));
    EXPECT_EQ(std::get<FuelExhausted>(grow).steps, 1000u);

    const EvalOutcome off = run(parse("-f.dup;!t"), dupAt("|1"));
    ASSERT_TRUE(std::holds_alternative<ProvenDivergent>(off));
    EXPECT_EQ(std::get<ProvenDivergent>(off).cause, DivergenceCause::Deadlock);
}

TEST(Run, ReplyApplyConverges) {
    EXPECT_EQ(reply(parse("!f"), emptyFamily()), Reply::False);
    EXPECT_EQ(reply(parse("#0"), counterAt(2)), Reply::Divergent);
    EXPECT_EQ(reply(parse("f.dup;!t"), dupAt("|10")), Reply::True);
    EXPECT_EQ(apply(parse("!t"), counterAt(5)), counterAt(5));
    EXPECT_EQ(apply(parse("#0"), counterAt(5)), emptyFamily());
    EXPECT_EQ(apply(parse("f.dup;!t"), dupAt("|1")), dupAt("|1:1"));
    EXPECT_EQ(converges(parse("!t"), counterAt(0)), Tristate::Yes);
    EXPECT_EQ(converges(parse("#0"), counterAt(0)), Tristate::No);
    for (std::uint64_t fuel : {10u, 1000u, 50000u})
        EXPECT_EQ(converges(parse("f.succ;\\#1"), counterAt(0), withFuel(fuel)), Tristate::Unknown);
    EXPECT_EQ(reply(parse("f.succ;\\#1"), counterAt(0), withFuel(1000)), std::nullopt);
    EXPECT_EQ(apply(parse("f.succ;\\#1"), counterAt(0), withFuel(1000)), std::nullopt);
}

TEST(Run, ReplyDAndCycle) {
    const EvalOutcome d = run(parse("f.nosuch;!t"), counterAt(0));
    EXPECT_EQ(std::get<ProvenDivergent>(d).cause, DivergenceCause::ReplyD);
    const EvalOutcome e = run(parse("f.m;!t"), singleton("f", Service::empty()));
    EXPECT_EQ(std::get<ProvenDivergent>(e).cause, DivergenceCause::ReplyD);
    const EvalOutcome loop = run(parse("f.iszero;\\#1"), counterAt(0));
    EXPECT_EQ(std::get<ProvenDivergent>(loop).cause, DivergenceCause::Cycle);
    EXPECT_EQ(renderOutcome(loop), "D(cycle)");
}

TEST(Run, RenderedOutcomes) {
    EXPECT_EQ(renderOutcome(run(parse("!t"), parseFamily("f=counter:0"))), "T f=counter:0");
    EXPECT_EQ(renderOutcome(run(parse("f.dup;!t"), parseFamily("f=dup:|10"))), "T f=dup:|10:10");
    EXPECT_EQ(renderOutcome(run(parse("#0"), parseFamily("f=counter:0"))), "D(deadlock)");
    EXPECT_EQ(renderOutcome(run(parse("f.succ;\\#1"), counterAt(0), withFuel(7))), "UNKNOWN(7)");
    EXPECT_EQ(renderOutcome(run(parse("!f"), emptyFamily())), "F {}");
}

TEST(Run, TauThreads) {
    // tau ; f.succ ; S+ with a tau loop elsewhere
    const RegularThread t({ThreadNode::postCond(Tau{}, 1, 3), ThreadNode::postCond(BasicInstruction("f", "succ"), 2, 2),
                           ThreadNode::stopTrue(), ThreadNode::deadlock()},
                          0);
    const EvalOutcome o = runThread(t, counterAt(0));
    ASSERT_TRUE(std::holds_alternative<Converged>(o));
    EXPECT_EQ(std::get<Converged>(o).family, counterAt(1));
    EXPECT_EQ(std::get<Converged>(o).steps, 2u);
    const RegularThread spin({ThreadNode::postCond(Tau{}, 0, 0)}, 0);
    EXPECT_EQ(std::get<ProvenDivergent>(runThread(spin, counterAt(0))).cause, DivergenceCause::Cycle);
}

TEST(Run, TraceLines) {
    std::vector<std::string> lines;
    RunOptions o;
    o.trace = [&](const TraceEvent& e) { lines.push_back(renderTrace(e)); };
    run(parse("f.setzero;+f.iszero;!t;!f"), counterAt(4), o);
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0], "pc=1 action=f.setzero reply=T state=f=counter:0");
    EXPECT_EQ(lines[1], "pc=2 action=f.iszero reply=T state=f=counter:0");
}

TEST(Run, AgreesWithOracle) {
    gen::Rng rng(77);
    int resolved = 0;
    for (int i = 0; i < 3000; ++i) {
        const bool counter = gen::below(rng, 2) == 0;
        const InstructionSequence x = counter ? gen::program(rng, {"setzero", "succ", "pred", "iszero"}, 6)
                                              : gen::program(rng, {"dup", "mvr", "mvl", "test:1", "delete"}, 6);
        const ServiceFamily u = counter ? counterAt(gen::below(rng, 3))
                                        : singleton("f", Service(gen::below(rng, 2) ? dupUnit() : tapeBasicUnit(),
                                                                 gen::tape(rng, 3)));
        const EvalOutcome o = run(x, u, withFuel(20000));
        const oracle::Result r = oracle::run(x, u, 20000);
        if (r.kind == oracle::Kind::Unknown || std::holds_alternative<FuelExhausted>(o)) continue;
        ++resolved;
        EXPECT_EQ(replyOf(o), toReply(r.kind)) << render(x) << " on " << u.render();
        EXPECT_EQ(applyOf(o), r.family) << render(x) << " on " << u.render();
    }
    EXPECT_GT(resolved, 2000);
}

TEST(Run, DeterministicAndMonotoneInFuel) {
    gen::Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        const InstructionSequence x = gen::program(rng, {"setzero", "succ", "pred", "iszero"}, 5);
        const ServiceFamily u = counterAt(gen::below(rng, 3));
        const EvalOutcome a = run(x, u, withFuel(5000));
        const EvalOutcome b = run(x, u, withFuel(5000));
        EXPECT_EQ(renderOutcome(a), renderOutcome(b));
        EXPECT_EQ(stepsOf(a), stepsOf(b));
        if (std::holds_alternative<FuelExhausted>(a)) continue;
        for (std::uint64_t m : {stepsOf(a), stepsOf(a) + 1, stepsOf(a) * 3 + 10}) {
            if (m == 0) continue;
            const EvalOutcome c = run(x, u, withFuel(m));
            EXPECT_EQ(renderOutcome(c), renderOutcome(a)) << render(x);
            EXPECT_EQ(stepsOf(c), stepsOf(a));
        }
    }
}

TEST(Run, CycleWitnessReplays) {
    gen::Rng rng(13);
    int cycles = 0;
    for (int i = 0; i < 10000; ++i) {
        const InstructionSequence x = gen::program(rng, {"setzero", "succ", "pred", "iszero"}, 6);
        const ServiceFamily u = counterAt(gen::below(rng, 3));
        const RegularThread t = extract(x);
        const EvalOutcome o = runThread(t, u, withFuel(5000));
        const auto* pd = std::get_if<ProvenDivergent>(&o);
        if (pd == nullptr || pd->cause != DivergenceCause::Cycle) continue;
        ++cycles;
        const MachineConfiguration start{t.root(), u};
        const auto a = advance(t, start, pd->cycleFrom);
        const auto b = advance(t, start, pd->cycleFrom + pd->cycleLength);
        ASSERT_TRUE(a && b) << render(x);
        EXPECT_EQ(*a, *b) << render(x);
        EXPECT_GT(pd->cycleLength, 0u);
    }
    EXPECT_GT(cycles, 50);
}

TEST(GrowthProver, ProvesCounterAndDupLoops) {
    const RunOptions p = withFuel(100000, true);
    EXPECT_EQ(std::get<ProvenDivergent>(run(parse("f.succ;\\#1"), counterAt(0), p)).cause, DivergenceCause::UnboundedLoop);
    EXPECT_EQ(std::get<ProvenDivergent>(run(parse("f.dup;\\#1"), dupAt("|1"), p)).cause, DivergenceCause::UnboundedLoop);
    // pred/iszero probes stay nonzero while the counter grows by two per round
    EXPECT_EQ(std::get<ProvenDivergent>(run(parse("f.succ;f.succ;-f.iszero;\\#3;!t"), counterAt(1), p)).cause,
              DivergenceCause::UnboundedLoop);
    // a count-down loop terminates and must not be claimed divergent
    EXPECT_TRUE(std::holds_alternative<Converged>(run(parse("+f.pred;\\#1;!t"), counterAt(50), p)));
    // setzero resets the loop
    EXPECT_EQ(convergesOf(run(parse("f.setzero;f.succ;f.succ;+f.pred;\\#4;!t"), counterAt(5), p)), Tristate::No);
}

TEST(GrowthProver, NeverContradictsLongRuns) {
    gen::Rng rng(21);
    int proven = 0;
    for (int i = 0; i < 4000; ++i) {
        const InstructionSequence x = gen::program(rng, {"setzero", "succ", "pred", "iszero"}, 6);
        const ServiceFamily u = counterAt(gen::below(rng, 4));
        const EvalOutcome fast = run(x, u, withFuel(100000, true));
        const EvalOutcome slow = run(x, u, withFuel(100000, false));
        if (std::holds_alternative<Converged>(slow) || std::holds_alternative<Converged>(fast))
            EXPECT_EQ(renderOutcome(fast), renderOutcome(slow)) << render(x) << " from " << u.render();
        if (const auto* pd = std::get_if<ProvenDivergent>(&fast); pd && pd->cause == DivergenceCause::UnboundedLoop) {
            ++proven;
            EXPECT_FALSE(std::holds_alternative<Converged>(slow)) << render(x);
        }
    }
    EXPECT_GT(proven, 20);
}

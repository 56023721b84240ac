#include <gtest/gtest.h>

#include "gen.hpp"
#include "pglb/derived.hpp"
#include "pglb/errors.hpp"
#include "pglb/halting.hpp"
#include "pglb/literal.hpp"
#include "pglb/unit.hpp"

using namespace pglb;

namespace {

TapeState t(const std::string& literal) { return TapeState::parse(literal); }

StepResult tapeStep(const std::string& method, const std::string& literal) {
    return tapeBasicUnit()->apply(method, t(literal));
}

}  // namespace

TEST(Tape, LiteralRoundTrip) {
    EXPECT_EQ(t("10|0:11").left, "10");
    EXPECT_EQ(t("10|0:11").right, "0:11");
    EXPECT_EQ(t("|10").render(), "|10");
    EXPECT_EQ(t("1|").content(), "1");
    EXPECT_EQ(t("1:|0").colonCount(), 1u);
    EXPECT_THROW(t("102"), LiteralError);
    EXPECT_THROW(t("1|0|1"), LiteralError);
    EXPECT_THROW(t("12|"), LiteralError);
}

TEST(Interface, Units) {
    EXPECT_TRUE(interface(*emptyUnit(StateSpace::Tape)).empty());
    EXPECT_EQ(interface(*counterUnit()), (std::set<std::string>{"iszero", "pred", "setzero", "succ"}));
    EXPECT_EQ(interface(*dupUnit()), (std::set<std::string>{"dup"}));
    EXPECT_EQ(tapeBasicUnit()->interface().size(), 10u);
    EXPECT_EQ(interface(*haltingEmptyUnit()), (std::set<std::string>{"halting"}));
}

TEST(Restrict, Basics) {
    const UnitRef iz = restrict(counterUnit(), {"iszero"});
    EXPECT_EQ(interface(*iz), (std::set<std::string>{"iszero"}));
    EXPECT_EQ(restrict(counterUnit(), counterUnit()->interface()), counterUnit());
    EXPECT_TRUE(interface(*restrict(counterUnit(), {})).empty());
    EXPECT_THROW(restrict(counterUnit(), {"dup"}), NotInInterface);
    EXPECT_EQ(iz->lineage(), "counter");
}

TEST(Restrict, SubsetOfRelation) {
    const UnitRef r = restrict(tapeBasicUnit(), {"mvl", "write:1"});
    for (const auto& s : allTapeStates(3))
        for (const auto& m : r->interface()) EXPECT_EQ(r->apply(m, s), tapeBasicUnit()->apply(m, s));
}

TEST(Extend, AddsAndRejectsClash) {
    const UnitRef e = extend(counterUnit(), {dupOperation()}, "weird");
    EXPECT_TRUE(e->has("dup"));
    EXPECT_TRUE(e->lineage().empty());
    EXPECT_THROW(extend(counterUnit(), {counterUnit()->operation("succ")}), std::invalid_argument);
}

TEST(Unit, RejectsDuplicateNames) {
    EXPECT_THROW(makeUnit("x", StateSpace::Tape, {dupOperation(), dupOperation()}), std::invalid_argument);
    EXPECT_THROW(counterUnit()->apply("succ", TapeState()), StateSpaceMismatch);
    EXPECT_THROW(counterUnit()->apply("dup", Natural{0}), NotInInterface);
}

TEST(Counter, Operations) {
    const UnitRef c = counterUnit();
    EXPECT_EQ(c->apply("succ", Natural{0}), (StepResult{true, Natural{1}}));
    EXPECT_EQ(c->apply("iszero", Natural{0}), (StepResult{true, Natural{0}}));
    EXPECT_EQ(c->apply("iszero", Natural{4}), (StepResult{false, Natural{4}}));
    EXPECT_EQ(c->apply("pred", Natural{0}), (StepResult{false, Natural{0}}));
    EXPECT_EQ(c->apply("pred", Natural{3}), (StepResult{true, Natural{2}}));
    EXPECT_EQ(c->apply("setzero", Natural{9}), (StepResult{true, Natural{0}}));
}

TEST(Dup, Examples) {
    EXPECT_EQ(dupOp(t("|10")), (StepResult{true, t("|10:10")}));
    EXPECT_EQ(dupOp(t("|0:11")), (StepResult{true, t("|0:0:11")}));
    EXPECT_EQ(dupOp(t("1|0:11")), dupOp(t("|10:11")));
    EXPECT_EQ(dupOp(t("1|0:11")).state, UnitState(t("|10:10:11")));
    EXPECT_EQ(dupOp(t("|")), (StepResult{true, t("|:")}));
    EXPECT_EQ(dupOp(t("|:1")), (StepResult{true, t("|::1")}));
}

TEST(Dup, ShapeProperty) {
    gen::Rng rng(2);
    for (int i = 0; i < 500; ++i) {
        const std::string b = gen::bits(rng, 5);
        const TapeState w = gen::tape(rng, 5);
        const std::string rest = w.content();
        const TapeState in = TapeState::atStart(b + ":" + rest);
        EXPECT_EQ(std::get<TapeState>(dupOp(in).state), TapeState::atStart(b + ":" + b + ":" + rest));
        const TapeState plain = TapeState::atStart(b);
        EXPECT_EQ(std::get<TapeState>(dupOp(plain).state), TapeState::atStart(b + ":" + b));
    }
}

TEST(Dup, ColonCountGrowsByOne) {
    for (const auto& v : allTapeStates(5)) {
        const auto after = std::get<TapeState>(dupOp(v).state);
        EXPECT_EQ(after.colonCount(), v.rewound().colonCount() + 1) << v.render();
    }
}

TEST(TapeBasic, Moves) {
    EXPECT_EQ(tapeStep("mvr", "|10"), (StepResult{true, t("1|0")}));
    EXPECT_EQ(tapeStep("mvl", "|10"), (StepResult{false, t("|10")}));
    EXPECT_EQ(tapeStep("mvl", "10|"), (StepResult{true, t("1|0")}));
    EXPECT_EQ(tapeStep("mvr", "10|"), (StepResult{false, t("10|")}));
}

TEST(TapeBasic, TestsWritesDelete) {
    EXPECT_EQ(tapeStep("write:colon", "|"), (StepResult{true, t("|:")}));
    EXPECT_EQ(tapeStep("write:1", "0|0"), (StepResult{true, t("0|1")}));
    EXPECT_EQ(tapeStep("write:0", "0|"), (StepResult{true, t("0|0")}));
    EXPECT_TRUE(tapeStep("test:0", "1|0").reply);
    EXPECT_FALSE(tapeStep("test:1", "1|0").reply);
    EXPECT_FALSE(tapeStep("test:colon", "1|").reply);
    EXPECT_TRUE(tapeStep("test:colon", "|:").reply);
    EXPECT_TRUE(tapeStep("test:end", "1|").reply);
    EXPECT_FALSE(tapeStep("test:end", "|1").reply);
    EXPECT_EQ(tapeStep("delete", "1|01"), (StepResult{true, t("1|1")}));
    EXPECT_EQ(tapeStep("delete", "1|"), (StepResult{false, t("1|")}));
}

TEST(TapeBasic, TotalAndColonDeclarations) {
    const auto states = allTapeStates(5);
    EXPECT_TRUE(colonDeclarationViolations(*tapeBasicUnit(), states).empty());
    for (const auto& [m, op] : tapeBasicUnit()->operations())
        for (const auto& s : states) {
            const StepResult r = op.step(s);
            const auto& after = std::get<TapeState>(r.state);
            if (m != "write:colon") EXPECT_LE(after.colonCount(), s.colonCount()) << m << " " << s.render();
            if (op.constantReply) EXPECT_EQ(r.reply, *op.constantReply);
        }
    // a lying declaration is caught
    const UnitRef liar = makeUnit("liar", StateSpace::Tape,
                                  {MethodOperation{"dup", [](const UnitState& s) { return dupOp(std::get<TapeState>(s)); },
                                                   false, std::nullopt}});
    EXPECT_EQ(colonDeclarationViolations(*liar, states), std::vector<std::string>{"dup"});
}

TEST(TapeBasic, AllStatesCount) {
    // sum over n of 3^n * (n + 1)
    std::size_t expected = 0;
    std::size_t p = 1;
    for (std::size_t n = 0; n <= 4; ++n, p *= 3) expected += p * (n + 1);
    EXPECT_EQ(allTapeStates(4).size(), expected);
}

TEST(DupWitness, AgreesOnSmallStates) {
    const DerivedOperation d(dupWitnessProgram(), tapeBasicUnit(), withFuel(100000));
    for (const auto& s : allTapeStates(4)) {
        const DerivedOutcome o = d(s);
        ASSERT_TRUE(std::holds_alternative<DerivedConverged>(o)) << s.render();
        const auto& c = std::get<DerivedConverged>(o);
        const StepResult expected = dupOp(s);
        EXPECT_EQ(c.reply, expected.reply) << s.render();
        EXPECT_EQ(c.state, expected.state) << s.render();
    }
}

TEST(Literal, Families) {
    const ServiceFamily f = parseFamily("f=counter:0,g=tape:|10:10");
    EXPECT_EQ(f.size(), 2u);
    EXPECT_EQ(f.render(), "f=counter:0,g=tapebasic:|10:10");
    EXPECT_EQ(parseFamily(f.render()), f);
    EXPECT_EQ(parseFamily("{}"), emptyFamily());
    EXPECT_EQ(parseFamily(""), emptyFamily());
    EXPECT_EQ(parseFamily("f=empty").render(), "f=empty");
    EXPECT_EQ(parseFamily("f=counter:1,f=counter:2"), singleton("f", Service::empty()));
    EXPECT_THROW(parseFamily("f=nosuch:0"), LiteralError);
    EXPECT_THROW(parseFamily("f=counter:x"), LiteralError);
    EXPECT_THROW(parseFamily("f=counter:-1"), LiteralError);
    EXPECT_THROW(parseFamily("F=counter:0"), LiteralError);
    EXPECT_THROW(parseFamily("f"), LiteralError);
    EXPECT_THROW(parseFamily("f=dup:10"), LiteralError);
    EXPECT_EQ(unitByName("halting-empty"), haltingEmptyUnit());
}

#include "cli/commands.hpp"

#include <ostream>

#include "CLI11.hpp"
#include "pglb/derived.hpp"
#include "pglb/errors.hpp"
#include "pglb/eval.hpp"
#include "pglb/literal.hpp"
#include "pglb/thread.hpp"

namespace pglb::cli {

using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultFuel = 1'000'000;
constexpr std::size_t kMaxSweepLength = 5;

json outcomeJson(const EvalOutcome& o) {
    json j;
    j["steps"] = stepsOf(o);
    if (const auto* cv = std::get_if<Converged>(&o)) {
        j["outcome"] = "converged";
        j["reply"] = replyName(cv->reply);
        j["family"] = cv->family.render();
    } else if (const auto* pd = std::get_if<ProvenDivergent>(&o)) {
        j["outcome"] = "divergent";
        j["cause"] = causeName(pd->cause);
        if (pd->cause == DivergenceCause::Cycle) {
            j["cycleFrom"] = pd->cycleFrom;
            j["cycleLength"] = pd->cycleLength;
        }
    } else {
        j["outcome"] = "unknown";
    }
    return j;
}

std::string verdictLine(const SolverVerdict& v) {
    std::string line(verdictName(v));
    if (const auto* d = std::get_if<RefutedByDivergence>(&v)) {
        line += " witness=" + render(d->witnessProgram) + " state=" + d->witnessState.render() +
                " cause=" + std::string(causeName(d->cause)) + " steps=" + std::to_string(d->steps);
    } else if (const auto* w = std::get_if<RefutedByWrongReply>(&v)) {
        line += " witness=" + render(w->witnessProgram) + " state=" + w->witnessState.render() +
                " claimed=" + std::string(replyName(w->claimed)) + " actual=" + std::string(tristateName(w->actual)) +
                " steps=" + std::to_string(w->steps);
    } else {
        line += " budget=" + std::to_string(std::get<NotRefuted>(v).budget);
    }
    return line;
}

struct Context {
    std::ostream& out;
    bool json = false;
    int code = Ok;
};

void emit(Context& ctx, const json& j, const std::string& text) {
    if (ctx.json)
        ctx.out << j.dump() << '\n';
    else
        ctx.out << text << '\n';
}

}  // namespace

json verdictRecord(const InstructionSequence& candidate, const SolverVerdict& v) {
    json j{{"candidate", render(candidate)}, {"verdict", verdictName(v)}, {"witnessProgram", nullptr},
           {"witnessState", nullptr},        {"claimed", nullptr},        {"actual", nullptr},
           {"steps", nullptr}};
    if (const auto* d = std::get_if<RefutedByDivergence>(&v)) {
        j["witnessProgram"] = render(d->witnessProgram);
        j["witnessState"] = d->witnessState.render();
        j["actual"] = "D(" + std::string(causeName(d->cause)) + ")";
        j["steps"] = d->steps;
    } else if (const auto* w = std::get_if<RefutedByWrongReply>(&v)) {
        j["witnessProgram"] = render(w->witnessProgram);
        j["witnessState"] = w->witnessState.render();
        j["claimed"] = replyName(w->claimed);
        j["actual"] = tristateName(w->actual);
        j["steps"] = w->steps;
    } else {
        j["steps"] = std::get<NotRefuted>(v).budget;
    }
    return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Run and analyse PGLBbt instruction sequences against functional-unit services"};
    app.require_subcommand(1);
    Context ctx{out};
    app.add_flag("--json", ctx.json, "machine-readable output");

    // parse
    std::string program;
    bool showThread = false;
    auto* parseCmd = app.add_subcommand("parse", "check a program and print its canonical form");
    parseCmd->add_option("program", program)->required();
    parseCmd->add_flag("--thread", showThread, "also dump the extracted thread");
    parseCmd->add_flag("--json", ctx.json);
    parseCmd->callback([&] {
        const InstructionSequence x = parse(program);
        json j{{"program", render(x)}, {"length", x.size()}};
        std::string text = render(x);
        if (showThread) {
            const RegularThread t = extract(x);
            j["thread"] = t.dump();
            text += "\n" + t.dump();
            text.pop_back();
        }
        emit(ctx, j, text);
    });

    // run
    std::string family;
    std::uint64_t fuel = kDefaultFuel;
    bool trace = false;
    bool proveGrowth = false;
    auto* runCmd = app.add_subcommand("run", "execute a program against a service family");
    runCmd->add_option("program", program)->required();
    runCmd->add_option("family", family, "e.g. f=counter:0,g=tape:|10:10")->required();
    runCmd->add_option("--fuel", fuel, "step budget")->check(CLI::PositiveNumber);
    runCmd->add_flag("--trace", trace, "print one line per step");
    runCmd->add_flag("--prove-growth", proveGrowth, "also prove divergence of loops with growing state");
    runCmd->add_flag("--json", ctx.json);
    runCmd->callback([&] {
        const InstructionSequence x = parse(program);
        const ServiceFamily c = parseFamily(family);
        RunOptions opts = withFuel(fuel, proveGrowth);
        std::vector<std::string> lines;
        if (trace) opts.trace = [&](const TraceEvent& e) { lines.push_back(renderTrace(e)); };
        const EvalOutcome o = pglb::run(x, c, opts);
        json j = outcomeJson(o);
        std::string text;
        if (trace) {
            j["trace"] = lines;
            for (const auto& l : lines) text += l + "\n";
        }
        emit(ctx, j, text + renderOutcome(o));
    });

    // transform
    bool flagSwap = false;
    bool flagF2d = false;
    bool flagDiagI = false;
    bool flagDiagS = false;
    bool flagDiagS2 = false;
    auto* transformCmd = app.add_subcommand("transform", "apply program transformations, left to right");
    transformCmd->add_option("program", program)->required();
    auto* optSwap = transformCmd->add_flag("--swap", flagSwap, "exchange !t and !f");
    auto* optF2d = transformCmd->add_flag("--f2d", flagF2d, "replace !f by #0");
    auto* optDiagI = transformCmd->add_flag("--diag-interpreter", flagDiagI, "f.dup;swap(x)");
    auto* optDiagS = transformCmd->add_flag("--diag-solver", flagDiagS, "f.dup;f2d(swap(x))");
    auto* optDiagS2 = transformCmd->add_flag("--diag-solver-alt", flagDiagS2, "f2d(swap(f.dup;x))");
    transformCmd->add_flag("--json", ctx.json);
    transformCmd->callback([&] {
        InstructionSequence x = parse(program);
        for (const CLI::Option* o : transformCmd->parse_order()) {
            if (o == optSwap) x = swap(x);
            if (o == optF2d) x = f2d(x);
            if (o == optDiagI) x = diagInterpreter(x);
            if (o == optDiagS) x = diagSolver(x);
            if (o == optDiagS2) x = diagSolverAlt(x);
        }
        emit(ctx, json{{"program", render(x)}}, render(x));
    });

    // encode / decode
    auto* encodeCmd = app.add_subcommand("encode", "print the bit encoding of a program");
    encodeCmd->add_option("program", program)->required();
    encodeCmd->add_flag("--json", ctx.json);
    encodeCmd->callback([&] {
        const std::string bits = encode(parse(program)).str();
        emit(ctx, json{{"bits", bits}}, bits);
    });

    std::string bits;
    auto* decodeCmd = app.add_subcommand("decode", "recover a program from its bit encoding");
    decodeCmd->add_option("bits", bits)->required();
    decodeCmd->add_flag("--json", ctx.json);
    decodeCmd->callback([&] {
        const auto x = decode(std::string_view(bits));
        if (!x) {
            ctx.code = Negative;
            emit(ctx, json{{"program", nullptr}, {"result", "NotAnEncoding"}}, "NotAnEncoding");
            return;
        }
        emit(ctx, json{{"program", render(*x)}, {"result", "ok"}}, render(*x));
    });

    // decide
    std::string unitName;
    std::string state;
    auto* decideCmd = app.add_subcommand("decide", "decide convergence for the dup or halting-empty unit");
    decideCmd->add_option("--unit", unitName)->required()->check(CLI::IsMember({"dup", "halting-empty"}));
    decideCmd->add_option("program", program)->required();
    decideCmd->add_option("state", state, "tape literal left|right")->required();
    decideCmd->add_flag("--json", ctx.json);
    decideCmd->callback([&] {
        const InstructionSequence x = parse(program);
        const TapeState v = TapeState::parse(state);
        const bool d = unitName == "dup" ? decideHaltingDup(x, v) : decideHaltingEmptyExt(x, v);
        emit(ctx, json{{"unit", unitName}, {"program", render(x)}, {"state", v.render()}, {"converges", d}},
             d ? "True" : "False");
    });

    // validate-solver
    std::string form = "first";
    auto* validateCmd = app.add_subcommand("validate-solver", "try to refute a candidate halting solver over {dup}");
    validateCmd->add_option("candidate", program)->required();
    validateCmd->add_option("--fuel", fuel)->check(CLI::PositiveNumber);
    validateCmd->add_option("--form", form, "diagonal form")->check(CLI::IsMember({"first", "second"}));
    validateCmd->add_flag("--json", ctx.json);
    validateCmd->callback([&] {
        const InstructionSequence x = parse(program);
        const SolverVerdict v =
            validateSolver(x, dupInstance(), fuel, form == "first" ? DiagonalForm::First : DiagonalForm::Second);
        if (isRefuted(v)) ctx.code = Negative;
        emit(ctx, verdictRecord(x, v), verdictLine(v));
    });

    // check-interpreter
    auto* interpCmd = app.add_subcommand("check-interpreter", "check a candidate interpreter over {dup}");
    interpCmd->add_option("candidate", program)->required();
    interpCmd->add_option("--fuel", fuel)->check(CLI::PositiveNumber);
    interpCmd->add_flag("--json", ctx.json);
    interpCmd->callback([&] {
        const InstructionSequence x = parse(program);
        const InterpreterReport r = checkInterpreter(x, dupInstance(), defaultInterpreterSamples(), fuel);
        json samples = json::array();
        std::string text;
        for (const auto& s : r.samples) {
            samples.push_back({{"program", render(s.program)},
                               {"state", s.state.render()},
                               {"status", sampleStatusName(s.status)},
                               {"detail", s.detail}});
            text += std::string(sampleStatusName(s.status)) + " " + render(s.program) + " on " + s.state.render() +
                    (s.detail.empty() ? "" : " (" + s.detail + ")") + "\n";
        }
        const DiagonalReport& d = r.diagonal;
        json j{{"candidate", render(x)},
               {"samples", samples},
               {"diagonal",
                {{"program", render(d.program)},
                 {"input", d.input.render()},
                 {"candidate", outcomeJson(d.candidate)},
                 {"direct", outcomeJson(d.direct)},
                 {"fails", d.fails},
                 {"detail", d.detail}}},
               {"passed", r.passed()}};
        text += std::string("diagonal ") + render(d.program) + ": candidate " + renderOutcome(d.candidate) +
                ", direct " + renderOutcome(d.direct) + " (" + d.detail + ")\n";
        text += r.passed() ? "passed" : "failed";
        if (!r.passed()) ctx.code = Negative;
        emit(ctx, j, text);
    });

    // sweep
    std::string suite;
    std::size_t maxLen = 3;
    fuel = kDefaultFuel;
    std::uint64_t sweepFuel = 10'000;
    auto* sweepCmd = app.add_subcommand("sweep", "exhaustive agreement checks over small programs");
    sweepCmd->add_option("--suite", suite)->required()->check(CLI::IsMember({"dup-decider", "empty-halting", "diagonal"}));
    sweepCmd->add_option("--max-len", maxLen, "longest program enumerated (at most 5)")
        ->check(CLI::Range(std::size_t{1}, kMaxSweepLength));
    sweepCmd->add_option("--fuel", sweepFuel)->check(CLI::PositiveNumber);
    sweepCmd->add_flag("--json", ctx.json);
    sweepCmd->callback([&] {
        const SweepResult r = suite == "dup-decider"     ? sweepDupDecider(maxLen, sweepFuel)
                              : suite == "empty-halting" ? sweepEmptyHalting(maxLen, sweepFuel)
                                                         : sweepDiagonal(maxLen, sweepFuel);
        if (!r.ok()) ctx.code = Negative;
        json j{{"suite", r.suite},           {"programs", r.programs},          {"agree", r.agree},
               {"disagree", r.disagree},     {"refuted", r.refuted},            {"notRefuted", r.notRefuted},
               {"counterexamples", r.counterexamples}};
        std::string text;
        for (const auto& c : r.counterexamples) text += "counterexample: " + c + "\n";
        emit(ctx, j, text + r.summary());
    });

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return Usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return Usage;
    }
    return ctx.code;
}

}  // namespace pglb::cli

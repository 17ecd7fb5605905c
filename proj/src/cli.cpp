#include "twoseq/cli.hpp"

#include "twoseq/corpus.hpp"
#include "twoseq/cutelim.hpp"
#include "twoseq/ltl.hpp"
#include "twoseq/parser.hpp"
#include "twoseq/semantics.hpp"
#include "twoseq/transform.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace twoseq {

namespace {

using Json = nlohmann::ordered_json;

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Usage("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void writeFile(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Usage("cannot write " + path);
}

template <class F>
auto parsing(const std::string& path, F&& f) {
    try {
        return f(readFile(path));
    } catch (const ParseError& e) {
        throw Usage(path + ":" + e.what());
    } catch (const ExpandError& e) {
        throw Usage(path + ": at " + e.path + ": " + e.what());
    }
}

SystemId systemNamed(const std::string& name) {
    auto s = systemFromName(name);
    if (!s) throw Usage("unknown system '" + name + "'");
    return *s;
}

Json failuresJson(const std::vector<Failure>& fs) {
    Json a = Json::array();
    for (const Failure& f : fs)
        a.push_back({{"path", f.path}, {"rule", f.rule}, {"condition", f.condition}, {"message", f.message}});
    return a;
}

Json result(const std::string& command, const std::string& verdict, const std::vector<Failure>& fs = {}) {
    Json j;
    j["command"] = command;
    j["verdict"] = verdict;
    j["failures"] = failuresJson(fs);
    return j;
}

Json counterexampleJson(const Counterexample& c) {
    Json a = Json::array();
    for (const auto& [k, v] : c.assignment) a.push_back({k, v});
    return {{"sequent", render(c.sequent)}, {"model", renderModel(Model(c.model))}, {"assignment", a}};
}

void printCounterexample(std::ostream& out, const Counterexample& c, bool lasso) {
    out << "counterexample for " << render(c.sequent) << "\n" << renderModel(Model(c.model));
    out << (lasso ? "valuation:" : "rho:") << "\n";
    for (const auto& [k, v] : c.assignment) out << "  " << k << " -> " << v << "\n";
}

struct Loaded {
    ProofScript script;
    Proof proof;
};

Loaded loadProof(const std::string& path) {
    return parsing(path, [](const std::string& text) {
        ProofScript s = parseProof(text);
        return Loaded{s, expandDoubleLines(s)};
    });
}

struct Options {
    bool json = false;
    bool trace = false;
    std::string system;
    std::string variant;
    std::string output;
    std::string model;
    std::string sequent;
    std::string op;
    std::string by;
    std::string emit;
    std::vector<std::string> inputs;
    std::size_t budget = 200;
    std::optional<std::uint64_t> seed;
    std::uint64_t bound = 4;
};

SystemId chooseSystem(const Options& o, SystemId declared) {
    SystemId s = o.system.empty() ? declared : systemNamed(o.system);
    if (!o.variant.empty()) {
        if (o.variant != "ind" && o.variant != "indax") throw Usage("variant must be ind or indax");
        if (!isLtlSystem(s) || s == SystemId::LTLP) throw Usage("--variant applies to LTL proofs only");
        s = o.variant == "ind" ? SystemId::LTL : SystemId::LTL_IndAx;
    }
    return s;
}

std::uint64_t defaultSeed(const Options& o) {
    if (o.seed) return *o.seed;
    if (const char* env = std::getenv("TWOSEQ_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Usage("TWOSEQ_SEED must be a nonnegative integer");
        }
    }
    return 1;
}

std::string describeLine(SystemId sys, const CheckReport& r) {
    std::string d = describe(r);
    while (!d.empty() && d.back() == '\n') d.pop_back();
    return std::string(systemName(sys)) + ": " + d + "\n";
}

void emit(std::ostream& out, const Options& o, const Json& j, const std::string& text) {
    if (o.json) out << j.dump(2) << "\n";
    else out << text;
}

int cmdCheck(const Options& o, std::ostream& out) {
    Loaded l = loadProof(o.inputs.at(0));
    SystemId sys = chooseSystem(o, l.script.system);
    CheckReport r = checkProof(l.proof, sys);
    Json j = result("check", r.accepted ? "accepted" : "rejected", r.failures);
    j["system"] = systemName(sys);
    emit(out, o, j, describeLine(sys, r));
    return r.accepted ? 0 : 1;
}

int cmdCutelim(const Options& o, std::ostream& out, std::ostream& err) {
    Loaded l = loadProof(o.inputs.at(0));
    SystemId sys = chooseSystem(o, l.script.system);
    CheckReport r = checkProof(l.proof, sys);
    if (!r.accepted) {
        emit(out, o, result("cutelim", "rejected", r.failures), describeLine(sys, r));
        return 1;
    }
    MixReport rep;
    Proof q;
    try {
        q = eliminateCuts(l.proof, sys, &rep);
    } catch (const CutElimError& e) {
        Json j = result("cutelim", "unsupported");
        j["system"] = systemName(sys);
        j["message"] = e.what();
        emit(out, o, j, std::string("cut elimination failed: ") + e.what() + "\n");
        return 1;
    }
    std::string text = renderProof(q, sys, l.script.name);
    if (!o.output.empty()) writeFile(o.output, text);
    if (o.trace && !o.json)
        for (const std::string& t : rep.trace) err << t << "\n";
    Json j = result("cutelim", "cut-free");
    j["system"] = systemName(sys);
    j["degreeBefore"] = proofDegree(l.proof);
    j["heightBefore"] = height(l.proof);
    j["heightAfter"] = height(q);
    j["findings"] = rep.findings;
    if (o.trace) j["trace"] = rep.trace;
    if (o.output.empty()) j["proof"] = text;
    std::ostringstream ts;
    for (const std::string& f : rep.findings) ts << "finding: " << f << "\n";
    if (o.output.empty()) ts << text;
    else ts << "wrote " << o.output << "\n";
    emit(out, o, j, ts.str());
    return 0;
}

int cmdSubformula(const Options& o, std::ostream& out) {
    Loaded l = loadProof(o.inputs.at(0));
    if (!isCutFree(l.proof)) {
        emit(out, o, result("subformula", "not-cut-free"), "proof contains cuts\n");
        return 1;
    }
    bool ok = verifySubformulaProperty(l.proof);
    emit(out, o, result("subformula", ok ? "holds" : "fails"),
         ok ? "subformula property holds\n" : "subformula property fails\n");
    return ok ? 0 : 1;
}

int cmdEval(const Options& o, std::ostream& out) {
    if (o.model.empty() || o.sequent.empty()) throw Usage("eval needs --model and --sequent");
    Model m = parsing(o.model, [](const std::string& t) { return parseModel(t); });
    Sequent s = parsing(o.sequent, [](const std::string& t) { return parseSequent(t); });
    std::optional<Counterexample> cex;
    std::size_t tried = 0;
    bool lasso = std::holds_alternative<LassoWord>(m);
    if (lasso) {
        const LassoWord& w = std::get<LassoWord>(m);
        TokenSet ts = tokensOf(s);
        std::vector<Token> toks(ts.begin(), ts.end());
        std::vector<std::uint64_t> vals(toks.size(), 0);
        for (;;) {
            TokenValuation a;
            for (std::size_t i = 0; i < toks.size(); ++i) a[toks[i]] = vals[i];
            ++tried;
            if (!ltlSequentHolds(w, a, s)) {
                cex = Counterexample{w, s, {}};
                for (const auto& [x, n] : a) cex->assignment.emplace_back(x.name, std::to_string(n));
                break;
            }
            std::size_t i = 0;
            while (i < vals.size() && vals[i] == o.bound) vals[i++] = 0;
            if (i == vals.size()) break;
            ++vals[i];
        }
    } else {
        if (o.system.empty()) throw Usage("eval on a Kripke model needs --system");
        SystemId sys = systemNamed(o.system);
        const GraphModel& g = std::get<GraphModel>(m);
        forEachAdmissible(g, sys, inizOf(s), [&](const Rho& rho) {
            ++tried;
            if (sequentHolds(g, sys, rho, s)) return true;
            cex = Counterexample{g, s, {}};
            for (const auto& [p, n] : rho) cex->assignment.emplace_back(render(p), std::to_string(n));
            return false;
        });
    }
    Json j = result("eval", cex ? "falsified" : "holds");
    j["assignments"] = tried;
    if (cex) j["counterexample"] = counterexampleJson(*cex);
    std::ostringstream ts;
    if (cex) printCounterexample(ts, *cex, lasso);
    else ts << "holds under all " << tried << " assignments\n";
    emit(out, o, j, ts.str());
    return cex ? 1 : 0;
}

int cmdFuzz(const Options& o, std::ostream& out) {
    Loaded l = loadProof(o.inputs.at(0));
    SystemId sys = chooseSystem(o, l.script.system);
    CheckReport r = checkProof(l.proof, sys);
    if (!r.accepted) {
        emit(out, o, result("fuzz", "rejected", r.failures), describeLine(sys, r));
        return 1;
    }
    std::uint64_t seed = defaultSeed(o);
    Verdict v;
    bool lasso = false;
    if (isCoreModal(sys)) {
        v = soundnessFuzz(l.proof, sys, o.budget, seed);
    } else if (sys == SystemId::LTL || sys == SystemId::LTL_IndAx) {
        v = ltlSoundnessFuzz(l.proof, o.budget, seed, o.bound);
        lasso = true;
    } else {
        throw Usage(std::string("no fuzzing semantics for ") + systemName(sys));
    }
    if (v.counterexample && !o.output.empty()) writeFile(o.output, renderModel(Model(v.counterexample->model)));
    Json j = result("fuzz", v.valid ? "valid-so-far" : "counterexample");
    j["system"] = systemName(sys);
    j["seed"] = seed;
    j["models"] = v.modelsTried;
    if (v.counterexample) j["counterexample"] = counterexampleJson(*v.counterexample);
    std::ostringstream ts;
    if (v.counterexample) printCounterexample(ts, *v.counterexample, lasso);
    else ts << "valid-so-far after " << v.modelsTried << " models (seed " << seed << ")\n";
    emit(out, o, j, ts.str());
    return v.valid ? 0 : 1;
}

int cmdAxioms(const Options& o, std::ostream& out) {
    if (o.system.empty()) throw Usage("axioms needs --system");
    SystemId sys = systemNamed(o.system);
    if (!o.emit.empty()) std::filesystem::create_directories(o.emit);
    bool all = true;
    Json entries = Json::array();
    std::vector<Failure> mismatches;
    std::ostringstream ts;
    for (const CorpusEntry* e : axiomsFor(sys)) {
        CheckReport r = checkProof(corpusProof(e->name), sys);
        bool expect = expectedAccepted(*e, sys);
        bool ok = r.accepted == expect;
        all = all && ok;
        if (!o.emit.empty()) writeFile(o.emit + "/" + e->name + ".2sp", e->text);
        entries.push_back({{"name", e->name},
                           {"expected", expect ? "accepted" : "rejected"},
                           {"verdict", r.accepted ? "accepted" : "rejected"},
                           {"failures", failuresJson(r.failures)}});
        if (!ok) mismatches.push_back({e->name, "", "expected-verdict", "verdict differs from the recorded one"});
        ts << e->name << ": " << (r.accepted ? "accepted" : "rejected") << (ok ? "" : "  MISMATCH") << "\n";
        if (!r.accepted && !r.failures.empty())
            ts << "  at " << r.failures.front().path << " [" << r.failures.front().rule << "] "
               << r.failures.front().condition << "\n";
    }
    Json j = result("axioms", all ? "consistent" : "inconsistent", mismatches);
    j["system"] = systemName(sys);
    j["entries"] = entries;
    ts << entries.size() << " corpus proofs checked\n";
    emit(out, o, j, ts.str());
    return all ? 0 : 1;
}

int cmdTransform(const Options& o, std::ostream& out) {
    Loaded l = loadProof(o.inputs.at(0));
    SystemId sys = chooseSystem(o, l.script.system);
    Proof q;
    if (o.op == "rename") {
        q = renameEigen(l.proof, sys);
    } else if (o.op == "lift") {
        if (o.by.empty()) throw Usage("lift needs --by POSITION");
        Position by;
        try {
            by = parsePosition(o.by);
        } catch (const ParseError& e) {
            throw Usage(std::string("--by: ") + e.what());
        }
        q = liftProof(l.proof, by);
    } else if (o.op == "mp") {
        if (o.inputs.size() != 2) throw Usage("mp needs two proofs: A -> B and A");
        q = composeMP(l.proof, loadProof(o.inputs[1]).proof, sys);
    } else if (o.op == "necessitate") {
        q = necessitate(l.proof, sys);
    } else if (o.op == "ind2ax") {
        q = indToAxiom(l.proof);
        if (sys == SystemId::LTL) sys = SystemId::LTL_IndAx;
    } else {
        throw Usage("unknown transform '" + o.op + "'");
    }
    std::string text = renderProof(q, sys, l.script.name);
    CheckReport r = checkProof(q, sys);
    if (!o.output.empty()) writeFile(o.output, text);
    Json j = result("transform", r.accepted ? "accepted" : "rejected", r.failures);
    j["op"] = o.op;
    j["system"] = systemName(sys);
    if (o.output.empty()) j["proof"] = text;
    emit(out, o, j, o.output.empty() ? text : "wrote " + o.output + "\n");
    return r.accepted ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Proof checker, cut eliminator and model checker for 2-sequent calculi", "twoseq"};
    app.require_subcommand(1, 1);
    Options o;
    std::string systems = "K, D, T, K4, S4, S42, LTL, LTL_IndAx, LTLP";

    auto common = [&](CLI::App* c) {
        c->add_flag("--json", o.json, "Machine-readable output");
    };
    auto withSystem = [&](CLI::App* c, bool required) {
        auto* opt = c->add_option("--system,-s", o.system, "One of " + systems);
        if (required) opt->required();
    };

    auto* check = app.add_subcommand("check", "Check a .2sp proof");
    common(check);
    withSystem(check, false);
    check->add_option("--variant", o.variant, "ind or indax (LTL proofs)");
    check->add_option("proof", o.inputs, "Proof file")->required()->expected(1);

    auto* cut = app.add_subcommand("cutelim", "Eliminate cuts from a .2sp proof");
    common(cut);
    withSystem(cut, false);
    cut->add_option("-o,--output", o.output, "Write the cut-free proof here");
    cut->add_flag("--trace", o.trace, "Print the mix case taken at each step");
    cut->add_option("proof", o.inputs, "Proof file")->required()->expected(1);

    auto* sub = app.add_subcommand("subformula", "Check the subformula property of a cut-free proof");
    common(sub);
    sub->add_option("proof", o.inputs, "Proof file")->required()->expected(1);

    auto* ev = app.add_subcommand("eval", "Evaluate a sequent on a .2sm model");
    common(ev);
    withSystem(ev, false);
    ev->add_option("--model,-m", o.model, "Model file")->required();
    ev->add_option("--sequent", o.sequent, "Sequent file")->required();
    ev->add_option("--bound", o.bound, "Largest token value on lasso models");

    auto* fz = app.add_subcommand("fuzz", "Search random models for a counterexample to every node of a proof");
    common(fz);
    withSystem(fz, false);
    fz->add_option("--variant", o.variant, "ind or indax (LTL proofs)");
    fz->add_option("--budget", o.budget, "Number of random models");
    fz->add_option("--seed", o.seed, "Random seed (default: TWOSEQ_SEED or 1)");
    fz->add_option("--bound", o.bound, "Largest token value (LTL)");
    fz->add_option("-o,--output", o.output, "Write a counterexample model here");
    fz->add_option("proof", o.inputs, "Proof file")->required()->expected(1);

    auto* ax = app.add_subcommand("axioms", "Check the builtin corpus against its recorded verdicts");
    common(ax);
    withSystem(ax, true);
    ax->add_option("--emit", o.emit, "Write each proof to this directory");

    auto* tr = app.add_subcommand("transform", "Proof transformations");
    common(tr);
    withSystem(tr, false);
    tr->add_option("--op", o.op, "lift, rename, mp, necessitate or ind2ax")->required();
    tr->add_option("--by", o.by, "Position for lift");
    tr->add_option("-o,--output", o.output, "Output file");
    tr->add_option("proofs", o.inputs, "Proof file(s)")->required()->expected(1, 2);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) return cmdCheck(o, out);
        if (cut->parsed()) return cmdCutelim(o, out, err);
        if (sub->parsed()) return cmdSubformula(o, out);
        if (ev->parsed()) return cmdEval(o, out);
        if (fz->parsed()) return cmdFuzz(o, out);
        if (ax->parsed()) return cmdAxioms(o, out);
        if (tr->parsed()) return cmdTransform(o, out);
    } catch (const Usage& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const TransformError& e) {
        err << "transform failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace twoseq

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "twoseq/corpus.hpp"
#include "twoseq/semantics.hpp"

using namespace twoseq;

namespace {

GraphModel chain(std::set<std::string> atChild) {
    GraphModel m;
    m.nodes = 2;
    m.edges = {{0, 1}};
    m.valuation = {{}, std::move(atChild)};
    return m;
}

const SystemId kCore[] = {SystemId::K, SystemId::D, SystemId::T, SystemId::K4, SystemId::S4};

} // namespace

TEST_SUITE("semantics") {

TEST_CASE("forcing") {
    GraphModel one;
    one.valuation = {{}};
    Formula p = Formula::atom("p");
    CHECK(forces(one, SystemId::K, 0, Formula::box(p)));
    CHECK_FALSE(forces(one, SystemId::T, 0, Formula::box(p)));
    one.valuation = {{"p"}};
    CHECK(forces(one, SystemId::T, 0, Formula::box(p)));

    GraphModel c = chain({"p"});
    CHECK(forces(c, SystemId::K, 0, Formula::dia(p)));
    CHECK_FALSE(forces(c, SystemId::K, 1, Formula::dia(p)));
    CHECK(forces(c, SystemId::S4, 1, Formula::dia(p)));
    CHECK_THROWS_AS(forces(c, SystemId::K, 0, Formula::next(p)), SemanticsError);
}

TEST_CASE("accessibility closures") {
    GraphModel m;
    m.nodes = 3;
    m.edges = {{0, 1}, {1, 2}};
    m.valuation.assign(3, {});
    CHECK_FALSE(accessibility(m, SystemId::K)[0][2]);
    CHECK(accessibility(m, SystemId::K4)[0][2]);
    CHECK_FALSE(accessibility(m, SystemId::K4)[0][0]);
    CHECK(accessibility(m, SystemId::T)[2][2]);
    CHECK_FALSE(accessibility(m, SystemId::T)[0][2]);
    CHECK(accessibility(m, SystemId::S4)[0][2]);
    CHECK(accessibility(m, SystemId::S4)[1][1]);
}

TEST_CASE("left and right satisfaction") {
    GraphModel c = chain({"p"});
    PFormula px = parsePFormula("p @ [x]");
    Rho partial{{SeqPos{}, 0}};
    CHECK_FALSE(satisfiesLeft(c, SystemId::K, partial, px));
    CHECK(satisfiesRight(c, SystemId::K, partial, px));
    Rho total{{SeqPos{}, 0}, {SeqPos({Token("x")}), 1}};
    CHECK(satisfiesLeft(c, SystemId::K, total, px));
    CHECK(satisfiesRight(c, SystemId::K, total, px));
    PFormula p0 = parsePFormula("p @ []");
    CHECK(satisfiesLeft(c, SystemId::K, total, p0) == forces(c, SystemId::K, 0, p0.f));
    CHECK(satisfiesRight(c, SystemId::K, total, p0) == forces(c, SystemId::K, 0, p0.f));
}

TEST_CASE("sequent satisfaction") {
    GraphModel c = chain({"p"});
    Sequent ax = parseSequent("p @ [x] |- p @ [x]");
    Sequent empty;
    for (SystemId sys : {SystemId::K, SystemId::T, SystemId::S4}) {
        for (const Rho& r : admissibleAssignments(c, sys, inizOf(ax))) CHECK(sequentHolds(c, sys, r, ax));
        for (const Rho& r : admissibleAssignments(c, sys, {SeqPos{}})) CHECK_FALSE(sequentHolds(c, sys, r, empty));
    }
    // box A |- dia A on serial models, brute force up to 4 nodes
    Sequent d = parseSequent("box p @ [] |- dia p @ []");
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        GraphModel m = randomModel(rng, SystemId::D, {"p"}, 4);
        REQUIRE(isSerial(m));
        CHECK_FALSE(findFalsifying(m, SystemId::D, d));
    }
}

TEST_CASE("admissible assignments") {
    GraphModel c = chain({});
    CHECK(admissibleAssignments(c, SystemId::D, {SeqPos{}}).empty());
    CHECK(admissibleAssignments(c, SystemId::K, {SeqPos{}}).size() == 2);
    std::set<SeqPos> ps{SeqPos{}, SeqPos({Token("x")})};
    auto k = admissibleAssignments(c, SystemId::K, ps);
    // [] -> 0 with [x] -> 1 or undefined, [] -> 1 with [x] undefined
    CHECK(k.size() == 3);
    bool onlyRoot = false;
    for (const Rho& r : k) {
        onlyRoot = onlyRoot || (r.size() == 1 && r.at(SeqPos{}) == 0);
        CHECK(admissible(c, SystemId::K, r, ps));
    }
    CHECK(onlyRoot);
    // T is total: a sink maps [x] to itself
    CHECK(admissibleAssignments(c, SystemId::T, ps).size() == 3);
    CHECK_FALSE(admissible(c, SystemId::T, Rho{{SeqPos{}, 0}}, ps));

    // brute force: every total or partial map, filtered by the row conditions
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
        GraphModel m = randomModel(rng, SystemId::K, {"p"}, 3);
        std::set<SeqPos> qs{SeqPos{}, SeqPos({Token("x")}), SeqPos({Token("x"), Token("y")}), SeqPos({Token("z")})};
        std::vector<SeqPos> order(qs.begin(), qs.end());
        for (SystemId sys : kCore) {
            std::set<Rho> expect;
            std::size_t opts = m.nodes + 1;
            std::size_t total = 1;
            for (std::size_t k = 0; k < order.size(); ++k) total *= opts;
            for (std::size_t code = 0; code < total; ++code) {
                Rho r;
                std::size_t c2 = code;
                for (const SeqPos& p : order) {
                    std::size_t v = c2 % opts;
                    c2 /= opts;
                    if (v < m.nodes) r[p] = v;
                }
                bool ok = r.count(SeqPos{}) > 0;
                if (sys == SystemId::D && !isSerial(m)) ok = false;
                for (const SeqPos& p : order) {
                    if (!ok) break;
                    if (p.empty()) continue;
                    SeqPos par(std::vector<Token>(p.items.begin(), p.items.end() - 1));
                    bool def = r.count(p), pdef = r.count(par);
                    if (def && !pdef) ok = false;
                    else if (!def && pdef && sys != SystemId::K && sys != SystemId::K4) ok = false;
                    else if (def && !oracle::thetaTargets(m, sys, r[par]).count(r[p])) ok = false;
                }
                if (ok) expect.insert(r);
            }
            auto got = admissibleAssignments(m, sys, qs);
            CHECK(std::set<Rho>(got.begin(), got.end()) == expect);
            CHECK(got.size() == expect.size());
        }
    }
}

TEST_CASE("substitution is partial") {
    Rho r{{SeqPos{}, 0}};
    SeqPos x({Token("x")});
    CHECK(substitute(r, x, 1).at(x) == 1);
    CHECK_FALSE(substitute(r, x, std::nullopt).count(x));
    CHECK_FALSE(substitute(Rho{{SeqPos{}, 0}, {x, 1}}, x, std::nullopt).count(x));
}

TEST_CASE("forcing agrees with the path oracle") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        GraphModel m = randomModel(rng, SystemId::K, {"p", "q"});
        Formula f = oracle::randomFormula(rng, 4, {Op::Not, Op::Box, Op::Dia}, {"p", "q"});
        for (SystemId sys : kCore)
            for (std::size_t n = 0; n < m.nodes; ++n) CHECK(forces(m, sys, n, f) == oracle::forcesRef(m, sys, n, f));
    }
}

TEST_CASE("forcing is invariant under duplicating the graph") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        GraphModel m = randomModel(rng, SystemId::K, {"p"}, 4);
        GraphModel d;
        d.nodes = 2 * m.nodes;
        d.valuation = m.valuation;
        d.valuation.insert(d.valuation.end(), m.valuation.begin(), m.valuation.end());
        std::bernoulli_distribution coin(0.5);
        for (const auto& [a, b] : m.edges)
            for (std::size_t copy = 0; copy < 2; ++copy) d.edges.emplace_back(a + copy * m.nodes, b + (coin(rng) ? m.nodes : 0));
        Formula f = oracle::randomFormula(rng, 4, {Op::Not, Op::Box, Op::Dia}, {"p"});
        for (SystemId sys : kCore)
            for (std::size_t n = 0; n < m.nodes; ++n) {
                bool v = forces(m, sys, n, f);
                CHECK(forces(d, sys, n, f) == v);
                CHECK(forces(d, sys, n + m.nodes, f) == v);
            }
    }
}

TEST_CASE("substitution lemmas on fuzzed instances") {
    std::mt19937_64 rng(9);
    std::size_t n1 = 0, n2 = 0;
    SeqPos alphas[] = {SeqPos{}, SeqPos({Token("y")}), SeqPos({Token("y"), Token("z")})};
    Token x("x");
    for (int i = 0; i < 150; ++i) {
        SystemId sys = kCore[i % 5];
        GraphModel m = randomModel(rng, sys, {"p"}, 4);
        Formula f = oracle::randomFormula(rng, 3, {Op::Not, Op::Box, Op::Dia}, {"p"});
        std::set<SeqPos> dom(std::begin(alphas), std::end(alphas));
        auto rhos = admissibleAssignments(m, sys, dom);
        for (std::size_t k = 0; k < rhos.size() && k < 6; ++k) {
            for (const SeqPos& a : alphas) {
                CHECK(oracle::sub1Agrees(m, sys, rhos[k], a, x, f, true));
                CHECK(oracle::sub1Agrees(m, sys, rhos[k], a, x, f, false));
                ++n1;
                for (const SeqPos& b : alphas)
                    if (b.size() + a.size() <= 2 && (b.empty() || a.empty())) {
                        CHECK(oracle::sub2Agrees(m, sys, rhos[k], a, b, x, f));
                        ++n2;
                    }
            }
        }
    }
    CHECK(n1 >= 1000);
    CHECK(n2 >= 1000);
}

TEST_CASE("corpus proofs survive the soundness fuzzer") {
    for (const CorpusEntry& e : builtinCorpus()) {
        for (SystemId sys : e.acceptedIn) {
            if (!isCoreModal(sys)) continue;
            CAPTURE(e.name);
            CAPTURE(systemName(sys));
            Verdict v = soundnessFuzz(corpusProof(e.name), sys, 200, 1);
            CHECK(v.valid);
            CHECK(v.modelsTried == 200);
        }
    }
}

TEST_CASE("invalid sequents are falsified") {
    Verdict a = fuzzSequent(parseSequent("|- dia (p -> p) @ []"), SystemId::K, 50, 1);
    REQUIRE_FALSE(a.valid);
    REQUIRE(a.counterexample);
    const GraphModel& m = std::get<GraphModel>(a.counterexample->model);
    std::size_t at = std::stoul(a.counterexample->assignment.front().second);
    CHECK_FALSE(forces(m, SystemId::K, at, parseFormula("dia (p -> p)")));

    Verdict b = fuzzSequent(parseSequent("|- (box p -> p) @ []"), SystemId::K, 50, 1);
    CHECK_FALSE(b.valid);
    // valid in T
    CHECK(fuzzSequent(parseSequent("|- (box p -> p) @ []"), SystemId::T, 50, 1).valid);

    GraphModel two = chain({"p"});
    CHECK(findFalsifying(two, SystemId::K, parseSequent("|- (box p -> p) @ []")));
    GraphModel single;
    single.valuation = {{}};
    CHECK(findFalsifying(single, SystemId::K, parseSequent("|- dia (p -> p) @ []")));
}

}

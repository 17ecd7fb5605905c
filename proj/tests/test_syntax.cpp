#include "doctest.h"
#include "oracles.hpp"

#include "twoseq/parser.hpp"
#include "twoseq/syntax.hpp"

using namespace twoseq;

namespace {

PFormula pf(const char* text) { return parsePFormula(text); }

TokenSet toks(std::initializer_list<const char*> names) {
    TokenSet s;
    for (const char* n : names) s.insert(Token(n));
    return s;
}

// Sub(A^alpha) restricted to positions that are prefixes of `bound`.
void subUpTo(const Formula& f, const SeqPos& alpha, const SeqPos& bound, std::set<PFormula>& out) {
    out.insert(PFormula{f, alpha});
    switch (f.op()) {
    case Op::Atom:
        return;
    case Op::Not:
        subUpTo(f.arg(), alpha, bound, out);
        return;
    case Op::Box:
    case Op::Dia:
        if (!isPrefix(alpha, bound)) return;
        for (std::size_t k = alpha.size(); k <= bound.size(); ++k)
            subUpTo(f.arg(), SeqPos(std::vector<Token>(bound.items.begin(), bound.items.begin() + k)), bound, out);
        return;
    default:
        subUpTo(f.arg(), alpha, bound, out);
        subUpTo(f.right(), alpha, bound, out);
    }
}

bool subRef(const PFormula& cand, const PFormula& root) {
    std::set<PFormula> s;
    subUpTo(root.f, std::get<SeqPos>(root.pos), std::get<SeqPos>(cand.pos), s);
    return s.count(cand) > 0;
}

SeqPos randomSeq(std::mt19937_64& rng, std::size_t maxLen) {
    static const char* names[] = {"x", "y"};
    std::vector<Token> v;
    for (std::size_t n = rng() % (maxLen + 1); n > 0; --n) v.emplace_back(names[rng() % 2]);
    return SeqPos(std::move(v));
}

std::size_t pathDegree(const Formula& f) {
    if (f.op() == Op::Atom) return 0;
    if (isUnary(f.op())) return 1 + pathDegree(f.arg());
    return 1 + std::max(pathDegree(f.arg()), pathDegree(f.right()));
}

// every subformula occurrence, positions ignored
void subterms(const Formula& f, std::vector<Formula>& out) {
    out.push_back(f);
    if (f.op() == Op::Atom) return;
    subterms(f.arg(), out);
    if (isBinary(f.op())) subterms(f.right(), out);
}

const std::vector<Op> kModalOps = {Op::Not, Op::Box, Op::Dia};

} // namespace

TEST_SUITE("syntax") {

TEST_CASE("degree") {
    CHECK(degree(parseFormula("p")) == 0);
    CHECK(degree(parseFormula("box (p -> q)")) == 2);
    CHECK(degree(parseFormula("~ ~ p")) == 2);
    CHECK(degree(parseFormula("(p & q) -> dia p")) == 2);
    CHECK_THROWS_WITH_AS(degree(parseFormula("X p")), "degree undefined for temporal formula", DegreeError);
    CHECK_THROWS_AS(degree(parseFormula("p & H q")), DegreeError);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        Formula f = oracle::randomFormula(rng, 4, kModalOps, {"p", "q"});
        CHECK(degree(f) == pathDegree(f));
        std::vector<Formula> subs;
        subterms(f, subs);
        for (std::size_t k = 1; k < subs.size(); ++k) CHECK(degree(subs[k]) < degree(f));
    }
}

TEST_CASE("subformula relation") {
    CHECK(isSubformula(pf("p @ [x, y]"), pf("box p @ [x]")));
    CHECK(isSubformula(pf("box p @ [x]"), pf("box p @ [x]")));
    CHECK_FALSE(isSubformula(pf("p @ [y]"), pf("box p @ [x]")));
    CHECK(isSubformula(pf("p @ [x]"), pf("box p @ [x]")));
    CHECK_FALSE(isSubformula(pf("q @ [x]"), pf("(p -> q) @ []")));
    CHECK(isSubformula(pf("q @ [x, y]"), pf("(p -> dia box q) @ [x]")));

    std::mt19937_64 rng(12);
    for (int i = 0; i < 1000; ++i) {
        Formula rf = oracle::randomFormula(rng, 3, kModalOps, {"p", "q"});
        PFormula root{rf, randomSeq(rng, 1)};
        std::vector<Formula> subs;
        subterms(rf, subs);
        PFormula cand{subs[rng() % subs.size()], randomSeq(rng, 3)};
        CHECK(isSubformula(cand, root) == subRef(cand, root));
        CHECK(isSubformula(root, root));
    }
    // transitivity along an extension chain
    for (int i = 0; i < 300; ++i) {
        Formula rf = oracle::randomFormula(rng, 3, kModalOps, {"p"});
        std::vector<Formula> s1;
        subterms(rf, s1);
        PFormula root{rf, SeqPos{}};
        PFormula mid{s1[rng() % s1.size()], randomSeq(rng, 2)};
        std::vector<Formula> s2;
        subterms(mid.f, s2);
        PFormula low{s2[rng() % s2.size()], concat(std::get<SeqPos>(mid.pos), randomSeq(rng, 1))};
        if (isSubformula(mid, root) && isSubformula(low, mid)) CHECK(isSubformula(low, root));
    }
}

TEST_CASE("tokens and positions of sequents") {
    CHECK(tokensOf(parseSequent("|- p @ [x]")) == toks({"x"}));
    CHECK(tokensOf(parseSequent("p @ [] |-")).empty());
    CHECK(tokensOf(parseSequent("p @ (1;{x}) |- q @ (0;{x,y})")) == toks({"x", "y"}));
    Sequent s = parseSequent("p @ [x], q @ [] |- p @ [x, y]");
    std::vector<Position> ps = positionsOf(s);
    REQUIRE(ps.size() == 3);
    CHECK(std::get<SeqPos>(ps[2]).size() == 2);
    CHECK(atomsOf(s) == std::set<std::string>{"p", "q"});
}

TEST_CASE("cana removes every occurrence") {
    Sequent s = parseSequent("p @ [x], q @ [], p @ [x], p @ [] |-");
    std::vector<PFormula> rest = cana(s.ant, pf("p @ [x]"));
    REQUIRE(rest.size() == 2);
    CHECK(rest[0] == pf("q @ []"));
    CHECK(rest[1] == pf("p @ []"));
}

}

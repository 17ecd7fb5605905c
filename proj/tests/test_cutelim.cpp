#include "doctest.h"
#include "support.hpp"

#include "twoseq/corpus.hpp"
#include "twoseq/cutelim.hpp"
#include "twoseq/transform.hpp"

using namespace twoseq;
using testing::accepted;
using testing::proofOf;

namespace {

const SystemId kCore[] = {SystemId::K, SystemId::D, SystemId::T, SystemId::K4, SystemId::S4};

// |- (A -> A) @ [] for any A
Proof selfImp(const Formula& a) {
    Proof ax = axiom(PFormula{a, SeqPos{}});
    return apply(SystemId::K, Rule::ImpR, {}, {ax});
}

// A closed proof of the end formula with a cut on (A -> A) and one on A.
Proof viaMP(const Proof& pA, SystemId sys) {
    const Formula& a = pA->conclusion.suc.front().f;
    return composeMP(selfImp(a), pA, sys);
}

// Cut between |- (box A) @ [] and box A @ [] |- A @ beta.
Proof boxPrincipal(const Proof& pA, const SeqPos& beta, SystemId sys) {
    Proof nec = necessitate(pA, sys);
    const PFormula& boxA = nec->conclusion.suc.front();
    Proof ax = axiom(PFormula{pA->conclusion.suc.front().f, beta});
    RuleParams bp;
    bp.alpha = SeqPos{};
    bp.beta = beta;
    Proof r = apply(sys, Rule::BoxL, bp, {ax});
    REQUIRE(r->conclusion.ant.front() == boxA);
    return apply(sys, Rule::Cut, {}, {nec, r});
}

void requireEliminated(const Proof& p, SystemId sys) {
    REQUIRE(accepted(p, sys));
    Proof q = eliminateCuts(p, sys);
    INFO(systemName(sys) << " " << describe(checkProof(q, sys)));
    CHECK(isCutFree(q));
    CHECK(proofDegree(q) == 0);
    CHECK(q->conclusion == p->conclusion);
    CHECK(accepted(q, sys));
    CHECK(verifySubformulaProperty(q));
    CHECK(testing::eigenTokensDistinct(q));
}

} // namespace

TEST_SUITE("cutelim") {

TEST_CASE("degree") {
    CHECK(proofDegree(corpusProof("axiom-K")) == 0);
    Proof id = proofOf(R"2sp((proof K (rule impR (rule ax (concl "p0 @ [] |- p0 @ []")))))2sp");
    Proof mp = viaMP(id, SystemId::K);
    // cut formulas: (p0 -> p0) -> (p0 -> p0) of degree 2 and p0 -> p0 of degree 1
    CHECK(proofDegree(mp) == 3);
    Proof box = boxPrincipal(id, SeqPos({Token("y")}), SystemId::K);
    CHECK(proofDegree(box) == 3);

    // cut formulas p0 and p0 -> p1
    Proof pAB = proofOf(R"2sp((proof K (rule impR (rule wL (formula "p0 @ []") (rule ax (concl "p1 @ [] |- p1 @ []"))))))2sp");
    CHECK(proofDegree(composeMP(pAB, axiom(parsePFormula("p0 @ []")), SystemId::K)) == 2);

    // one cut on box p0
    Proof l = proofOf(R"2sp((proof T (rule boxR (alpha []) (x x) (rule boxL (alpha []) (beta [x])
        (rule ax (concl "p0 @ [x] |- p0 @ [x]"))))))2sp");
    Proof r = proofOf(R"2sp((proof T (rule boxL (alpha []) (beta []) (rule ax (concl "p0 @ [] |- p0 @ []")))))2sp");
    Proof c = apply(SystemId::T, Rule::Cut, {}, {l, r});
    CHECK(proofDegree(c) == 2);
    requireEliminated(c, SystemId::T);
}

TEST_CASE("cut-free proofs come back in canonical form") {
    for (const char* name : {"axiom-K", "axiom-4"}) {
        Proof p = corpusProof(name);
        CHECK(proofEqual(eliminateCuts(p, SystemId::K4), renameEigen(p)));
    }
}

TEST_CASE("mix with an axiom on either side") {
    Proof l = proofOf(R"2sp((proof K (rule wL (formula "p1 @ []") (rule ax (concl "p0 @ [] |- p0 @ []")))))2sp");
    PFormula a = parsePFormula("p0 @ []");
    Proof m = mix(l, axiom(a), a, SystemId::K);
    CHECK(m->conclusion == l->conclusion);
    CHECK(accepted(m, SystemId::K));
    Proof m2 = mix(axiom(a), l, a, SystemId::K);
    CHECK(m2->conclusion == l->conclusion);
    // A absent on the left: the left proof is bridged
    PFormula b = parsePFormula("p2 @ []");
    Proof m3 = mix(l, axiom(b), b, SystemId::K);
    Sequent want = l->conclusion;
    want.suc.push_back(b);
    CHECK(m3->conclusion == want);
    CHECK(accepted(m3, SystemId::K));
}

TEST_CASE("mix respects the degree bound") {
    Proof id = proofOf(R"2sp((proof K (rule impR (rule ax (concl "p0 @ [] |- p0 @ []")))))2sp");
    Proof mp = viaMP(id, SystemId::K);
    REQUIRE(mp->rule != Rule::Ax);
    Proof c = mp;
    while (c->rule != Rule::Cut) c = c->premises.front();
    MixReport rep;
    Proof m = mix(c->premises[0], c->premises[1], c->premises[0]->conclusion.suc.front(), SystemId::K, &rep);
    CHECK(proofDegree(m) <= degree(c->premises[0]->conclusion.suc.front().f));
    CHECK(accepted(m, SystemId::K));
    CHECK_FALSE(rep.trace.empty());
}

TEST_CASE("principal box reduction") {
    Proof id = proofOf(R"2sp((proof K (rule impR (rule ax (concl "p0 @ [] |- p0 @ []")))))2sp");
    Proof k = boxPrincipal(id, SeqPos({Token("y")}), SystemId::K);
    requireEliminated(k, SystemId::K);
    Proof t = boxPrincipal(corpusProof("axiom-T"), SeqPos{}, SystemId::T);
    requireEliminated(t, SystemId::T);
    Proof s4 = boxPrincipal(corpusProof("axiom-4"), SeqPos({Token("y"), Token("z")}), SystemId::S4);
    requireEliminated(s4, SystemId::S4);
}

TEST_CASE("eliminateCuts on compositions of corpus axioms") {
    for (SystemId sys : kCore) {
        for (const CorpusEntry* ep : axiomsFor(sys)) {
            const CorpusEntry& e = *ep;
            if (!e.axiom) continue;
            bool ok = false;
            for (SystemId s : e.acceptedIn) ok = ok || s == sys;
            if (!ok) continue;
            CAPTURE(e.name);
            Proof p = corpusProof(e.name);
            requireEliminated(viaMP(p, sys), sys);
            Proof n = necessitate(p, sys);
            requireEliminated(viaMP(n, sys), sys);
            requireEliminated(viaMP(viaMP(p, sys), sys), sys);
        }
    }
}

TEST_CASE("cut-bearing corpus entries") {
    for (SystemId sys : {SystemId::D, SystemId::T, SystemId::S4}) {
        Proof p = corpusProof("diamond-true");
        REQUIRE(accepted(p, sys));
        requireEliminated(p, sys);
    }
}

TEST_CASE("unsupported systems are refused") {
    Proof p = corpusProof("blocked-cut");
    REQUIRE(accepted(p, SystemId::LTL));
    CHECK_THROWS_WITH_AS(eliminateCuts(p, SystemId::LTL),
                         doctest::Contains("permutative cuts are blocked by the induction rule"),
                         CutElimError);
    CHECK_THROWS_AS(eliminateCuts(corpusProof("axiom-S4.2"), SystemId::S42), CutElimError);
}

TEST_CASE("input must be a valid proof") {
    Proof p = corpusProof("axiom-D");
    CHECK_THROWS_AS(eliminateCuts(p, SystemId::K), CutElimError);
}

TEST_CASE("subformula property detects foreign formulas") {
    Proof id = proofOf(R"2sp((proof K (rule impR (rule ax (concl "p0 @ [] |- p0 @ []")))))2sp");
    CHECK(verifySubformulaProperty(id));
    CHECK_FALSE(verifySubformulaProperty(viaMP(id, SystemId::K)));
}

TEST_CASE("bounded consistency") {
    ConsistencyBounds b;
    for (SystemId sys : kCore) {
        ConsistencyResult r = enumerateCutFree(sys, b);
        CAPTURE(systemName(sys));
        CHECK_FALSE(r.emptyDerived);
        CHECK(r.perHeight[1] > 0);
        CHECK(r.sequents > r.perHeight[1]);
    }
}

}

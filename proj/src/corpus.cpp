#include "twoseq/corpus.hpp"

#include "twoseq/parser.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace twoseq {

namespace {

using S = SystemId;

const char* kAxiomK = R"2sp((proof K (name "axiom-K")
  (rule impR (concl "|- (box (p0 -> p1) -> box p0 -> box p1) @ []")
    (rule impR (concl "box (p0 -> p1) @ [] |- (box p0 -> box p1) @ []")
      (rule boxR (alpha []) (x x) (concl "box (p0 -> p1) @ [], box p0 @ [] |- box p1 @ []")
        (rule boxL (alpha []) (beta [x]) (concl "box (p0 -> p1) @ [], box p0 @ [] |- p1 @ [x]")
          (bridge (concl "box (p0 -> p1) @ [], p0 @ [x] |- p1 @ [x]")
            (rule boxL (alpha []) (beta [x]) (concl "p0 @ [x], box (p0 -> p1) @ [] |- p1 @ [x]")
              (rule impL (concl "p0 @ [x], (p0 -> p1) @ [x] |- p1 @ [x]")
                (rule ax (concl "p1 @ [x] |- p1 @ [x]"))
                (rule ax (concl "p0 @ [x] |- p0 @ [x]"))))))))))
)2sp";

const char* kAxiomD = R"2sp((proof D (name "axiom-D")
  (rule impR (concl "|- (box p0 -> dia p0) @ []")
    (rule diaR (alpha []) (beta [x]) (concl "box p0 @ [] |- dia p0 @ []")
      (rule boxL (alpha []) (beta [x]) (concl "box p0 @ [] |- p0 @ [x]")
        (rule ax (concl "p0 @ [x] |- p0 @ [x]"))))))
)2sp";

const char* kAxiomT = R"2sp((proof T (name "axiom-T")
  (rule impR (concl "|- (box p0 -> p0) @ []")
    (rule boxL (alpha []) (beta []) (concl "box p0 @ [] |- p0 @ []")
      (rule ax (concl "p0 @ [] |- p0 @ []")))))
)2sp";

const char* kAxiom4 = R"2sp((proof K4 (name "axiom-4")
  (rule impR (concl "|- (box p0 -> box box p0) @ []")
    (rule boxR (alpha []) (x y) (concl "box p0 @ [] |- box box p0 @ []")
      (rule boxR (alpha [y]) (x x) (concl "box p0 @ [] |- box p0 @ [y]")
        (rule boxL (alpha []) (beta [y,x]) (concl "box p0 @ [] |- p0 @ [y,x]")
          (rule ax (concl "p0 @ [y,x] |- p0 @ [y,x]")))))))
)2sp";

// ◇(A→A) through a cut on (A→A)@[x]; the K/K4 cut constraint blocks it.
const char* kDiamondTrue = R"2sp((proof D (name "diamond-true")
  (rule cut (concl "|- dia (p0 -> p0) @ []")
    (rule impR (concl "|- (p0 -> p0) @ [x]")
      (rule ax (concl "p0 @ [x] |- p0 @ [x]")))
    (rule diaR (alpha []) (beta [x]) (concl "(p0 -> p0) @ [x] |- dia (p0 -> p0) @ []")
      (rule ax (concl "(p0 -> p0) @ [x] |- (p0 -> p0) @ [x]")))))
)2sp";

const char* kS42 = R"2sp((proof S42 (name "axiom-S4.2")
  (rule impR (concl "|- (dia box p0 -> box dia p0) @ {}")
    (rule diaL (alpha {}) (x y) (concl "dia box p0 @ {} |- box dia p0 @ {}")
      (rule boxR (alpha {}) (x x) (concl "box p0 @ {y} |- box dia p0 @ {}")
        (rule diaR (alpha {x}) (beta {y}) (concl "box p0 @ {y} |- dia p0 @ {x}")
          (rule boxL (alpha {y}) (beta {x}) (concl "box p0 @ {y} |- p0 @ {x,y}")
            (rule ax (concl "p0 @ {x,y} |- p0 @ {x,y}"))))))))
)2sp";

const char* kA1 = R"2sp((proof LTL (name "A1")
  (rule impR (concl "|- (X (p0 -> p1) -> X p0 -> X p1) @ (0;{})")
    (rule impR (concl "X (p0 -> p1) @ (0;{}) |- (X p0 -> X p1) @ (0;{})")
      (rule nextR (alpha (0;{})) (concl "X (p0 -> p1) @ (0;{}), X p0 @ (0;{}) |- X p1 @ (0;{})")
        (rule nextL (alpha (0;{})) (concl "X (p0 -> p1) @ (0;{}), X p0 @ (0;{}) |- p1 @ (1;{})")
          (bridge (concl "X (p0 -> p1) @ (0;{}), p0 @ (1;{}) |- p1 @ (1;{})")
            (rule nextL (alpha (0;{})) (concl "p0 @ (1;{}), X (p0 -> p1) @ (0;{}) |- p1 @ (1;{})")
              (rule impL (concl "p0 @ (1;{}), (p0 -> p1) @ (1;{}) |- p1 @ (1;{})")
                (rule ax (concl "p1 @ (1;{}) |- p1 @ (1;{})"))
                (rule ax (concl "p0 @ (1;{}) |- p0 @ (1;{})"))))))))))
)2sp";

const char* kA2 = R"2sp((proof LTL (name "A2")
  (rule impR (concl "|- (~X p0 -> X ~p0) @ (0;{})")
    (rule notL (concl "~X p0 @ (0;{}) |- X ~p0 @ (0;{})")
      (bridge (concl "|- X p0 @ (0;{}), X ~p0 @ (0;{})")
        (rule nextR (alpha (0;{})) (concl "|- X ~p0 @ (0;{}), X p0 @ (0;{})")
          (bridge (concl "|- ~p0 @ (1;{}), X p0 @ (0;{})")
            (rule nextR (alpha (0;{})) (concl "|- X p0 @ (0;{}), ~p0 @ (1;{})")
              (bridge (concl "|- p0 @ (1;{}), ~p0 @ (1;{})")
                (rule notR (concl "|- ~p0 @ (1;{}), p0 @ (1;{})")
                  (rule ax (concl "p0 @ (1;{}) |- p0 @ (1;{})")))))))))))
)2sp";

const char* kA3 = R"2sp((proof LTL (name "A3")
  (rule impR (concl "|- (box (p0 -> p1) -> box p0 -> box p1) @ (0;{})")
    (rule impR (concl "box (p0 -> p1) @ (0;{}) |- (box p0 -> box p1) @ (0;{})")
      (rule boxR (alpha (0;{})) (x x) (concl "box (p0 -> p1) @ (0;{}), box p0 @ (0;{}) |- box p1 @ (0;{})")
        (rule boxL (alpha (0;{})) (beta (0;{x})) (concl "box (p0 -> p1) @ (0;{}), box p0 @ (0;{}) |- p1 @ (0;{x})")
          (bridge (concl "box (p0 -> p1) @ (0;{}), p0 @ (0;{x}) |- p1 @ (0;{x})")
            (rule boxL (alpha (0;{})) (beta (0;{x})) (concl "p0 @ (0;{x}), box (p0 -> p1) @ (0;{}) |- p1 @ (0;{x})")
              (rule impL (concl "p0 @ (0;{x}), (p0 -> p1) @ (0;{x}) |- p1 @ (0;{x})")
                (rule ax (concl "p1 @ (0;{x}) |- p1 @ (0;{x})"))
                (rule ax (concl "p0 @ (0;{x}) |- p0 @ (0;{x})"))))))))))
)2sp";

const char* kA4 = R"2sp((proof LTL (name "A4")
  (rule impR (concl "|- (box p0 -> p0) @ (0;{})")
    (rule boxL (alpha (0;{})) (beta (0;{})) (concl "box p0 @ (0;{}) |- p0 @ (0;{})")
      (rule ax (concl "p0 @ (0;{}) |- p0 @ (0;{})")))))
)2sp";

const char* kA5 = R"2sp((proof LTL (name "A5")
  (rule impR (concl "|- (box p0 -> box box p0) @ (0;{})")
    (rule boxR (alpha (0;{})) (x y) (concl "box p0 @ (0;{}) |- box box p0 @ (0;{})")
      (rule boxR (alpha (0;{y})) (x x) (concl "box p0 @ (0;{}) |- box p0 @ (0;{y})")
        (rule boxL (alpha (0;{})) (beta (0;{x,y})) (concl "box p0 @ (0;{}) |- p0 @ (0;{x,y})")
          (rule ax (concl "p0 @ (0;{x,y}) |- p0 @ (0;{x,y})")))))))
)2sp";

const char* kA6 = R"2sp((proof LTL (name "A6")
  (rule impR (concl "|- (box p0 -> X p0) @ (0;{})")
    (rule boxL (alpha (0;{})) (beta (1;{})) (concl "box p0 @ (0;{}) |- X p0 @ (0;{})")
      (rule nextR (alpha (0;{})) (concl "p0 @ (1;{}) |- X p0 @ (0;{})")
        (rule ax (concl "p0 @ (1;{}) |- p0 @ (1;{})"))))))
)2sp";

const char* kA7 = R"2sp((proof LTL (name "A7")
  (rule impR (concl "|- (box p0 -> X box p0) @ (0;{})")
    (rule nextR (alpha (0;{})) (concl "box p0 @ (0;{}) |- X box p0 @ (0;{})")
      (rule boxR (alpha (1;{})) (x x) (concl "box p0 @ (0;{}) |- box p0 @ (1;{})")
        (rule boxL (alpha (0;{})) (beta (1;{x})) (concl "box p0 @ (0;{}) |- p0 @ (1;{x})")
          (rule ax (concl "p0 @ (1;{x}) |- p0 @ (1;{x})")))))))
)2sp";

const char* kA8 = R"2sp((proof LTL (name "A8")
  (rule impR (concl "|- (p0 & box (p0 -> X p0) -> box p0) @ (0;{})")
    (rule boxR (alpha (0;{})) (x z) (concl "(p0 & box (p0 -> X p0)) @ (0;{}) |- box p0 @ (0;{})")
      (rule cL (concl "(p0 & box (p0 -> X p0)) @ (0;{}) |- p0 @ (0;{z})")
        (rule andL2 (other "p0") (concl "(p0 & box (p0 -> X p0)) @ (0;{}), (p0 & box (p0 -> X p0)) @ (0;{}) |- p0 @ (0;{z})")
          (rule exL (i 0) (concl "(p0 & box (p0 -> X p0)) @ (0;{}), box (p0 -> X p0) @ (0;{}) |- p0 @ (0;{z})")
            (rule andL1 (other "box (p0 -> X p0)") (concl "box (p0 -> X p0) @ (0;{}), (p0 & box (p0 -> X p0)) @ (0;{}) |- p0 @ (0;{z})")
              (rule ind (alpha (0;{})) (x x) (beta (0;{z})) (concl "box (p0 -> X p0) @ (0;{}), p0 @ (0;{}) |- p0 @ (0;{z})")
                (bridge (concl "box (p0 -> X p0) @ (0;{}), p0 @ (0;{x}) |- p0 @ (1;{x})")
                  (rule boxL (alpha (0;{})) (beta (0;{x})) (concl "p0 @ (0;{x}), box (p0 -> X p0) @ (0;{}) |- p0 @ (1;{x})")
                    (rule impL (concl "p0 @ (0;{x}), (p0 -> X p0) @ (0;{x}) |- p0 @ (1;{x})")
                      (rule nextL (alpha (0;{x})) (concl "X p0 @ (0;{x}) |- p0 @ (1;{x})")
                        (rule ax (concl "p0 @ (1;{x}) |- p0 @ (1;{x})")))
                      (rule ax (concl "p0 @ (0;{x}) |- p0 @ (0;{x})")))))))))))))
)2sp";

// The cut on (p0 & X p0)@(0;{z}) that permutation cannot push above IND.
const char* kBlockedCut = R"2sp((proof LTL (name "blocked-cut")
  (rule boxR (alpha (0;{})) (x z) (concl "(p0 & X p0) @ (0;{}), box (p0 -> X X p0) @ (0;{}) |- box p0 @ (0;{})")
    (rule cut (concl "(p0 & X p0) @ (0;{}), box (p0 -> X X p0) @ (0;{}) |- p0 @ (0;{z})")
      (bridge (concl "(p0 & X p0) @ (0;{}), box (p0 -> X X p0) @ (0;{}) |- (p0 & X p0) @ (0;{z})")
        (rule ind (alpha (0;{})) (x x) (beta (0;{z})) (concl "box (p0 -> X X p0) @ (0;{}), (p0 & X p0) @ (0;{}) |- (p0 & X p0) @ (0;{z})")
          (rule cL (concl "box (p0 -> X X p0) @ (0;{}), (p0 & X p0) @ (0;{x}) |- (p0 & X p0) @ (1;{x})")
            (rule andL2 (other "p0") (concl "box (p0 -> X X p0) @ (0;{}), (p0 & X p0) @ (0;{x}), (p0 & X p0) @ (0;{x}) |- (p0 & X p0) @ (1;{x})")
              (rule exL (i 1) (concl "box (p0 -> X X p0) @ (0;{}), (p0 & X p0) @ (0;{x}), X p0 @ (0;{x}) |- (p0 & X p0) @ (1;{x})")
                (rule andL1 (other "X p0") (concl "box (p0 -> X X p0) @ (0;{}), X p0 @ (0;{x}), (p0 & X p0) @ (0;{x}) |- (p0 & X p0) @ (1;{x})")
                  (bridge (concl "box (p0 -> X X p0) @ (0;{}), X p0 @ (0;{x}), p0 @ (0;{x}) |- (p0 & X p0) @ (1;{x})")
                    (rule nextL (alpha (0;{x})) (concl "p0 @ (0;{x}), box (p0 -> X X p0) @ (0;{}), X p0 @ (0;{x}) |- (p0 & X p0) @ (1;{x})")
                      (bridge (concl "p0 @ (0;{x}), box (p0 -> X X p0) @ (0;{}), p0 @ (1;{x}) |- (p0 & X p0) @ (1;{x})")
                        (rule boxL (alpha (0;{})) (beta (0;{x})) (concl "p0 @ (1;{x}), p0 @ (0;{x}), box (p0 -> X X p0) @ (0;{}) |- (p0 & X p0) @ (1;{x})")
                          (rule andR (concl "p0 @ (1;{x}), p0 @ (0;{x}), (p0 -> X X p0) @ (0;{x}) |- (p0 & X p0) @ (1;{x})")
                            (rule ax (concl "p0 @ (1;{x}) |- p0 @ (1;{x})"))
                            (rule impL (concl "p0 @ (0;{x}), (p0 -> X X p0) @ (0;{x}) |- X p0 @ (1;{x})")
                              (rule nextL (alpha (0;{x})) (concl "X X p0 @ (0;{x}) |- X p0 @ (1;{x})")
                                (rule ax (concl "X p0 @ (1;{x}) |- X p0 @ (1;{x})")))
                              (rule ax (concl "p0 @ (0;{x}) |- p0 @ (0;{x})"))))))))))))))
      (rule andL1 (other "X p0") (concl "(p0 & X p0) @ (0;{z}) |- p0 @ (0;{z})")
        (rule ax (concl "p0 @ (0;{z}) |- p0 @ (0;{z})"))))))
)2sp";

const char* kTense1 = R"2sp((proof LTLP (name "tense-H-dia")
  (rule impR (concl "|- (p0 -> H dia p0) @ (0;{};{})")
    (rule hisR (alpha (0;{};{})) (x x) (concl "p0 @ (0;{};{}) |- H dia p0 @ (0;{};{})")
      (rule diaR (alpha (0;{x};{})) (beta (0;{x})) (concl "p0 @ (0;{};{}) |- dia p0 @ (0;{x};{})")
        (rule ax (concl "p0 @ (0;{};{}) |- p0 @ (0;{};{})"))))))
)2sp";

const char* kTense2 = R"2sp((proof LTLP (name "tense-box-P")
  (rule impR (concl "|- (p0 -> box P p0) @ (0;{};{})")
    (rule boxR (alpha (0;{};{})) (x x) (concl "p0 @ (0;{};{}) |- box P p0 @ (0;{};{})")
      (rule onceR (alpha (0;{};{x})) (beta (0;{x})) (concl "p0 @ (0;{};{}) |- P p0 @ (0;{};{x})")
        (rule ax (concl "p0 @ (0;{};{}) |- p0 @ (0;{};{})"))))))
)2sp";

const char* kTense3 = R"2sp((proof LTLP (name "tense-X-Y")
  (rule impR (concl "|- (p0 -> X Y p0) @ (0;{};{})")
    (rule nextR (alpha (0;{};{})) (concl "p0 @ (0;{};{}) |- X Y p0 @ (0;{};{})")
      (rule prevR (alpha (1;{};{})) (concl "p0 @ (0;{};{}) |- Y p0 @ (1;{};{})")
        (rule ax (concl "p0 @ (0;{};{}) |- p0 @ (0;{};{})"))))))
)2sp";

const char* kTense4 = R"2sp((proof LTLP (name "tense-Y-X")
  (rule impR (concl "|- (p0 -> Y X p0) @ (0;{};{})")
    (rule prevR (alpha (0;{};{})) (concl "p0 @ (0;{};{}) |- Y X p0 @ (0;{};{})")
      (rule nextR (alpha (-1;{};{})) (concl "p0 @ (0;{};{}) |- X p0 @ (-1;{};{})")
        (rule ax (concl "p0 @ (0;{};{}) |- p0 @ (0;{};{})"))))))
)2sp";

std::vector<CorpusEntry> build() {
    const std::vector<S> ltlBoth = {S::LTL, S::LTL_IndAx};
    return {
        {"axiom-K", true, kAxiomK, {S::K, S::D, S::T, S::K4, S::S4}, {}},
        {"axiom-D", true, kAxiomD, {S::D, S::T, S::S4}, {S::K, S::K4}},
        {"axiom-T", true, kAxiomT, {S::T, S::S4}, {S::K, S::D, S::K4}},
        {"axiom-4", true, kAxiom4, {S::K4, S::S4}, {S::K, S::D, S::T}},
        {"diamond-true", false, kDiamondTrue, {S::D, S::T, S::S4}, {S::K, S::K4}},
        {"axiom-S4.2", true, kS42, {S::S42}, {}},
        {"A1", true, kA1, ltlBoth, {}},
        {"A2", true, kA2, ltlBoth, {}},
        {"A3", true, kA3, ltlBoth, {}},
        {"A4", true, kA4, ltlBoth, {}},
        {"A5", true, kA5, ltlBoth, {}},
        {"A6", true, kA6, ltlBoth, {}},
        {"A7", true, kA7, ltlBoth, {}},
        {"A8", true, kA8, {S::LTL}, {S::LTL_IndAx}},
        {"blocked-cut", false, kBlockedCut, {S::LTL}, {S::LTL_IndAx}},
        {"tense-H-dia", true, kTense1, {S::LTLP}, {}},
        {"tense-box-P", true, kTense2, {S::LTLP}, {}},
        {"tense-X-Y", true, kTense3, {S::LTLP}, {}},
        {"tense-Y-X", true, kTense4, {S::LTLP}, {}},
    };
}

bool contains(const std::vector<S>& v, S s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

} // namespace

const std::vector<CorpusEntry>& builtinCorpus() {
    static const std::vector<CorpusEntry> corpus = build();
    return corpus;
}

const CorpusEntry& corpusEntry(const std::string& name) {
    for (const CorpusEntry& e : builtinCorpus())
        if (e.name == name) return e;
    throw std::out_of_range("no corpus entry named " + name);
}

Proof corpusProof(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, Proof> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    Proof p = expandDoubleLines(parseProof(corpusEntry(name).text));
    cache[name] = p;
    return p;
}

std::vector<const CorpusEntry*> axiomsFor(SystemId sys) {
    std::vector<const CorpusEntry*> out;
    for (const CorpusEntry& e : builtinCorpus())
        if (e.axiom && (contains(e.acceptedIn, sys) || contains(e.rejectedIn, sys))) out.push_back(&e);
    return out;
}

bool expectedAccepted(const CorpusEntry& e, SystemId sys) {
    return contains(e.acceptedIn, sys);
}

} // namespace twoseq

#pragma once

#include "twoseq/calculus.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace twoseq {

class CutElimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Collected while mixing: one trace line per recursive step, and the
// recursive entries where the K/K4 hypothesis did not hold.
struct MixReport {
    std::vector<std::string> trace;
    std::vector<std::string> findings;
};

// 0 for a cut-free proof, else max(deg(A) + 1) over cut formulas A.
std::size_t proofDegree(const Proof& p);

// From proofs of G |- D and G' |- D', a proof of G, G'-A |- D-A, D' whose degree
// is at most deg(A). Core modal systems only.
Proof mix(const Proof& left, const Proof& right, const PFormula& a, SystemId sys,
          MixReport* report = nullptr);

// Cut-free proof of the same end sequent, in canonical eigen form.
Proof eliminateCuts(const Proof& p, SystemId sys, MixReport* report = nullptr);

// Every p-formula of every node is a subformula of some end-sequent formula.
bool verifySubformulaProperty(const Proof& p);

// Bounded forward saturation of cut-free derivable sequents.
struct ConsistencyBounds {
    std::size_t height = 4;
    std::size_t maxFormulaSize = 3;   // over one atom p0
    std::size_t maxPositionLength = 1;
    std::size_t tokens = 1;
    std::size_t maxSequentSize = 2;
};

struct ConsistencyResult {
    std::size_t sequents = 0;          // distinct derivable sequents found
    std::size_t perHeight[8] = {};     // new sequents first reached at each height
    bool emptyDerived = false;
};

ConsistencyResult enumerateCutFree(SystemId sys, const ConsistencyBounds& bounds = {});

} // namespace twoseq

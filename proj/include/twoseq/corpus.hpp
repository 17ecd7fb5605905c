#pragma once

#include "twoseq/calculus.hpp"

#include <string>
#include <vector>

namespace twoseq {

struct CorpusEntry {
    std::string name;
    bool axiom;                      // an axiom derivation, as opposed to an illustrative proof
    std::string text;                // .2sp source
    std::vector<SystemId> acceptedIn;
    std::vector<SystemId> rejectedIn;
};

const std::vector<CorpusEntry>& builtinCorpus();
const CorpusEntry& corpusEntry(const std::string& name);
Proof corpusProof(const std::string& name);

// Axiom derivations with a recorded verdict for `sys`.
std::vector<const CorpusEntry*> axiomsFor(SystemId sys);
bool expectedAccepted(const CorpusEntry& e, SystemId sys);

} // namespace twoseq

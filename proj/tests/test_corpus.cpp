#include "doctest.h"

#include "twoseq/corpus.hpp"

using namespace twoseq;

TEST_SUITE("corpus") {

TEST_CASE("every corpus proof has the expected verdict in every listed system") {
    for (const CorpusEntry& e : builtinCorpus()) {
        Proof p = corpusProof(e.name);
        for (SystemId s : e.acceptedIn) {
            CheckReport r = checkProof(p, s);
            INFO(e.name << " in " << systemName(s) << ": " << describe(r));
            CHECK(r.accepted);
        }
        for (SystemId s : e.rejectedIn) {
            CheckReport r = checkProof(p, s);
            INFO(e.name << " in " << systemName(s));
            CHECK_FALSE(r.accepted);
        }
    }
}

}

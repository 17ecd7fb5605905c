#pragma once

#include "twoseq/syntax.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace twoseq {

enum class SystemId { K, D, T, K4, S4, S42, LTL, LTL_IndAx, LTLP };

const char* systemName(SystemId s);
std::optional<SystemId> systemFromName(const std::string& name);
Family familyOf(SystemId s);
bool isCoreModal(SystemId s);
bool isLtlSystem(SystemId s);
const std::vector<SystemId>& allSystems();

enum class Rule {
    Ax, Cut,
    WL, WR, CL, CR, ExL, ExR,
    NotL, NotR, AndL1, AndL2, AndR, OrL, OrR1, OrR2, ImpL, ImpR,
    BoxL, BoxR, DiaL, DiaR,
    NextL, NextR, PrevL, PrevR, HistL, HistR, OnceL, OnceR,
    Ind, PInd, IndAx,
};

const char* ruleName(Rule r);
std::optional<Rule> ruleFromName(const std::string& name);
std::size_t ruleArity(Rule r);
bool isStructural(Rule r);
bool isEigenRule(Rule r);
bool isLeftRule(Rule r);
bool isRightRule(Rule r);

// alpha: base position (α, or s in the temporal calculi)
// beta:  extension (β, or t = <m,T> in the temporal calculi)
// x:     eigen token
// formula: the p-formula of Ax, W⊢/⊢W and Cut
// other: the inactive operand of ∧⊢ and ⊢∨
// index: exchange index i (swaps i and i+1)
struct RuleParams {
    std::optional<Position> alpha;
    std::optional<Position> beta;
    std::optional<Token> x;
    std::optional<PFormula> formula;
    std::optional<Formula> other;
    std::optional<std::size_t> index;

    bool operator==(const RuleParams&) const = default;
};

struct ProofNode;
using Proof = std::shared_ptr<const ProofNode>;

struct ProofNode {
    Rule rule;
    RuleParams params;
    Sequent conclusion;
    std::vector<Proof> premises;
};

Proof makeNode(Rule r, RuleParams params, Sequent conclusion, std::vector<Proof> premises);

std::size_t height(const Proof& p);
std::size_t proofSize(const Proof& p);
bool isCutFree(const Proof& p);
TokenSet tokensOf(const Proof& p);
bool proofEqual(const Proof& a, const Proof& b);

struct Violation {
    std::string condition;
    std::string message;
};

struct Failure {
    std::string path;
    std::string rule;
    std::string condition;
    std::string message;
};

struct CheckReport {
    bool accepted = true;
    std::vector<Failure> failures;
};

class RuleError : public std::runtime_error {
public:
    RuleError(Rule r, std::vector<Violation> v);
    std::vector<Violation> violations;
};

// Conclusion determined by the premises and parameters; Ax and IndAx read it from `declared`.
std::optional<Sequent> expectedConclusion(Rule r, const RuleParams& params,
                                          const std::vector<const Sequent*>& premises,
                                          SystemId sys, const Sequent* declared,
                                          std::vector<Violation>& out);

std::vector<Violation> checkRuleInstance(const ProofNode& node, SystemId sys);
CheckReport checkProof(const Proof& p, SystemId sys);

// Builds a node whose conclusion is computed; throws RuleError on any violation.
Proof apply(SystemId sys, Rule r, RuleParams params, std::vector<Proof> premises);
Proof axiom(const PFormula& pf);

class BridgeError : public std::runtime_error {
public:
    BridgeError(const std::string& msg, std::optional<PFormula> missing);
    std::optional<PFormula> missing;
};

// Chain of structural steps turning a proof of `p`'s conclusion into one of `to`.
Proof structuralBridge(const Proof& p, const Sequent& to);
bool bridgeable(const Sequent& from, const Sequent& to);

struct ScriptNode {
    bool bridge = false;
    Rule rule = Rule::Ax;
    RuleParams params;
    std::optional<Sequent> conclusion;
    std::vector<ScriptNode> premises;
    int line = 0;
    int col = 0;
};

struct ProofScript {
    SystemId system = SystemId::K;
    std::string name;
    ScriptNode root;
};

class ExpandError : public std::runtime_error {
public:
    ExpandError(const std::string& path, const std::string& msg);
    std::string path;
};

Proof expandDoubleLines(const ProofScript& script);
ProofScript toScript(const Proof& p, SystemId sys, const std::string& name = "");

std::string describe(const CheckReport& r);

} // namespace twoseq

#pragma once

#include "twoseq/calculus.hpp"

#include <functional>
#include <stdexcept>

namespace twoseq {

class TransformError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Yields b0, b1, ... skipping every token in `used`.
class FreshTokenSource {
public:
    explicit FreshTokenSource(TokenSet used, std::string stem = "b");
    Token next();
    void reserve(const Token& t) { used_.insert(t); }

private:
    TokenSet used_;
    std::string stem_;
    std::size_t counter_ = 0;
};

// abs maps every absolute position; rel(alpha, beta) gives the new extension
// of a node whose old base and extension are alpha and beta; eigen renames
// eigen tokens and may be left empty.
struct PositionMap {
    std::function<Position(const Position&)> abs;
    std::function<Position(const Position&, const Position&)> rel;
    std::function<Token(const Token&)> eigen;
};

// Applies `m` to every conclusion and parameter.
Proof mapProof(const Proof& p, const PositionMap& m);

// Canonical form: eigen tokens renamed to b0, b1, ... in post-order
// (leftmost-innermost), skipping tokens free in the proof.
// Throws TransformError("ill-formed proof") if a rule instance is invalid.
Proof renameEigen(const Proof& p, std::optional<SystemId> sys = std::nullopt);

// renameEigen whose new tokens also avoid `avoid`.
Proof freshen(const Proof& p, const TokenSet& avoid, std::optional<SystemId> sys = std::nullopt);

// Pi[source/target] over sequence positions.
Proof prefixReplaceProof(const Proof& p, const SeqPos& source, const SeqPos& target);

// Every position s becomes beta.s (sequences), s union beta (sets) or s + beta (LTL pairs).
Proof liftProof(const Proof& p, const Position& beta);

// From a proof of |- A @ e, with e the empty position, a proof of |- (box A) @ e.
Proof necessitate(const Proof& p, SystemId sys);

// From Gamma1 |- (A -> B)@a, Delta1 and Gamma2 |- A@a, Delta2,
// a proof of Gamma1, Gamma2 |- B@a, Delta1, Delta2 using two cuts.
Proof composeMP(const Proof& pAB, const Proof& pA, SystemId sys);

// Replaces every IND node by cuts against an IndAx leaf.
Proof indToAxiom(const Proof& p);

// The position family's empty position: [], {}, (0;{}) or (0;{};{}).
Position emptyPosition(Family f);

} // namespace twoseq

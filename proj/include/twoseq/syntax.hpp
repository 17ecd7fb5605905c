#pragma once

#include "twoseq/positions.hpp"

#include <memory>
#include <string>
#include <vector>

namespace twoseq {

// Next = X (∘), Prev = Y (•), Hist = H (■), Once = P (◆).
enum class Op { Atom, Not, Box, Dia, Next, Prev, Hist, Once, And, Or, Imp };

bool isUnary(Op op);
bool isBinary(Op op);
bool isTemporal(Op op);
bool isPastOp(Op op);

class Formula {
public:
    Formula() = default;

    static Formula atom(std::string name);
    static Formula unary(Op op, Formula a);
    static Formula binary(Op op, Formula a, Formula b);

    static Formula neg(Formula a) { return unary(Op::Not, std::move(a)); }
    static Formula box(Formula a) { return unary(Op::Box, std::move(a)); }
    static Formula dia(Formula a) { return unary(Op::Dia, std::move(a)); }
    static Formula next(Formula a) { return unary(Op::Next, std::move(a)); }
    static Formula conj(Formula a, Formula b) { return binary(Op::And, std::move(a), std::move(b)); }
    static Formula disj(Formula a, Formula b) { return binary(Op::Or, std::move(a), std::move(b)); }
    static Formula imp(Formula a, Formula b) { return binary(Op::Imp, std::move(a), std::move(b)); }

    bool valid() const { return bool(n_); }
    Op op() const;
    const std::string& name() const;
    const Formula& arg() const;   // sole operand of a unary, left operand of a binary
    const Formula& right() const;
    std::size_t hash() const;

    bool operator==(const Formula& o) const;
    std::strong_ordering operator<=>(const Formula& o) const;

private:
    struct Node;
    std::shared_ptr<const Node> n_;
};

struct Formula::Node {
    Op op;
    std::string atom;
    Formula a, b;
    std::size_t hash;
};

struct PFormula {
    Formula f;
    Position pos;

    bool operator==(const PFormula& o) const { return f == o.f && pos == o.pos; }
    std::strong_ordering operator<=>(const PFormula& o) const;
};

struct Sequent {
    std::vector<PFormula> ant;
    std::vector<PFormula> suc;

    bool operator==(const Sequent& o) const = default;
    bool empty() const { return ant.empty() && suc.empty(); }
};

class DegreeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::size_t degree(const Formula& f);
std::size_t modalDepth(const Formula& f);
std::size_t formulaSize(const Formula& f);

// Membership in Sub(root); □/◇ steps let the candidate's position extend the current one.
bool isSubformula(const PFormula& cand, const PFormula& root);

TokenSet tokensOf(const Sequent& s);
TokenSet tokensOf(const std::vector<PFormula>& v);
std::vector<Position> positionsOf(const Sequent& s);
std::vector<SeqPos> seqPositionsOf(const std::vector<PFormula>& v);
std::set<std::string> atomsOf(const Formula& f);
std::set<std::string> atomsOf(const Sequent& s);

// Every occurrence of pf removed.
std::vector<PFormula> cana(const std::vector<PFormula>& v, const PFormula& pf);

std::string render(const Formula& f);
std::string render(const PFormula& pf);
std::string render(const Sequent& s);

} // namespace twoseq

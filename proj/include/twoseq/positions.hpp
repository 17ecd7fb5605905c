#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace twoseq {

struct Token {
    std::string name;

    Token() = default;
    explicit Token(std::string n) : name(std::move(n)) {}
    auto operator<=>(const Token&) const = default;
};

using TokenSet = std::set<Token>;

// Finite sequence of tokens; used by K, D, T, K4, S4.
struct SeqPos {
    std::vector<Token> items;

    SeqPos() = default;
    explicit SeqPos(std::vector<Token> v) : items(std::move(v)) {}
    std::size_t size() const { return items.size(); }
    bool empty() const { return items.empty(); }
    auto operator<=>(const SeqPos&) const = default;
};

// Finite set of tokens; used by S4.2.
struct SetPos {
    TokenSet items;

    SetPos() = default;
    explicit SetPos(TokenSet s) : items(std::move(s)) {}
    auto operator<=>(const SetPos&) const = default;
};

// <n, S> with n a step count and S a finite set of tokens.
struct LtlPos {
    std::uint64_t steps = 0;
    TokenSet future;

    auto operator<=>(const LtlPos&) const = default;
};

// <r, S1, S2> with S1 and S2 disjoint.
struct PastPos {
    std::int64_t offset = 0;
    TokenSet future;
    TokenSet past;

    static PastPos make(std::int64_t r, TokenSet s1, TokenSet s2);
    auto operator<=>(const PastPos&) const = default;
};

using Position = std::variant<SeqPos, SetPos, LtlPos, PastPos>;

enum class Family { Seq, Set, Ltl, Past };

class PositionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Family familyOf(const Position& p);
const char* familyName(Family f);

SeqPos concat(const SeqPos& a, const SeqPos& b);
SeqPos append(const SeqPos& a, const Token& x);
bool isPrefix(const SeqPos& u, const SeqPos& s);
SeqPos dropPrefix(const SeqPos& s, const SeqPos& u);

enum class Relation { OneStep, ReflexiveOneStep, StrictPrefix, Prefix };

// OneStep: t = s.x; ReflexiveOneStep: t = s or t = s.x;
// StrictPrefix: s a proper prefix of t; Prefix: s a prefix of t.
bool related(const SeqPos& s, const SeqPos& t, Relation r);

// s[v/u]: replace the prefix u of s by v; identity when u is not a prefix.
SeqPos prefixReplace(const SeqPos& s, const SeqPos& u, const SeqPos& v);

// All prefixes of the given positions; empty for an empty input.
std::set<SeqPos> initials(const std::vector<SeqPos>& ps);

LtlPos ltlAdd(const LtlPos& s, const LtlPos& t);
// s[t/x]
LtlPos ltlSubst(const LtlPos& s, const LtlPos& t, const Token& x);

PastPos pastAdd(const PastPos& s, std::uint64_t m, const TokenSet& t);
PastPos pastSub(const PastPos& s, std::uint64_t m, const TokenSet& t);

TokenSet tokensOf(const Position& p);
Position renameToken(const Position& p, const Token& from, const Token& to);

std::string render(const Position& p);
std::string render(const SeqPos& p);

} // namespace twoseq

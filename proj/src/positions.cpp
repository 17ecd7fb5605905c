#include "twoseq/positions.hpp"

#include <algorithm>
#include <sstream>

namespace twoseq {

PastPos PastPos::make(std::int64_t r, TokenSet s1, TokenSet s2) {
    for (const Token& t : s1)
        if (s2.count(t))
            throw PositionError("past position sets overlap on token " + t.name);
    return PastPos{r, std::move(s1), std::move(s2)};
}

Family familyOf(const Position& p) {
    return static_cast<Family>(p.index());
}

const char* familyName(Family f) {
    switch (f) {
    case Family::Seq: return "sequence";
    case Family::Set: return "set";
    case Family::Ltl: return "ltl";
    case Family::Past: return "past";
    }
    return "?";
}

SeqPos concat(const SeqPos& a, const SeqPos& b) {
    SeqPos r = a;
    r.items.insert(r.items.end(), b.items.begin(), b.items.end());
    return r;
}

SeqPos append(const SeqPos& a, const Token& x) {
    SeqPos r = a;
    r.items.push_back(x);
    return r;
}

bool isPrefix(const SeqPos& u, const SeqPos& s) {
    return u.size() <= s.size() && std::equal(u.items.begin(), u.items.end(), s.items.begin());
}

SeqPos dropPrefix(const SeqPos& s, const SeqPos& u) {
    if (!isPrefix(u, s))
        throw PositionError(render(u) + " is not a prefix of " + render(s));
    return SeqPos(std::vector<Token>(s.items.begin() + u.size(), s.items.end()));
}

bool related(const SeqPos& s, const SeqPos& t, Relation r) {
    switch (r) {
    case Relation::OneStep: return t.size() == s.size() + 1 && isPrefix(s, t);
    case Relation::ReflexiveOneStep: return s == t || (t.size() == s.size() + 1 && isPrefix(s, t));
    case Relation::StrictPrefix: return s.size() < t.size() && isPrefix(s, t);
    case Relation::Prefix: return isPrefix(s, t);
    }
    return false;
}

SeqPos prefixReplace(const SeqPos& s, const SeqPos& u, const SeqPos& v) {
    if (!isPrefix(u, s))
        return s;
    SeqPos r = v;
    r.items.insert(r.items.end(), s.items.begin() + u.size(), s.items.end());
    return r;
}

std::set<SeqPos> initials(const std::vector<SeqPos>& ps) {
    std::set<SeqPos> out;
    if (!ps.empty())
        out.insert(SeqPos{});
    for (const SeqPos& p : ps)
        for (std::size_t k = 1; k <= p.size(); ++k)
            out.insert(SeqPos(std::vector<Token>(p.items.begin(), p.items.begin() + k)));
    return out;
}

LtlPos ltlAdd(const LtlPos& s, const LtlPos& t) {
    LtlPos r = s;
    r.steps += t.steps;
    r.future.insert(t.future.begin(), t.future.end());
    return r;
}

LtlPos ltlSubst(const LtlPos& s, const LtlPos& t, const Token& x) {
    if (!s.future.count(x))
        return s;
    LtlPos r = s;
    r.future.erase(x);
    return ltlAdd(r, t);
}

PastPos pastAdd(const PastPos& s, std::uint64_t m, const TokenSet& t) {
    PastPos r;
    r.offset = s.offset + static_cast<std::int64_t>(m);
    for (const Token& a : s.future)
        if (!t.count(a)) r.future.insert(a);
    r.past = s.past;
    for (const Token& a : t)
        if (!s.future.count(a)) r.past.insert(a);
    return r;
}

PastPos pastSub(const PastPos& s, std::uint64_t m, const TokenSet& t) {
    PastPos r;
    r.offset = s.offset - static_cast<std::int64_t>(m);
    r.future = s.future;
    for (const Token& a : t)
        if (!s.past.count(a)) r.future.insert(a);
    for (const Token& a : s.past)
        if (!t.count(a)) r.past.insert(a);
    return r;
}

TokenSet tokensOf(const Position& p) {
    return std::visit([](const auto& v) -> TokenSet {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, SeqPos>)
            return TokenSet(v.items.begin(), v.items.end());
        else if constexpr (std::is_same_v<V, SetPos>)
            return v.items;
        else if constexpr (std::is_same_v<V, LtlPos>)
            return v.future;
        else {
            TokenSet r = v.future;
            r.insert(v.past.begin(), v.past.end());
            return r;
        }
    }, p);
}

static void renameIn(TokenSet& s, const Token& from, const Token& to) {
    if (s.erase(from)) s.insert(to);
}

Position renameToken(const Position& p, const Token& from, const Token& to) {
    Position r = p;
    std::visit([&](auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, SeqPos>)
            std::replace(v.items.begin(), v.items.end(), from, to);
        else if constexpr (std::is_same_v<V, SetPos>)
            renameIn(v.items, from, to);
        else if constexpr (std::is_same_v<V, LtlPos>)
            renameIn(v.future, from, to);
        else {
            renameIn(v.future, from, to);
            renameIn(v.past, from, to);
        }
    }, r);
    return r;
}

static void renderSet(std::ostringstream& os, const TokenSet& s) {
    os << '{';
    bool first = true;
    for (const Token& t : s) {
        if (!first) os << ',';
        os << t.name;
        first = false;
    }
    os << '}';
}

std::string render(const SeqPos& p) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) os << ',';
        os << p.items[i].name;
    }
    os << ']';
    return os.str();
}

std::string render(const Position& p) {
    std::ostringstream os;
    std::visit([&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, SeqPos>)
            os << render(v);
        else if constexpr (std::is_same_v<V, SetPos>)
            renderSet(os, v.items);
        else if constexpr (std::is_same_v<V, LtlPos>) {
            os << '(' << v.steps << ';';
            renderSet(os, v.future);
            os << ')';
        } else {
            os << '(' << v.offset << ';';
            renderSet(os, v.future);
            os << ';';
            renderSet(os, v.past);
            os << ')';
        }
    }, p);
    return os.str();
}

} // namespace twoseq

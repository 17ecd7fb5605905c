#include "doctest.h"

#include "twoseq/parser.hpp"
#include "twoseq/positions.hpp"

#include <random>

using namespace twoseq;

namespace {

SeqPos seq(std::initializer_list<const char*> names) {
    std::vector<Token> v;
    for (const char* n : names) v.emplace_back(n);
    return SeqPos(std::move(v));
}

TokenSet toks(std::initializer_list<const char*> names) {
    TokenSet s;
    for (const char* n : names) s.insert(Token(n));
    return s;
}

SeqPos randomSeq(std::mt19937_64& rng, std::size_t maxLen = 4) {
    static const char* names[] = {"x", "y", "z"};
    std::uniform_int_distribution<std::size_t> len(0, maxLen), pick(0, 2);
    std::vector<Token> v;
    for (std::size_t n = len(rng); n > 0; --n) v.emplace_back(names[pick(rng)]);
    return SeqPos(std::move(v));
}

TokenSet randomSet(std::mt19937_64& rng) {
    static const char* names[] = {"x", "y", "z", "w"};
    std::bernoulli_distribution coin(0.4);
    TokenSet s;
    for (const char* n : names)
        if (coin(rng)) s.insert(Token(n));
    return s;
}

// one-step closure by iteration
bool reachable(const SeqPos& s, const SeqPos& t, bool reflexive) {
    if (reflexive && s == t) return true;
    SeqPos cur = s;
    while (cur.size() < t.size()) {
        cur = append(cur, t.items[cur.size()]);
        if (!related(s, cur, Relation::Prefix)) return false;
        if (cur == t) return true;
    }
    return false;
}

std::set<SeqPos> prefixesByLength(const std::vector<SeqPos>& ps) {
    std::set<SeqPos> out;
    for (const SeqPos& p : ps)
        for (std::size_t k = 0; k <= p.size(); ++k) out.insert(SeqPos(std::vector<Token>(p.items.begin(), p.items.begin() + k)));
    return out;
}

} // namespace

TEST_SUITE("positions") {

TEST_CASE("concatenation") {
    CHECK(concat(seq({"x"}), seq({"y", "z"})) == seq({"x", "y", "z"}));
    CHECK(concat(seq({"x", "y"}), SeqPos{}) == seq({"x", "y"}));
    CHECK(concat(SeqPos{}, seq({"x", "y"})) == seq({"x", "y"}));
    CHECK(concat(concat(seq({"x"}), seq({"y"})), seq({"z"})) == concat(seq({"x"}), concat(seq({"y"}), seq({"z"}))));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 300; ++i) {
        SeqPos a = randomSeq(rng), b = randomSeq(rng), c = randomSeq(rng);
        CHECK(concat(concat(a, b), c) == concat(a, concat(b, c)));
        CHECK(concat(a, SeqPos{}) == a);
    }
}

TEST_CASE("order relations") {
    CHECK(related(seq({"x"}), seq({"x", "y"}), Relation::OneStep));
    CHECK_FALSE(related(seq({"x"}), seq({"x"}), Relation::StrictPrefix));
    CHECK(related(seq({"x"}), seq({"x"}), Relation::Prefix));
    CHECK(related(SeqPos{}, seq({"x", "y", "z"}), Relation::StrictPrefix));
    CHECK(related(seq({"x"}), seq({"x"}), Relation::ReflexiveOneStep));
    CHECK_FALSE(related(seq({"x"}), seq({"y", "x"}), Relation::OneStep));

    std::mt19937_64 rng(2);
    for (int i = 0; i < 500; ++i) {
        SeqPos s = randomSeq(rng, 3), t = randomSeq(rng, 3), u = randomSeq(rng, 3);
        if (rng() % 2) t = concat(s, randomSeq(rng, 2));
        bool le = related(s, t, Relation::Prefix);
        CHECK(le == reachable(s, t, true));
        CHECK(related(s, t, Relation::StrictPrefix) == reachable(s, t, false));
        CHECK(related(s, t, Relation::StrictPrefix) == (le && s != t));
        CHECK(related(s, t, Relation::OneStep) == (le && t.size() == s.size() + 1));
        CHECK(related(s, t, Relation::ReflexiveOneStep) == (s == t || related(s, t, Relation::OneStep)));
        CHECK(related(s, s, Relation::Prefix));
        if (le && related(t, s, Relation::Prefix)) CHECK(s == t);
        if (le && related(t, u, Relation::Prefix)) CHECK(related(s, u, Relation::Prefix));
    }
}

TEST_CASE("prefix replacement") {
    CHECK(prefixReplace(seq({"x", "y", "z"}), seq({"x", "y"}), seq({"a"})) == seq({"a", "z"}));
    CHECK(prefixReplace(seq({"x"}), seq({"y"}), seq({"a"})) == seq({"x"}));
    CHECK(prefixReplace(seq({"x", "y"}), SeqPos{}, seq({"b"})) == seq({"b", "x", "y"}));

    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        SeqPos s = randomSeq(rng), u = randomSeq(rng, 2), v = randomSeq(rng, 2);
        if (rng() % 2) s = concat(u, randomSeq(rng, 2));
        // oracle: split s at every point and compare the head with u
        SeqPos expect = s;
        for (std::size_t k = 0; k <= s.size(); ++k) {
            SeqPos head(std::vector<Token>(s.items.begin(), s.items.begin() + k));
            SeqPos tail(std::vector<Token>(s.items.begin() + k, s.items.end()));
            if (head == u) expect = concat(v, tail);
        }
        CHECK(prefixReplace(s, u, v) == expect);
        CHECK(prefixReplace(s, u, u) == s);
        bool vProperPrefixOfU = related(v, u, Relation::StrictPrefix);
        if (related(u, s, Relation::Prefix) && !vProperPrefixOfU)
            CHECK(prefixReplace(prefixReplace(s, u, v), v, u) == s);
    }
}

TEST_CASE("initial segments") {
    using S = std::set<SeqPos>;
    CHECK(initials({seq({"x", "y"})}) == S{SeqPos{}, seq({"x"}), seq({"x", "y"})});
    CHECK(initials({}).empty());
    CHECK(initials({seq({"x"}), seq({"x", "z"})}) == S{SeqPos{}, seq({"x"}), seq({"x", "z"})});
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        std::vector<SeqPos> ps;
        for (int k = rng() % 4; k > 0; --k) ps.push_back(randomSeq(rng));
        S got = initials(ps);
        CHECK(got == (ps.empty() ? S{} : prefixesByLength(ps)));
        for (const SeqPos& b : got)
            for (std::size_t k = 0; k <= b.size(); ++k)
                CHECK(got.count(SeqPos(std::vector<Token>(b.items.begin(), b.items.begin() + k))));
    }
}

TEST_CASE("LTL positions") {
    CHECK(ltlAdd(LtlPos{1, toks({"x"})}, LtlPos{2, toks({"y"})}) == LtlPos{3, toks({"x", "y"})});
    CHECK(ltlAdd(LtlPos{4, toks({"x"})}, LtlPos{}) == LtlPos{4, toks({"x"})});
    CHECK(ltlAdd(LtlPos{0, toks({"x"})}, LtlPos{0, toks({"x"})}) == LtlPos{0, toks({"x"})});
    CHECK(ltlSubst(LtlPos{1, toks({"x", "y"})}, LtlPos{2, toks({"z"})}, Token("x")) == LtlPos{3, toks({"y", "z"})});
    CHECK(ltlSubst(LtlPos{1, toks({"y"})}, LtlPos{2, toks({"z"})}, Token("x")) == LtlPos{1, toks({"y"})});
    CHECK(ltlSubst(LtlPos{0, toks({"x"})}, LtlPos{}, Token("x")) == LtlPos{});

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> n(0, 5);
    for (int i = 0; i < 300; ++i) {
        LtlPos a{n(rng), randomSet(rng)}, b{n(rng), randomSet(rng)}, c{n(rng), randomSet(rng)};
        CHECK(ltlAdd(ltlAdd(a, b), c) == ltlAdd(a, ltlAdd(b, c)));
        CHECK(ltlAdd(a, b) == ltlAdd(b, a));
        CHECK(ltlAdd(a, LtlPos{}) == a);
        TokenSet u = a.future;
        u.insert(b.future.begin(), b.future.end());
        CHECK(ltlAdd(a, b) == LtlPos{a.steps + b.steps, u});
        Token x("x");
        LtlPos expect = a;
        if (a.future.count(x)) {
            expect.steps = a.steps + b.steps;
            expect.future.erase(x);
            expect.future.insert(b.future.begin(), b.future.end());
        }
        CHECK(ltlSubst(a, b, x) == expect);
    }
}

TEST_CASE("past positions") {
    Token x("x");
    CHECK(pastAdd(PastPos{0, {}, {x}}, 0, {x}) == PastPos{0, {}, {x}});
    CHECK(pastSub(PastPos{0, {x}, {}}, 0, {x}) == PastPos{0, {x}, {}});
    CHECK(pastAdd(PastPos{-1, {}, {}}, 1, {}) == PastPos{0, {}, {}});
    CHECK_THROWS_AS(PastPos::make(0, {x}, {x}), PositionError);
    CHECK_THROWS_AS(parsePosition("(0;{x};{x})"), ParseError);

    std::mt19937_64 rng(6);
    std::uniform_int_distribution<std::uint64_t> n(0, 4);
    for (int i = 0; i < 500; ++i) {
        TokenSet f = randomSet(rng), p = randomSet(rng);
        for (const Token& t : f) p.erase(t);
        PastPos s{static_cast<std::int64_t>(n(rng)) - 2, f, p};
        TokenSet t = randomSet(rng);
        std::uint64_t m = n(rng);
        PastPos a = pastAdd(s, m, t), b = pastSub(s, m, t);
        for (const Token& k : a.future) CHECK_FALSE(a.past.count(k));
        for (const Token& k : b.future) CHECK_FALSE(b.past.count(k));
        bool fresh = true;
        for (const Token& k : t) fresh = fresh && !f.count(k) && !p.count(k);
        if (fresh) {
            CHECK(pastAdd(pastSub(s, m, t), m, t) == s);
            CHECK(pastSub(pastAdd(s, m, t), m, t) == s);
        }
    }
    // T inside the future set of pastSub(s) is not enough for the round trip
    PastPos s{0, {x}, {}};
    PastPos down = pastSub(s, 0, {x});
    CHECK(down.future.count(x));
    CHECK(pastAdd(down, 0, {x}) == PastPos{0, {}, {}});
    CHECK_FALSE(pastAdd(down, 0, {x}) == s);
}

}

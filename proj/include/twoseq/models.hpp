#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace twoseq {

// Finite pointed Kripke graph; tree models are its unfoldings.
struct GraphModel {
    std::size_t nodes = 1;
    std::size_t root = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::set<std::string>> valuation;

    bool operator==(const GraphModel&) const = default;
};

// v(m) = prefix[m] for m < |prefix|, else loop[(m - |prefix|) mod |loop|].
struct LassoWord {
    std::vector<std::set<std::string>> prefix;
    std::vector<std::set<std::string>> loop;

    const std::set<std::string>& at(std::uint64_t m) const;
    bool operator==(const LassoWord&) const = default;
};

} // namespace twoseq

#pragma once

#include "twoseq/calculus.hpp"
#include "twoseq/models.hpp"

#include <stdexcept>
#include <string>
#include <variant>

namespace twoseq {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int col, const std::string& msg);
    int line;
    int col;
};

Formula parseFormula(const std::string& text);
Position parsePosition(const std::string& text);
PFormula parsePFormula(const std::string& text);
Sequent parseSequent(const std::string& text);
ProofScript parseProof(const std::string& text);

using Model = std::variant<GraphModel, LassoWord>;
Model parseModel(const std::string& text);

std::string renderProof(const ProofScript& script);
std::string renderProof(const Proof& p, SystemId sys, const std::string& name = "");
std::string renderModel(const Model& m);

} // namespace twoseq

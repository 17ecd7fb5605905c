#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twoseq {

// Exit codes: 0 success, 1 rejection or counterexample, 2 usage or I/O error.
// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace twoseq

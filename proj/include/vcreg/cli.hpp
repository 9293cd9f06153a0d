#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vcreg::cli {

// Exit codes: 0 success with every verification passing, 1 verification failure, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace vcreg::cli

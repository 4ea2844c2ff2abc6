#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace egps::cli {

// Entry point shared by the binary and the tests. Exit codes:
//   0  success (for solve: a ground state was found)
//   1  bad arguments, config, or a solver failure
//   2  solve classified the run as spreading / no ground state
//   3  solve hit the iteration cap
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace egps::cli

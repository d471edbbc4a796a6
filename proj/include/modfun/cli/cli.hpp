#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "modfun/qexpansion/qexpansion.hpp"

namespace modfun {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitPrecision = 3, kExitInternal = 4 };

/// "2,3,1;2,5,1" at level N.
TupleA parse_tuple_spec(const std::string& text, long level);
/// "2,3,1".
TripleA parse_triple(const std::string& text, long level);
/// "3*X1^2*X2 - X2 + 5" in `nvars` variables.
IntPoly parse_poly(const std::string& text, int nvars);

/// Runs one command line (args excludes the program name). Documents go to
/// `out` (or the --out file), logs and errors to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modfun

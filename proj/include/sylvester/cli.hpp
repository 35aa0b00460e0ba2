#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sylvester::cli {

enum class Status { kOk = 0, kVerificationFailed = 1, kInvalidInput = 2 };

// Runs one command line (argv[0] included). Returns the process exit code:
// 0 ok, 1 verification failed, 2 invalid input. `in` feeds `score -`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace sylvester::cli

// Acceptance gate: runs every verification suite at full trial counts and
// prints one pass/fail line per criterion. Exit code 0 only when all pass.

#include <cstring>
#include <iostream>

#include "edap/verify.hpp"

int main(int argc, char** argv) {
    edap::VerifyOptions opts;
    opts.seed = 1;
    std::vector<std::string> names = edap::verify_suite_names();
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0)
            opts.quick = true;
        else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
            opts.seed = std::strtoull(argv[++i], nullptr, 10);
        else if (std::strcmp(argv[i], "--suite") == 0 && i + 1 < argc)
            names = {argv[++i]};
    }
    return edap::run_suites(names, opts, std::cout);
}

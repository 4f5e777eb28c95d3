// Acceptance suite runner: one criterion per invocation, one line per
// result.  Usage: acceptance <criterion> [--cli <path>] [--strict]
#include <cstring>
#include <exception>
#include <iostream>
#include <string>

#include "affine/verify.hpp"

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <criterion 1.."
                  << affine::criterion_count() << "> [--cli <path>] [--strict]\n";
        return 2;
    }
    int index = std::atoi(argv[1]);
    affine::VerifyOptions opt;
    for (int k = 2; k < argc; ++k) {
        if (std::strcmp(argv[k], "--cli") == 0 && k + 1 < argc)
            opt.cli_path = argv[++k];
        else if (std::strcmp(argv[k], "--strict") == 0)
            opt.strict = true;
    }
    try {
        affine::CheckResult r = affine::run_criterion(index, opt);
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion "
                  << r.criterion << " (" << r.module << ") " << r.name << ": "
                  << r.detail << "\n";
        return r.passed ? 0 : 1;
    } catch (const std::exception& e) {
        std::cout << "[FAIL] criterion " << index << ": exception: " << e.what()
                  << "\n";
        return 1;
    }
}

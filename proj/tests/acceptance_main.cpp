// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Usage: acceptance [--seed N] [--threads N] [ids...]
#include "smplab/acceptance.hpp"

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv)
{
    smplab::acceptance::Config config;
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--seed" && i + 1 < argc) {
            config.seed = std::stoull(argv[++i]);
        } else if (arg == "--threads" && i + 1 < argc) {
            config.threads = static_cast<unsigned>(std::stoul(argv[++i]));
        } else {
            ids.push_back(std::stoi(arg));
        }
    }
    const bool ok = smplab::acceptance::run_all(config, std::cout, ids);
    std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << std::endl;
    return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}

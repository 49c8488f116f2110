#include <cstdlib>
#include <iostream>

#include "k3lat/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> env;
    if (const char* c = std::getenv(k3lat::cli::kScanCeilingEnv))
        env = c;
    return k3lat::cli::run(args, std::cout, std::cerr, env);
}

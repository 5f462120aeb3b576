#include <iostream>
#include <string>
#include <vector>

#include "dnapack/cli.hpp"

int main(int argc, char** argv)
{
    std::ios::sync_with_stdio(false);
    std::vector<std::string> args(argv, argv + argc);
    return dnapack::cli::run(args, {std::cin, std::cout, std::cerr});
}

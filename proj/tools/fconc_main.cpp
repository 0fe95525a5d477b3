#include <iostream>
#include <string>
#include <vector>

#include "fconc/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return fconc::cli::run(args, std::cout, std::cerr);
}

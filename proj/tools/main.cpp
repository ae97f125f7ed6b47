#include <iostream>
#include <string>
#include <vector>

#include "dpa/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return dpa::cli::run(args, std::cout, std::cerr);
}

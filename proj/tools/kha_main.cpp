#include <iostream>
#include <string>
#include <vector>

#include "kha/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return kha::cli::run(args, std::cin, std::cout, std::cerr);
}

#include <iostream>

#include "nsvoa/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nsvoa::run_command(args, std::cout, std::cerr);
}

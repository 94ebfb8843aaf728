#include <iostream>
#include <string>
#include <vector>

#include "mldeg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mldeg::run_cli(args, std::cout, std::cerr);
}

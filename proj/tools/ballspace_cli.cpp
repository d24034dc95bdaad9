#include <iostream>
#include <string>
#include <vector>

#include "ballspace/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ballspace::dispatch(args, std::cout, std::cerr);
}

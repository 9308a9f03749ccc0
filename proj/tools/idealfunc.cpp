#include <iostream>
#include <string>
#include <vector>

#include "idealfunc/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return idealfunc::cli::run(args, std::cout, std::cerr);
}

#include "loscov/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return loscov::cli::run_cli(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "dipolar/cli.hpp"

int main(int argc, char** argv)
{
    return dipolar::cli::main(argc, argv, std::cout, std::cerr);
}

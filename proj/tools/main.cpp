#include <iostream>

#include "entire/cli.hpp"

int main(int argc, char** argv)
{
    return entire::cli::main(argc, argv, std::cout, std::cerr);
}

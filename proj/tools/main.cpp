#include "hypdef/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return hypdef::run_cli(argc, argv, std::cout, std::cerr);
}

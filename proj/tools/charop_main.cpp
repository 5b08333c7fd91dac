/*
 * charop_main.cpp
 * ---------------
 * Process entry point for the charop command line tool.
 */
#include <iostream>
#include <string>
#include <vector>

#include "charop/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return charop::cli::run(args, std::cout, std::cerr);
}

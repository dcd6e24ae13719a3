#include <iostream>

#include "psdist/cli.hpp"

int main(int argc, char** argv) { return psdist::cli_dispatch(argc, argv, std::cout, std::cerr); }

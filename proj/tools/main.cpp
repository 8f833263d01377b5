#include "bbl/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return bbl::cli::run(argc, argv, std::cout, std::cerr); }

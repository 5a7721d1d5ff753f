#include <iostream>

#include "hopf/cli.hpp"

int main(int argc, char** argv) { return hopf::cli::main(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "pertlab/cli.hpp"

int main(int argc, char** argv) { return pertlab::cli::main(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "semolab/cli.hpp"

int main(int argc, char** argv) { return semolab::cli::run(argc, argv, std::cout, std::cerr); }

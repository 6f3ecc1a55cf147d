#include "halllab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return halllab::cli::run(argc, argv, std::cin, std::cout, std::cerr); }

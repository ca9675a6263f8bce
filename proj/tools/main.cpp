#include "sdic/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sdic::cli::run(argc, argv, std::cout, std::cerr); }

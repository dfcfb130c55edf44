#include "knnreg/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return knnreg::cli::run(argc, argv, std::cout, std::cerr); }

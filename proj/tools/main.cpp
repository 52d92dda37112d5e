#include <iostream>

#include "mvoreg/cli.hpp"

int main(int argc, char** argv) { return mvoreg::cli::run(argc, argv, std::cout, std::cerr); }

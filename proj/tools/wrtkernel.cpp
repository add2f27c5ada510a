#include <iostream>

#include "wrtk/cli.hpp"

int main(int argc, char** argv) { return wrtk::cli::main_with(argc, argv, std::cout, std::cerr); }

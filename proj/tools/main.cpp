#include <iostream>

#include "padicsym/cli.hpp"

int main(int argc, char** argv) { return padicsym::cli::run(argc, argv, std::cin, std::cout, std::cerr); }

#include "fogran/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fogran::cli::run(argc, argv, std::cout, std::cerr); }

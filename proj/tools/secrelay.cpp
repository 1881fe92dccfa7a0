#include <iostream>

#include "secrelay/cli.hpp"

int main(int argc, char** argv) { return secrelay::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "qchain/cli.hpp"

int main(int argc, char** argv) { return qchain::cli::run(argc, argv, std::cout, std::cerr); }

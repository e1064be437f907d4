#include <iostream>

#include "psusy/cli.hpp"

int main(int argc, char** argv) { return psusy::cli::run(argc, argv, std::cout, std::cerr); }

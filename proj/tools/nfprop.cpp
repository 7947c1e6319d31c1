#include <iostream>

#include "nfprop/cli.hpp"

int main(int argc, char** argv) { return nfprop::run_cli(argc, argv, std::cout, std::cerr); }

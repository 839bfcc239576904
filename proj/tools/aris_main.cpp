#include <iostream>

#include "aris/cli.hpp"

int main(int argc, char** argv) { return aris::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "setasp/cli.hpp"

int main(int argc, char** argv) { return setasp::run_cli(argc, argv, std::cout, std::cerr); }

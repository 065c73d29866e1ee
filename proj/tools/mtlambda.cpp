#include "mtlambda/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return mtlambda::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "melonet/cli.hpp"

int main(int argc, char** argv) { return melonet::run_cli(argc, argv, std::cout, std::cerr); }

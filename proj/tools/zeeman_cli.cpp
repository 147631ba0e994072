#include <iostream>

#include "zeeman/cli.hpp"

int main(int argc, char** argv) { return zeeman::run_cli(argc, argv, std::cout, std::cerr); }

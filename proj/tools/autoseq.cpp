#include <iostream>

#include "autoseq/cli.hpp"

int main(int argc, char** argv) { return autoseq::run_cli(argc, argv, std::cout, std::cerr); }

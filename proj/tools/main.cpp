#include <iostream>

#include "srcf_tools/commands.hpp"

int main(int argc, char** argv) { return srcf::tools::run_cli(argc, argv, std::cout, std::cerr); }

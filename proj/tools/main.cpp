#include <iostream>

#include "anisoac/cli.hpp"

int main(int argc, char** argv) { return anisoac::cli_main(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "zkdistill/cli.h"

int main(int argc, char **argv) { return zkd::cli::dispatch(argc, argv, std::cout, std::cerr); }

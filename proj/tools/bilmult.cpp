// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "bilmult/cli.hpp"

int main(int argc, char** argv) { return bilmult::run_cli(argc, argv, std::cout, std::cerr); }

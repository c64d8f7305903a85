// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#include <iostream>
#include <string>
#include <vector>

#include "awt/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return awt::cli::run(args, std::cout, std::cerr);
}

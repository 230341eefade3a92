/**
 * This code is part of rblab.
 *
 * (C) Copyright 2026 rblab developers.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <iostream>

#include "rblab/cli.hpp"

int main(int argc, char **argv) {
  return rblab::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}

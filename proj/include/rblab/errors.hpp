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

#ifndef RBLAB_ERRORS_HPP_
#define RBLAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace rblab {

/// Base for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dimension / shape mismatch of inputs.
struct shape_error : error {
  using error::error;
};

/// A caller-facing contract (precondition) was violated.
struct contract_error : error {
  using error::error;
};

/// Parameter outside its mathematically valid domain.
struct domain_error : error {
  using error::error;
};

/// Request exceeds a configured capacity limit (e.g. dense qubit cap).
struct capacity_error : error {
  using error::error;
};

}  // namespace rblab

#endif  // RBLAB_ERRORS_HPP_

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

#ifndef RBLAB_VERSION_HPP_
#define RBLAB_VERSION_HPP_

namespace rblab {

inline constexpr const char *kVersion = "0.1.0";

}  // namespace rblab

#endif  // RBLAB_VERSION_HPP_

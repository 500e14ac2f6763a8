// Copyright (c) 2026 the mrfdiph authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace mrf {

using cplx = std::complex<double>;

/// Raised when a computation produces or encounters non-finite values.
class numeric_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised on malformed files or failed filesystem operations.
class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised on invalid configuration keys or values.
class config_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }

} // namespace mrf

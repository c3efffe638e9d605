#pragma once

#include <cstdint>

#include <boost/rational.hpp>

namespace umeb {

// Exact arithmetic for closed-form angles and phases. Magnitudes stay far
// below int64 limits for every dimension this library handles.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& q) {
  return boost::rational_cast<double>(q);
}

}  // namespace umeb

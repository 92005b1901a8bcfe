#pragma once

#include <functional>
#include <initializer_list>

#include "doctest.h"
#include "qspec/error.hpp"
#include "qspec/types.hpp"

namespace testing {

inline qspec::Matrix mat(std::initializer_list<std::initializer_list<qspec::Complex>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r == 0 ? 0 : static_cast<Eigen::Index>(rows.begin()->size());
  qspec::Matrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline bool throws_code(const std::function<void()>& f, qspec::ErrorCode code) {
  try {
    f();
  } catch (const qspec::Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace testing

#pragma once

#include <optional>

#include "cantorlab/error.hpp"

/// Kind of the cantorlab::Error thrown by f, or nullopt when f returns.
template <class F>
std::optional<cantorlab::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const cantorlab::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

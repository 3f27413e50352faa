#pragma once

#include <gtest/gtest.h>

#include <functional>

#include "lamina/error.hpp"
#include "lamina/word.hpp"

inline lamina::Word W(const char* s) { return lamina::parse_word(2, s); }

// Code of the lamina::Error thrown by f; a test failure if none is thrown.
inline lamina::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const lamina::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return lamina::ErrorCode::kUnsupported;
}

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace pf {

// Broad failure classes. The CLI maps these onto process exit codes.
enum class ErrorClass { config, numerical, unroutable };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
  [[nodiscard]] ErrorClass error_class() const noexcept { return cls_; }

 private:
  ErrorClass cls_;
};

#define PF_DEFINE_ERROR(Name, Class)                                   \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(Class, what) {}     \
  }

PF_DEFINE_ERROR(InvalidArgument, ErrorClass::config);
PF_DEFINE_ERROR(UnsupportedSize, ErrorClass::config);
PF_DEFINE_ERROR(PaletteTooSmall, ErrorClass::config);
PF_DEFINE_ERROR(UnresolvedControl, ErrorClass::config);
PF_DEFINE_ERROR(NoGuidedMode, ErrorClass::numerical);
PF_DEFINE_ERROR(SolverFailure, ErrorClass::numerical);
PF_DEFINE_ERROR(Diverged, ErrorClass::numerical);
PF_DEFINE_ERROR(NoResonance, ErrorClass::numerical);
PF_DEFINE_ERROR(Unroutable, ErrorClass::unroutable);

#undef PF_DEFINE_ERROR

}  // namespace pf

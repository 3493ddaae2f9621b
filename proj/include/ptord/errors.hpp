#pragma once

#include <stdexcept>
#include <string>

namespace ptord {

enum class ErrorKind {
  InvalidInput,         // violated precondition in user-supplied data
  DefectTableMiss,      // l in {2,3} triple not covered by the defect table
  ResourceLimit,        // enumeration / extension-degree / prime-size ceiling
  InternalConsistency,  // a proven identity failed; indicates a bug or bad override
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_input(const std::string& msg) {
  throw Error(ErrorKind::InvalidInput, msg);
}

[[noreturn]] inline void throw_resource(const std::string& msg) {
  throw Error(ErrorKind::ResourceLimit, msg);
}

[[noreturn]] inline void throw_internal(const std::string& msg) {
  throw Error(ErrorKind::InternalConsistency, "internal consistency: " + msg);
}

const char* to_string(ErrorKind kind) noexcept;

}  // namespace ptord

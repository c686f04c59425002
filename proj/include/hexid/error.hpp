#pragma once

#include <stdexcept>
#include <string>

namespace hexid {

enum class ErrorKind {
  InvalidArgument,
  Parse,
  InvalidCode,
  NotAOneCluster,
  NotAThreeCluster,
  UnsupportedKind,
  AmbiguousDonor,
  RegionTooLarge,
  DomainTooLarge,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hexid

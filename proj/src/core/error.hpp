#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace colcur {

// Numeric values are part of the public C API contract (see include/colcur/colcur.h).
enum class Status : int32_t {
  Ok = 0,
  IoError = 1,
  FormatError = 2,
  VersionError = 3,
  IntegrityError = 4,
  SchemaError = 5,
  ReferenceError = 6,
  KeyError = 7,
  ParseError = 8,
  ShapeError = 9,
  NameError = 10,
  BoundsError = 11,
  TypeError = 12,
  ParamError = 13,
  PermissionError = 14,
  StateError = 15,
  OverflowError = 16,
  InternalError = 17,
};

const char* status_name(Status s);

class Error : public std::runtime_error {
 public:
  Error(Status status, std::string message)
      : std::runtime_error(std::move(message)), status_(status) {}

  Status status() const { return status_; }

 private:
  Status status_;
};

namespace detail {
inline void append_all(std::ostringstream&) {}

template <typename T, typename... Rest>
void append_all(std::ostringstream& os, const T& v, const Rest&... rest) {
  os << v;
  append_all(os, rest...);
}
}  // namespace detail

template <typename... Parts>
[[noreturn]] void raise(Status status, const Parts&... parts) {
  std::ostringstream os;
  detail::append_all(os, parts...);
  throw Error(status, os.str());
}

template <typename... Parts>
void check(bool ok, Status status, const Parts&... parts) {
  if (!ok) raise(status, parts...);
}

}  // namespace colcur

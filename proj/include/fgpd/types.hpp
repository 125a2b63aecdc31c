#ifndef FGPD_TYPES_HPP_
#define FGPD_TYPES_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgpd {

// Position of an object, arrow or point in the tables of its structure.
// Names are only used at the boundaries (serialization, reports).
using Index = std::int32_t;

// Marks an undefined entry of a partial table.
inline constexpr Index kNone = -1;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownIdError : public Error {
 public:
  using Error::Error;
};

// division_map and friends on two points lying over different base points.
class NotSameFiberError : public Error {
 public:
  using Error::Error;
};

// The input claims a property (principality, well-definedness) it lacks.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Structures that must share a groupoid or base do not.
class MismatchError : public Error {
 public:
  using Error::Error;
};

// An exhaustive enumeration would exceed the configured bounds.
class BoundExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace fgpd

#endif  // FGPD_TYPES_HPP_

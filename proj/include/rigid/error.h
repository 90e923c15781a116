#pragma once

#include <stdexcept>
#include <string>

namespace rigid {

enum class ErrorKind {
  InvalidSurface,
  EmptyComplex,
  Malformed,
  EdgeUsedNotTwice,
  NonOrientable,
  Disconnected,
  NonIntegerGenus,
  NotFlippable,
  OutOfRange,
  InvalidArc,
  NotDisjoint,
  NotIntersectionOne,
  NoneFound,
  Precondition,
  NotAdjacent,
  VertexNotInAmbient,
  UnknownVertex,
  NotSimplicial,
  TypeMismatch,
  OrientationConflict,
  NotATriangulation,
  SurfaceMismatch,
  Conflict,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace rigid

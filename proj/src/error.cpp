#include "rigid/error.h"

namespace rigid {

const char* to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::InvalidSurface: return "InvalidSurface";
  case ErrorKind::EmptyComplex: return "EmptyComplex";
  case ErrorKind::Malformed: return "Malformed";
  case ErrorKind::EdgeUsedNotTwice: return "EdgeUsedNotTwice";
  case ErrorKind::NonOrientable: return "NonOrientable";
  case ErrorKind::Disconnected: return "Disconnected";
  case ErrorKind::NonIntegerGenus: return "NonIntegerGenus";
  case ErrorKind::NotFlippable: return "NotFlippable";
  case ErrorKind::OutOfRange: return "OutOfRange";
  case ErrorKind::InvalidArc: return "InvalidArc";
  case ErrorKind::NotDisjoint: return "NotDisjoint";
  case ErrorKind::NotIntersectionOne: return "NotIntersectionOne";
  case ErrorKind::NoneFound: return "NoneFound";
  case ErrorKind::Precondition: return "Precondition";
  case ErrorKind::NotAdjacent: return "NotAdjacent";
  case ErrorKind::VertexNotInAmbient: return "VertexNotInAmbient";
  case ErrorKind::UnknownVertex: return "UnknownVertex";
  case ErrorKind::NotSimplicial: return "NotSimplicial";
  case ErrorKind::TypeMismatch: return "TypeMismatch";
  case ErrorKind::OrientationConflict: return "OrientationConflict";
  case ErrorKind::NotATriangulation: return "NotATriangulation";
  case ErrorKind::SurfaceMismatch: return "SurfaceMismatch";
  case ErrorKind::Conflict: return "Conflict";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

} // namespace rigid

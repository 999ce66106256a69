#pragma once

#include <stdexcept>
#include <string>

namespace starphase {

// Base for every error the library throws on its documented failure paths.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: unreadable file, invalid JSON, or a document that does not
// match the expected schema.
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Input state/polynomial is identically zero or otherwise carries no ray.
struct DegenerateState : Error {
  explicit DegenerateState(const std::string& msg) : Error(msg) {}
};

// Vector/matrix sizes are inconsistent with the declared spin.
struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

// Rotation axis is not a unit vector.
struct BadAxis : Error {
  explicit BadAxis(const std::string& msg) : Error(msg) {}
};

// Path sampling too coarse: sign lift or cell-crossing tracking is ambiguous.
struct UndersampledPath : Error {
  explicit UndersampledPath(const std::string& msg) : Error(msg) {}
};

// Phase of a (near-)vanishing overlap requested.
struct UndefinedPhase : Error {
  explicit UndefinedPhase(const std::string& msg) : Error(msg) {}
};

// A rotation claimed as a symmetry fails the eigenstate / star-matching test.
struct NotASymmetry : Error {
  explicit NotASymmetry(const std::string& msg) : Error(msg) {}
};

// A rotor set fails group closure (or a continuous group was passed where a
// finite one is required).
struct NotAGroup : Error {
  explicit NotAGroup(const std::string& msg) : Error(msg) {}
};

// Path endpoint does not land on a symmetry rotation, so the projected curve
// is not a loop and has no homotopy class.
struct NotClosedInOrbitSpace : Error {
  explicit NotClosedInOrbitSpace(const std::string& msg) : Error(msg) {}
};

}  // namespace starphase

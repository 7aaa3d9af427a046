#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace egsolve {

// Base class for all recoverable errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A vertex has no outgoing edge; arenas must be total.
struct NonTotalArenaError : Error {
  explicit NonTotalArenaError(uint32_t v)
      : Error("vertex " + std::to_string(v) + " has no outgoing edge"),
        vertex(v) {}
  uint32_t vertex;
};

// An edge references a vertex id outside [0, num_vertices).
struct DanglingVertexIdError : Error {
  explicit DanglingVertexIdError(uint64_t id)
      : Error("edge references unknown vertex id " + std::to_string(id)),
        vertex(id) {}
  uint64_t vertex;
};

// Integer arithmetic left the representable range.
struct OverflowError : Error {
  using Error::Error;
};

struct SyntaxError : Error {
  SyntaxError(size_t line_no, const std::string& reason)
      : Error("line " + std::to_string(line_no) + ": " + reason),
        line(line_no) {}
  size_t line;
};

// Declared counts do not match the number of records present.
struct CountMismatchError : Error {
  using Error::Error;
};

// An exhaustive oracle exceeded its hard size guard.
struct TooLargeError : Error {
  using Error::Error;
};

struct MalformedStrategyError : Error {
  using Error::Error;
};

// No successor witnesses the player-0 condition; the input measure is corrupt.
struct NoWitnessError : Error {
  explicit NoWitnessError(uint32_t v)
      : Error("no witness successor at vertex " + std::to_string(v)),
        vertex(v) {}
  uint32_t vertex;
};

// The sweep solver hit its iteration budget before reaching a fixpoint.
struct BoundExhaustedError : Error {
  using Error::Error;
};

struct InvalidSpecError : Error {
  using Error::Error;
};

struct InvalidConfigError : Error {
  using Error::Error;
};

struct TimeoutError : Error {
  using Error::Error;
};

// A runtime self-check failed; indicates an implementation bug, not bad input.
struct InternalInvariantError : Error {
  using Error::Error;
};

}  // namespace egsolve

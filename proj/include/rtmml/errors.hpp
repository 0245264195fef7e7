#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rtmml {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input that cannot be read as markup at all (well-formedness, truncation).
struct XmlError : Error {
  using Error::Error;
};

// Malformed or out-of-range token target specification.
struct TargetError : Error {
  using Error::Error;
};

// A point name that does not exist in the graph being queried.
struct UnknownPointError : Error {
  using Error::Error;
};

// Raised when intersecting constraint labels on an edge leaves nothing.
// Carries the two point names and the annotation ids that contributed.
struct InconsistencyError : Error {
  InconsistencyError(const std::string& msg, std::string a, std::string b,
                     std::vector<std::string> contributors)
      : Error(msg),
        point_a(std::move(a)),
        point_b(std::move(b)),
        provenance(std::move(contributors)) {}

  std::string point_a;
  std::string point_b;
  std::vector<std::string> provenance;
};

}  // namespace rtmml

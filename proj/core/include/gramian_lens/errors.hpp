#pragma once

#include <stdexcept>
#include <string>

namespace gramian_lens {

// Malformed model or report document: bad JSON, missing or ill-typed fields,
// unknown activation tag.
class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally invalid data: incompatible dimensions, non-finite weights,
// trace/network mismatch.
class ShapeError : public std::runtime_error {
  public:
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric breakdown inside an analysis (non-finite intermediates,
// decomposition failure).
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gramian_lens

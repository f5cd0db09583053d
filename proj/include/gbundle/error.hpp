#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gbundle {

enum class ErrorKind {
  kInvalidParameter,
  kInvalidGraph,
  kDisconnected,
  kInvalidPath,
  kInvalidLoop,
  kInvalidConnection,
  kNotTrivial,
  kHypothesis,
  kResource,
  kParse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when a configured size cap would be exceeded.
class ResourceError : public Error {
 public:
  ResourceError(std::string cap, const std::string& what)
      : Error(ErrorKind::kResource, what), cap_(std::move(cap)) {}

  const std::string& cap() const { return cap_; }

 private:
  std::string cap_;
};

// A required hypothesis does not hold. `witness` is a base loop when one
// exists (e.g. an unbalanced 4-loop).
class HypothesisError : public Error {
 public:
  HypothesisError(std::string hypothesis, const std::string& what,
                  std::vector<int> witness = {})
      : Error(ErrorKind::kHypothesis, what),
        hypothesis_(std::move(hypothesis)),
        witness_(std::move(witness)) {}

  const std::string& hypothesis() const { return hypothesis_; }
  const std::vector<int>& witness() const { return witness_; }

 private:
  std::string hypothesis_;
  std::vector<int> witness_;
};

}  // namespace gbundle

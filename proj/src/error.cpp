#include "gbundle/error.hpp"

namespace gbundle {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameter: return "invalid-parameter";
    case ErrorKind::kInvalidGraph: return "invalid-graph";
    case ErrorKind::kDisconnected: return "disconnected-graph";
    case ErrorKind::kInvalidPath: return "invalid-path";
    case ErrorKind::kInvalidLoop: return "invalid-loop";
    case ErrorKind::kInvalidConnection: return "invalid-connection";
    case ErrorKind::kNotTrivial: return "non-trivial-connection";
    case ErrorKind::kHypothesis: return "hypothesis";
    case ErrorKind::kResource: return "resource";
    case ErrorKind::kParse: return "parse";
  }
  return "unknown";
}

}  // namespace gbundle

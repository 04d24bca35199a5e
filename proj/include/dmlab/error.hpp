#pragma once

#include <stdexcept>
#include <string>

namespace dmlab {

// Error taxonomy. Every failure mode the library distinguishes gets its own
// kind so callers (and the CLI) can react without string matching.
enum class ErrKind {
  Size,          // enumeration/config bound exceeded
  Shape,         // mismatched truncation degrees / dimensions
  Precision,     // inversion of zero-to-precision, floor exhausted
  DivByZero,     // division by exact zero (distinct from Precision)
  Unsolvable,    // root not present in the working field
  Divergence,    // tail fails to decay where a sum/evaluation needs it
  Domain,        // input outside a map's domain predicate
  NotInImage,    // peeling left a nonzero residual
  Singular,      // matrix singular to precision
  Degenerate,    // basis degenerate (zero Moore determinant etc.)
  Inconsistent,  // internal cross-check failed (e.g. descent to F_q[t])
  Internal,      // invariant breach, overflow guard, bug trap
};

class Error : public std::runtime_error {
public:
  Error(ErrKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrKind kind() const { return kind_; }

  // For Unsolvable: smallest extension degree that would admit the root
  // (0 when the capped search found none).
  int min_s = 0;

private:
  ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg) {
  throw Error(k, msg);
}

inline const char* errkind_name(ErrKind k) {
  switch (k) {
    case ErrKind::Size: return "size";
    case ErrKind::Shape: return "shape";
    case ErrKind::Precision: return "precision";
    case ErrKind::DivByZero: return "div-by-zero";
    case ErrKind::Unsolvable: return "unsolvable";
    case ErrKind::Divergence: return "divergence";
    case ErrKind::Domain: return "domain";
    case ErrKind::NotInImage: return "not-in-image";
    case ErrKind::Singular: return "singular";
    case ErrKind::Degenerate: return "degenerate";
    case ErrKind::Inconsistent: return "inconsistent";
    case ErrKind::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace dmlab

#pragma once

#include <string>

namespace tauq {

/// Three-valued verdict used by classifiers and certificates.
enum class Tri { yes, no, undecided };

inline std::string to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "true";
    case Tri::no: return "false";
    default: return "undecided";
  }
}

/// Conjunction with undecided propagation.
inline Tri tri_and(Tri a, Tri b) {
  if (a == Tri::no || b == Tri::no) return Tri::no;
  if (a == Tri::undecided || b == Tri::undecided) return Tri::undecided;
  return Tri::yes;
}

}  // namespace tauq

#pragma once

#include <stdexcept>
#include <string>

namespace dpa {

// Input outside the domain of a formula (vacuum Mandel parameter, r = 0 where coth(r/2) appears, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Fock-space truncation too small for the requested state.
class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Critical-point search found no sign change of min_u Q_M below the bracket cap.
class NoTransitionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// min_u Q_M was not monotone on the bracket; the root would be ambiguous.
class MonotonicityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace dpa

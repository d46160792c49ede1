#ifndef SCHOTTKY_ERRORS_HPP_
#define SCHOTTKY_ERRORS_HPP_

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace schottky {

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A floating-point test landed inside the tolerance band.
  class NumericallyAmbiguous : public Error {
   public:
    using Error::Error;
  };

  class InvalidStructure : public Error {
   public:
    using Error::Error;
  };

  class LayoutFailure : public Error {
   public:
    using Error::Error;
  };

  class NotASubgroup : public Error {
   public:
    using Error::Error;
  };

  // The two kernel-rank computations disagree.  Should never fire.
  class OracleMismatch : public Error {
   public:
    using Error::Error;
  };

  class TorsionInKernel : public Error {
   public:
    using Error::Error;
  };

  class KernelNotTorsionFree : public Error {
   public:
    using Error::Error;
  };

  // The kernel contains orientation-reversing elements, so it is not a
  // Schottky group and the component counts are meaningless.
  class KernelNotOrientationPreserving : public Error {
   public:
    using Error::Error;
  };

  class InvalidEpimorphism : public Error {
   public:
    using Error::Error;
  };

  class SearchSpaceTooLarge : public Error {
   public:
    SearchSpaceTooLarge(std::string const& what, double estimate, double limit)
        : Error(what), estimate_(estimate), limit_(limit) {}
    double estimate() const noexcept {
      return estimate_;
    }
    double limit() const noexcept {
      return limit_;
    }

   private:
    double estimate_;
    double limit_;
  };

  class PreconditionViolation : public Error {
   public:
    using Error::Error;
  };

  // Malformed or schema-invalid input file.
  class SpecParseError : public Error {
   public:
    using Error::Error;
  };

  // A computed quantity contradicts a proven bound: a bug or a bad input.
  class InvariantViolation : public Error {
   public:
    using Error::Error;
  };

  // Single tolerance used for every degeneracy test.  Values within eps of a
  // degenerate configuration are treated as degenerate; values further away
  // than sqrt(eps) are treated as generic; anything in between is ambiguous.
  struct Tolerance {
    double eps = 1e-9;

    double band() const noexcept {
      return std::sqrt(eps);
    }

    static Tolerance from_environment() {
      Tolerance t;
      if (char const* s = std::getenv("SCHOTTKY_TOLERANCE")) {
        char*  end = nullptr;
        double v   = std::strtod(s, &end);
        if (end != s && v > 0 && v < 1) {
          t.eps = v;
        }
      }
      return t;
    }
  };

}  // namespace schottky

#endif  // SCHOTTKY_ERRORS_HPP_

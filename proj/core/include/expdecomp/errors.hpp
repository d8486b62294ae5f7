#pragma once

#include <stdexcept>
#include <string>

namespace expdecomp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define EXPDECOMP_ERROR(Name)            \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

EXPDECOMP_ERROR(DegenerateCut);
EXPDECOMP_ERROR(MissingEdge);
EXPDECOMP_ERROR(TooLarge);
EXPDECOMP_ERROR(Disconnected);
EXPDECOMP_ERROR(BadPhi);
EXPDECOMP_ERROR(BadEpsilon);
EXPDECOMP_ERROR(Infeasible);
EXPDECOMP_ERROR(ParseError);
EXPDECOMP_ERROR(DepthExceeded);
EXPDECOMP_ERROR(LevelOverflow);
EXPDECOMP_ERROR(IterationOverflow);

#undef EXPDECOMP_ERROR

class BandwidthExceeded : public Error {
 public:
  BandwidthExceeded(unsigned from, unsigned to, unsigned long long bits, unsigned long long budget)
      : Error("bandwidth exceeded on edge " + std::to_string(from) + "->" + std::to_string(to) + ": " +
              std::to_string(bits) + " bits > " + std::to_string(budget)),
        from(from),
        to(to),
        bits(bits) {}
  unsigned from;
  unsigned to;
  unsigned long long bits;
};

}  // namespace expdecomp

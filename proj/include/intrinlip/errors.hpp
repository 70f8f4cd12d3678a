#pragma once

#include <stdexcept>
#include <string>

#include "intrinlip/element.hpp"

namespace intrinlip {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define INTRINLIP_DEFINE_ERROR(Name)          \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

INTRINLIP_DEFINE_ERROR(InvalidSpec);
INTRINLIP_DEFINE_ERROR(DecompositionFailure);
INTRINLIP_DEFINE_ERROR(SearchBudgetExceeded);
INTRINLIP_DEFINE_ERROR(DegenerateSample);
INTRINLIP_DEFINE_ERROR(OutsideDomain);
INTRINLIP_DEFINE_ERROR(AxisMissing);
INTRINLIP_DEFINE_ERROR(NotConverged);
INTRINLIP_DEFINE_ERROR(WrongNormalSide);
INTRINLIP_DEFINE_ERROR(NotASubgroup);

#undef INTRINLIP_DEFINE_ERROR

/// Raised when a premise inequality fails on the sample; carries the point.
class PremiseFailed : public Error {
 public:
  PremiseFailed(const std::string& what, Element witness)
      : Error(what), witness_(witness) {}
  const Element& witness() const noexcept { return witness_; }

 private:
  Element witness_;
};

}  // namespace intrinlip

#pragma once

#include <stdexcept>
#include <string>

namespace setstab {

// Error categories. CapExceeded maps to CLI exit code 2, PropertyViolation
// (a verified mathematical claim failing at runtime) to exit code 3,
// everything else to the generic failure path.
enum class Err {
  DegreeMismatch,
  NotABijection,
  DegreeCap,
  PointOutOfRange,
  NotAMember,
  NotTransitive,
  IsPrimitive,
  NotPrimitive,
  NotSubgroup,
  IndexCap,
  OrderCap,
  OrbitCapExceeded,
  SpaceCapExceeded,
  StructureMissing,
  NotIrreducible,
  AritySize,
  ColorCount,
  NotSolvable,
  NotNormal,
  NotCoreFree,
  SocleInsideStabilizer,
  DegreeTooSmall,
  SearchExhausted,
  BadInput,
  PropertyViolation,
};

class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

  bool is_cap() const {
    return code_ == Err::OrbitCapExceeded || code_ == Err::SpaceCapExceeded ||
           code_ == Err::IndexCap || code_ == Err::OrderCap || code_ == Err::DegreeCap;
  }
  bool is_property_violation() const {
    return code_ == Err::PropertyViolation || code_ == Err::SearchExhausted;
  }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

} // namespace setstab

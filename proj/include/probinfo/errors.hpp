#pragma once

#include <stdexcept>
#include <string>

namespace probinfo {

// Every failure raised by the library derives from Error so callers can
// catch the family; the concrete type names the failure class.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PROBINFO_DEFINE_ERROR(Name)          \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

PROBINFO_DEFINE_ERROR(SpecError);         // malformed or non prefix-free machine
PROBINFO_DEFINE_ERROR(InputError);        // bad argument to an operation
PROBINFO_DEFINE_ERROR(FormatError);       // unparsable document or encoding
PROBINFO_DEFINE_ERROR(DomainError);       // value outside an operation's domain
PROBINFO_DEFINE_ERROR(MeasureError);      // additivity / total-mass violation
PROBINFO_DEFINE_ERROR(PrecisionError);    // refinement failed to converge
PROBINFO_DEFINE_ERROR(BoundaryError);     // undecidable basis membership
PROBINFO_DEFINE_ERROR(GridError);         // convolution grid too narrow
PROBINFO_DEFINE_ERROR(CatalogError);      // unknown or duplicate catalog entry
PROBINFO_DEFINE_ERROR(CoverError);        // cover relation violated
PROBINFO_DEFINE_ERROR(DisjointnessError); // open family not disjoint
PROBINFO_DEFINE_ERROR(PovmError);         // POVM invariant violated
PROBINFO_DEFINE_ERROR(ConfigError);       // experiment configuration invalid
PROBINFO_DEFINE_ERROR(UnresolvedError);   // oracle could not resolve a value

#undef PROBINFO_DEFINE_ERROR

}  // namespace probinfo

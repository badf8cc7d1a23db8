#pragma once

#include <stdexcept>
#include <string>

namespace tsconv {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TSCONV_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

TSCONV_DEFINE_ERROR(NotInTimeScale);
TSCONV_DEFINE_ERROR(InvalidWindow);
TSCONV_DEFINE_ERROR(InvalidInterval);
TSCONV_DEFINE_ERROR(InvalidTimeScale);
TSCONV_DEFINE_ERROR(ZeroDenominator);
TSCONV_DEFINE_ERROR(DomainError);
TSCONV_DEFINE_ERROR(ResolutionFailure);
TSCONV_DEFINE_ERROR(ComplementNotRepresentable);
TSCONV_DEFINE_ERROR(BoundedRestriction);
TSCONV_DEFINE_ERROR(WitnessFailure);
TSCONV_DEFINE_ERROR(PreconditionFailed);
TSCONV_DEFINE_ERROR(ScaleMismatch);
TSCONV_DEFINE_ERROR(ConfigError);
TSCONV_DEFINE_ERROR(ParseError);

#undef TSCONV_DEFINE_ERROR

}  // namespace tsconv

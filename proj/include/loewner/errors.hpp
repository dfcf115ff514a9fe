// Copyright (c) the loewner developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOEWNER_ERRORS_HPP
#define LOEWNER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace loewner {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define LOEWNER_DEFINE_ERROR(Name)                                            \
  class Name : public Error {                                                 \
  public:                                                                     \
    using Error::Error;                                                       \
  }

// systems
LOEWNER_DEFINE_ERROR(SingularPencil);
LOEWNER_DEFINE_ERROR(ParseError);
LOEWNER_DEFINE_ERROR(DimensionMismatch);
LOEWNER_DEFINE_ERROR(RankDeficientE);
LOEWNER_DEFINE_ERROR(NonSimplePoles);
LOEWNER_DEFINE_ERROR(InfinitePole);

// interpolation points and Loewner assembly
LOEWNER_DEFINE_ERROR(InvalidRange);
LOEWNER_DEFINE_ERROR(DuplicatePoints);
LOEWNER_DEFINE_ERROR(OddOrder);
LOEWNER_DEFINE_ERROR(PointCollision);
LOEWNER_DEFINE_ERROR(LabelMismatch);
LOEWNER_DEFINE_ERROR(SingularTransform);

// noise
LOEWNER_DEFINE_ERROR(LengthMismatch);

// analysis
LOEWNER_DEFINE_ERROR(NonFiniteEntry);
LOEWNER_DEFINE_ERROR(ConditionViolated);
LOEWNER_DEFINE_ERROR(ZeroOfTransferFunction);
LOEWNER_DEFINE_ERROR(OrthogonalAngle);
LOEWNER_DEFINE_ERROR(UnstableModel);
LOEWNER_DEFINE_ERROR(OrderMismatch);

// experiments
LOEWNER_DEFINE_ERROR(InadmissiblePoint);
LOEWNER_DEFINE_ERROR(ConfigError);

#undef LOEWNER_DEFINE_ERROR

} // namespace loewner

#endif

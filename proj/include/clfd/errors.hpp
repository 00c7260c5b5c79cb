#pragma once

#include <stdexcept>
#include <string>

namespace clfd {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define CLFD_DEFINE_ERROR(Name)                                   \
  struct Name : Error {                                           \
    explicit Name(const std::string& msg) : Error(msg) {}         \
  }

CLFD_DEFINE_ERROR(EmptyCloud);
CLFD_DEFINE_ERROR(TooFewPoints);
CLFD_DEFINE_ERROR(Degenerate);
CLFD_DEFINE_ERROR(NoValidParts);
CLFD_DEFINE_ERROR(NoCorrespondences);
CLFD_DEFINE_ERROR(LowFitness);
CLFD_DEFINE_ERROR(NeverObserved);
CLFD_DEFINE_ERROR(UnknownObject);
CLFD_DEFINE_ERROR(NoContactPoints);
CLFD_DEFINE_ERROR(OverlappingContacts);
CLFD_DEFINE_ERROR(MissingPoseTrack);
CLFD_DEFINE_ERROR(WrongPrimitiveKind);
CLFD_DEFINE_ERROR(DimensionMismatch);
CLFD_DEFINE_ERROR(MissingReference);
CLFD_DEFINE_ERROR(DegenerateTrajectory);
CLFD_DEFINE_ERROR(InvalidScript);
CLFD_DEFINE_ERROR(FormatError);
CLFD_DEFINE_ERROR(InvalidArgument);

#undef CLFD_DEFINE_ERROR

}  // namespace clfd

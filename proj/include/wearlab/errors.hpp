#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wearlab {

// Every failure carries a stable machine-readable code (used by the CLI's
// error JSON) plus a human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define WEARLAB_DEFINE_ERROR(Name)                                       \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& message) : Error(#Name, message) {} \
    }

// ingest
WEARLAB_DEFINE_ERROR(SchemaError);
WEARLAB_DEFINE_ERROR(ValueError);
WEARLAB_DEFINE_ERROR(DuplicateDateError);
WEARLAB_DEFINE_ERROR(InvariantViolation);
WEARLAB_DEFINE_ERROR(UnknownItemError);
WEARLAB_DEFINE_ERROR(OutOfRangeError);

// features
WEARLAB_DEFINE_ERROR(EmptySeriesError);
WEARLAB_DEFINE_ERROR(InsufficientHistoryError);
WEARLAB_DEFINE_ERROR(ZeroChronicLoadError);
WEARLAB_DEFINE_ERROR(MissingCohortError);
WEARLAB_DEFINE_ERROR(DegenerateBaselineError);

// prompts
WEARLAB_DEFINE_ERROR(UnsupportedKindError);
WEARLAB_DEFINE_ERROR(MissingDependencyError);
WEARLAB_DEFINE_ERROR(MissingPlaceholderError);
WEARLAB_DEFINE_ERROR(TooManyExemplarsError);
WEARLAB_DEFINE_ERROR(OptionCountError);
WEARLAB_DEFINE_ERROR(TransportError);
WEARLAB_DEFINE_ERROR(ProtocolError);

// pro
WEARLAB_DEFINE_ERROR(InsufficientDataError);
WEARLAB_DEFINE_ERROR(DegenerateFeatureError);
WEARLAB_DEFINE_ERROR(EmptyDatasetError);

// models
WEARLAB_DEFINE_ERROR(SingleClassError);
WEARLAB_DEFINE_ERROR(NonConvergenceError);
WEARLAB_DEFINE_ERROR(DivergenceError);
WEARLAB_DEFINE_ERROR(DimensionError);

// stats
WEARLAB_DEFINE_ERROR(NoPositiveError);
WEARLAB_DEFINE_ERROR(EmptyDataError);
WEARLAB_DEFINE_ERROR(ResampleExhaustionError);
WEARLAB_DEFINE_ERROR(EmptySampleError);
WEARLAB_DEFINE_ERROR(InsufficientPairsError);
WEARLAB_DEFINE_ERROR(DegenerateVarianceError);

// cli
WEARLAB_DEFINE_ERROR(UsageError);
WEARLAB_DEFINE_ERROR(IoError);

#undef WEARLAB_DEFINE_ERROR

}  // namespace wearlab

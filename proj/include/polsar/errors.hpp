#pragma once

#include <stdexcept>
#include <string>

namespace polsar {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrix : Error {
    using Error::Error;
};
struct LooksMismatch : Error {
    using Error::Error;
};
struct NonFiniteResult : Error {
    using Error::Error;
};
struct TauViolation : Error {
    using Error::Error;
};
struct InsufficientPixels : Error {
    using Error::Error;
};
struct SingularEstimate : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct OneClassOnly : Error {
    using Error::Error;
};
struct EmptyClass : Error {
    using Error::Error;
};
struct InfeasibleSpec : Error {
    using Error::Error;
};
struct DegenerateMarginals : Error {
    using Error::Error;
};
struct InsufficientSamples : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

}  // namespace polsar

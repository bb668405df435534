#pragma once

#include <stdexcept>
#include <string>

namespace qcgeom {

// Input-side failures: malformed files, bad flags, impossible requests.
// The CLI maps these to exit code 1.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Geometric rejections: the surface is valid input but fails a geometric
// requirement (not qc, not parallel, inconsistent signature, ...).
// The CLI maps these to exit code 2.
class GeomError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParseError : InputError {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& what_)
        : InputError("parse error at line " + std::to_string(line_) + ", col " +
                     std::to_string(col_) + ": " + what_),
          line(line_),
          col(col_) {}
};

struct DimensionMismatch : InputError {
    using InputError::InputError;
};

struct NotJInvariant : GeomError {
    using GeomError::GeomError;
};
struct VanishingGradient : GeomError {
    using GeomError::GeomError;
};
struct NotTangent : GeomError {
    using GeomError::GeomError;
};
struct NoConvergence : GeomError {
    using GeomError::GeomError;
};
struct SamplingExhausted : GeomError {
    using GeomError::GeomError;
};
struct DivisionByZero : GeomError {
    using GeomError::GeomError;
};
struct LinearSolveFailure : GeomError {
    using GeomError::GeomError;
};
struct NonPositiveMu : GeomError {
    using GeomError::GeomError;
};
struct PfaffianSingular : GeomError {
    using GeomError::GeomError;
};
struct InconsistentCalibration : GeomError {
    using GeomError::GeomError;
};
struct NotParallel : GeomError {
    using GeomError::GeomError;
};
struct QuadrupleViolation : GeomError {
    using GeomError::GeomError;
};
struct RankDeficientFit : GeomError {
    using GeomError::GeomError;
};
struct InconsistentClassification : GeomError {
    using GeomError::GeomError;
};
struct DegenerateLinearPart : GeomError {
    using GeomError::GeomError;
};
struct ProjectionNotTangent : GeomError {
    using GeomError::GeomError;
};
struct NotDegenerate : GeomError {
    using GeomError::GeomError;
};
struct NotSameHorizontal : GeomError {
    using GeomError::GeomError;
};
struct NotConformallyRelated : GeomError {
    using GeomError::GeomError;
};

}  // namespace qcgeom

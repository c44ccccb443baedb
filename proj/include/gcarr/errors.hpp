#pragma once

#include <stdexcept>
#include <string>

namespace gcarr {

// Base for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define GCARR_DEFINE_ERROR(name)                                   \
    class name : public error {                                    \
    public:                                                        \
        explicit name(const std::string& what) : error(what) {}    \
    }

GCARR_DEFINE_ERROR(DegenerateCircles);
GCARR_DEFINE_ERROR(PointOffCircle);
GCARR_DEFINE_ERROR(CoincidentPoints);
GCARR_DEFINE_ERROR(TooFewCircles);
GCARR_DEFINE_ERROR(UnknownFixture);
GCARR_DEFINE_ERROR(NotSimple);
GCARR_DEFINE_ERROR(CorruptRotation);
GCARR_DEFINE_ERROR(PreconditionViolation);
GCARR_DEFINE_ERROR(IncompleteColoring);
GCARR_DEFINE_ERROR(VertexNotInPair);
GCARR_DEFINE_ERROR(HeuristicFailed);
GCARR_DEFINE_ERROR(SolverTimeout);
GCARR_DEFINE_ERROR(TooLarge);
GCARR_DEFINE_ERROR(MismatchedK);
GCARR_DEFINE_ERROR(ParseError);

#undef GCARR_DEFINE_ERROR

}  // namespace gcarr

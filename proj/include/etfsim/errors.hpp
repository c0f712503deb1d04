#pragma once

#include <stdexcept>
#include <string>

namespace etfsim {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// geometry
struct DegenerateSegmentError : Error {
    DegenerateSegmentError() : Error("degenerate segment: endpoints coincide") {}
};
struct NotOverlappingError : Error {
    using Error::Error;
    NotOverlappingError() : Error("spheres do not overlap") {}
};
struct CoincidentCentersError : Error {
    CoincidentCentersError() : Error("sphere centers coincide") {}
};
struct NoIntersectionError : Error {
    using Error::Error;
    NoIntersectionError() : Error("segment does not cross the sphere surface") {}
};

// topology
struct UnreachableReceiverError : Error {
    using Error::Error;
};
struct NotAForwarderError : Error {
    using Error::Error;
};

// planner
struct NotShortDistanceError : Error {
    NotShortDistanceError() : Error("forwarders do not overlap: not a short-distance transition") {}
};
struct ShortDistanceRequestError : Error {
    ShortDistanceRequestError() : Error("forwarders overlap: not a long-distance transition") {}
};
struct PreconditionError : Error {
    using Error::Error;
};
struct NoChainError : Error {
    using Error::Error;
    NoChainError() : Error("no chain of pairwise-overlapping forwarders connects the endpoints") {}
};
struct NoCrossingError : Error {
    using Error::Error;
    NoCrossingError() : Error("turning segment does not reach the destination sphere surface") {}
};

// scenario_io / simulator
struct ParseError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};
struct InvalidScenarioError : Error {
    using Error::Error;
};

}  // namespace etfsim

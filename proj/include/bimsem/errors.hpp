#pragma once

#include <stdexcept>
#include <string>

namespace bimsem {

// Base class for all library errors. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file (PLY header, CSV, Turtle syntax, model file).
class FormatError : public Error {
public:
    using Error::Error;
};

// Structurally valid input that violates a domain constraint
// (out-of-range face index, empty mesh, dataset too small, arity mismatch,
// duplicate ids, missing attributes).
class DataError : public Error {
public:
    using Error::Error;
};

// Geometry that cannot be processed (zero extent on a required axis,
// hosted box outside its host wall).
class GeometryError : public Error {
public:
    using Error::Error;
};

// Graph invariant violations: dangling endpoints, hosting without hosted,
// multiple hosts.
class IntegrityError : public Error {
public:
    using Error::Error;
};

// Reconstruction plan cannot be derived from the graph.
class PlanError : public Error {
public:
    using Error::Error;
};

// Infeasible scene-generation spec.
class SpecError : public Error {
public:
    using Error::Error;
};

// Filesystem failures.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace bimsem

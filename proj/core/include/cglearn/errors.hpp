#pragma once

#include <stdexcept>
#include <string>

namespace cglearn {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed graph construction or graph-file parse failure.
class GraphError : public Error {
public:
    using Error::Error;
};

class NotAChainGraph : public Error {
public:
    using Error::Error;
};

/// Conditional-independence query with overlapping or out-of-range vertex sets.
class InvalidQuery : public Error {
public:
    using Error::Error;
};

/// minimal_separator called on an adjacent pair (no separator exists).
class AdjacentPair : public Error {
public:
    using Error::Error;
};

/// Correlation submatrix numerically rank deficient.
class SingularSubmatrix : public Error {
public:
    using Error::Error;
};

class InsufficientSamples : public Error {
public:
    using Error::Error;
};

/// Complex recovery found a nonadjacent pair without a recorded separating set.
class MissingSepset : public Error {
public:
    using Error::Error;
};

/// CPC/MPC found a nonadjacent pair with no separating set in either adjacency.
class EmptyFamily : public Error {
public:
    using Error::Error;
};

class VertexMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace cglearn

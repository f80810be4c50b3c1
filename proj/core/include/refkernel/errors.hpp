#pragma once

#include <stdexcept>
#include <string>

namespace refkernel {

// Root of the library's error hierarchy. Every failure the library raises
// deliberately derives from this type; anything else escaping is a bug.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Dimension or shape mismatch between operands.
class InvalidShape : public Error {
public:
    using Error::Error;
};

// Matrix content violates a structural requirement (non-finite entries,
// asymmetry beyond tolerance, non-square where square is required).
class InvalidMatrix : public Error {
public:
    using Error::Error;
};

// Iterative routine exhausted its budget without reaching tolerance.
class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

// Kernel parameters are invalid or a Gram matrix is not usable
// (indefinite beyond tolerance, asymmetric).
class InvalidKernel : public Error {
public:
    using Error::Error;
};

// Reference set has no columns.
class EmptyReferenceSet : public Error {
public:
    using Error::Error;
};

// Too few samples for the requested operation.
class InsufficientData : public Error {
public:
    using Error::Error;
};

// Data admits no meaningful result (all pairwise distances zero).
class DegenerateData : public Error {
public:
    using Error::Error;
};

// Centered reference kernel has no eigenvalue at or above the cutoff.
class DegenerateReferenceSet : public Error {
public:
    using Error::Error;
};

// An operation requiring negative samples was given none.
class MissingNegatives : public Error {
public:
    using Error::Error;
};

// Box constraint 0 <= alpha <= C cannot hold together with sum(alpha) = 1.
class InfeasibleC : public Error {
public:
    using Error::Error;
};

// nu outside (0, 1] or nu * N < 1; the dual feasible set is empty.
class InfeasibleNu : public Error {
public:
    using Error::Error;
};

// Malformed input file (CSV or config); message carries the line number.
class FormatError : public Error {
public:
    using Error::Error;
};

// Metric requested on data where it is undefined (single class present).
class UndefinedMetric : public Error {
public:
    using Error::Error;
};

// Every hyperparameter grid point failed on every fold.
class NoFeasibleHyperparams : public Error {
public:
    using Error::Error;
};

// Model file is malformed or carries an unsupported format version.
class ModelFormatError : public Error {
public:
    using Error::Error;
};

} // namespace refkernel
